//! Fans of Bott towers.
//!
//! A tower of height `n` has rays `v_1..v_n = e_1..e_n` ("lower" rays) and
//! `v_{n+i} = -e_i + sum_{j>i} c_{i,j} e_j` ("upper" rays). A maximal cone picks
//! exactly one of `v_i`, `v_{n+i}` for every stage `i`, so it is encoded as a
//! bit mask rather than a list of vectors.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_index, Error, Result};
use crate::linalg;
use crate::serde_int;

/// Largest supported tower height. Building a tower validates all `2^n`
/// maximal cones, so this bounds construction cost.
pub const MAX_DIMENSION: usize = 16;

/// The triangular array `c_{i,j}`, `1 <= i < j <= n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BottNumbers {
    n: usize,
    // rows[i - 1][j - i - 1] = c_{i,j}
    rows: Vec<Vec<BigInt>>,
}

impl BottNumbers {
    /// Builds from upper-triangular rows `[[c_12..c_1n], [c_23..c_2n], .., [c_{n-1,n}]]`.
    pub fn from_rows(n: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedBottNumbers("tower height must be at least 1".into()));
        }
        if rows.len() != n - 1 {
            return Err(Error::MalformedBottNumbers(format!(
                "expected {} rows for n = {n}, got {}",
                n - 1,
                rows.len()
            )));
        }
        for (k, row) in rows.iter().enumerate() {
            let want = n - 1 - k;
            if row.len() != want {
                return Err(Error::MalformedBottNumbers(format!(
                    "row {} must have {want} entries, got {}",
                    k + 1,
                    row.len()
                )));
            }
        }
        Ok(BottNumbers { n, rows })
    }

    /// Builds from a function of the 1-based pair `(i, j)`, `i < j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Result<Self> {
        let rows = (1..n).map(|i| (i + 1..=n).map(|j| f(i, j)).collect()).collect();
        Self::from_rows(n, rows)
    }

    /// Every Bott number equal to `c`.
    pub fn constant(n: usize, c: impl Into<BigInt>) -> Result<Self> {
        let c = c.into();
        Self::from_fn(n, |_, _| c.clone())
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// `c_{i,j}` for `1 <= i < j <= n`.
    ///
    /// Panics when the pair is out of range.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        assert!(1 <= i && i < j && j <= self.n, "Bott number index ({i},{j}) out of range");
        &self.rows[i - 1][j - i - 1]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// All `(i, j, c_{i,j})`, row by row.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(k, row)| row.iter().enumerate().map(move |(l, c)| (k + 1, k + l + 2, c)))
    }

    /// Fails on the first Bott number that is not strictly positive.
    pub fn require_positive(&self) -> Result<()> {
        match self.iter().find(|(_, _, c)| !c.is_positive()) {
            Some((i, j, c)) => Err(Error::NonPositiveBottNumbers { i, j, value: c.to_string() }),
            None => Ok(()),
        }
    }

    /// `{c_{k,l} : j <= k < l <= i}` reindexed to start at 1.
    pub fn restrict(&self, j: usize, i: usize) -> Result<Self> {
        check_index(j, 1, self.n)?;
        check_index(i, j, self.n)?;
        Self::from_fn(i - j + 1, |k, l| self.get(k + j - 1, l + j - 1).clone())
    }
}

/// Which of the two rays of a stage a cone uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `v_i = e_i`; its divisor `D'_i` is cut out by `z_i`.
    Lower,
    /// `v_{n+i}`; its divisor `D_i` is cut out by `w_i`.
    Upper,
}

/// A ray identified by its stage (0-based) and side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RayId {
    pub stage: usize,
    pub side: Side,
}

impl RayId {
    pub fn lower(stage: usize) -> Self {
        RayId { stage, side: Side::Lower }
    }

    pub fn upper(stage: usize) -> Self {
        RayId { stage, side: Side::Upper }
    }

    /// Conventional 1-based label: `i + 1` for lower rays, `n + i + 1` for upper ones.
    pub fn number(&self, n: usize) -> usize {
        match self.side {
            Side::Lower => self.stage + 1,
            Side::Upper => n + self.stage + 1,
        }
    }

    /// Position of the ray in a length-`2n` ray-indexed vector.
    pub fn slot(&self, n: usize) -> usize {
        self.number(n) - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    pub id: RayId,
    pub vector: Vec<BigInt>,
}

/// A maximal cone encoded by its selector: bit `i` set means stage `i` uses
/// the upper ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MaximalCone {
    n: usize,
    upper: u64,
}

impl MaximalCone {
    pub fn from_mask(n: usize, upper: u64) -> Self {
        debug_assert!(n <= 63 && upper >> n == 0);
        MaximalCone { n, upper }
    }

    pub fn from_sides(sides: &[Side]) -> Self {
        let upper = sides
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Side::Upper)
            .fold(0u64, |m, (i, _)| m | (1 << i));
        MaximalCone { n: sides.len(), upper }
    }

    /// `Cone(v_1, .., v_n)`.
    pub fn all_lower(n: usize) -> Self {
        MaximalCone { n, upper: 0 }
    }

    /// `Cone(v_{n+1}, .., v_{2n})`.
    pub fn all_upper(n: usize) -> Self {
        MaximalCone { n, upper: (1u64 << n) - 1 }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.upper
    }

    pub fn side(&self, stage: usize) -> Side {
        if self.upper >> stage & 1 == 1 {
            Side::Upper
        } else {
            Side::Lower
        }
    }

    pub fn sides(&self) -> Vec<Side> {
        (0..self.n).map(|i| self.side(i)).collect()
    }

    pub fn rays(&self) -> Vec<RayId> {
        (0..self.n).map(|stage| RayId { stage, side: self.side(stage) }).collect()
    }

    pub fn contains(&self, ray: RayId) -> bool {
        ray.stage < self.n && self.side(ray.stage) == ray.side
    }

    /// The cone across the wall obtained by dropping `stage`.
    pub fn flip(&self, stage: usize) -> Self {
        MaximalCone { n: self.n, upper: self.upper ^ (1 << stage) }
    }

    /// The facet of this cone that omits the ray at `stage`.
    pub fn facet(&self, stage: usize) -> Wall {
        Wall { n: self.n, free_stage: stage, upper: self.upper & !(1 << stage) }
    }

    /// The `n` walls of this cone, by omitted stage.
    pub fn facets(&self) -> impl Iterator<Item = Wall> + '_ {
        (0..self.n).map(|s| self.facet(s))
    }
}

impl fmt::Display for MaximalCone {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write_cone(f, self.n, self.rays().into_iter())
    }
}

fn write_cone(f: &mut fmt::Formatter, n: usize, rays: impl Iterator<Item = RayId>) -> fmt::Result {
    f.write_str("Cone(")?;
    for (k, r) in rays.enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "v{}", r.number(n))?;
    }
    f.write_str(")")
}

/// An `(n-1)`-dimensional cone: a maximal cone with one stage left free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wall {
    n: usize,
    free_stage: usize,
    // bit `free_stage` is always clear
    upper: u64,
}

impl Wall {
    pub fn dimension(&self) -> usize {
        self.n
    }

    /// The stage whose two rays lie on either side of the wall.
    pub fn free_stage(&self) -> usize {
        self.free_stage
    }

    /// Side used by the wall at `stage`, or `None` for the free stage.
    pub fn side(&self, stage: usize) -> Option<Side> {
        if stage == self.free_stage || stage >= self.n {
            None
        } else if self.upper >> stage & 1 == 1 {
            Some(Side::Upper)
        } else {
            Some(Side::Lower)
        }
    }

    /// The `n - 1` rays spanning the wall, in stage order.
    pub fn rays(&self) -> Vec<RayId> {
        (0..self.n)
            .filter_map(|stage| self.side(stage).map(|side| RayId { stage, side }))
            .collect()
    }

    pub fn contains(&self, ray: RayId) -> bool {
        self.side(ray.stage) == Some(ray.side)
    }

    /// The two rays completing the wall to a maximal cone: `v_k` and `v_{n+k}`.
    pub fn opposite_rays(&self) -> (RayId, RayId) {
        (RayId::lower(self.free_stage), RayId::upper(self.free_stage))
    }

    /// The two maximal cones sharing this wall, lower-side cone first.
    pub fn adjacent(&self) -> (MaximalCone, MaximalCone) {
        let lower = MaximalCone { n: self.n, upper: self.upper };
        (lower, lower.flip(self.free_stage))
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write_cone(f, self.n, self.rays().into_iter())
    }
}

/// The complete smooth fan of a Bott tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BottTower {
    numbers: BottNumbers,
    // lower rays then upper rays, i.e. in `RayId::slot` order
    rays: Vec<Ray>,
}

/// Builds the fan and validates it: rays pairwise distinct and every maximal
/// cone unimodular.
pub fn build_tower(numbers: BottNumbers) -> Result<BottTower> {
    let n = numbers.dimension();
    if n > MAX_DIMENSION {
        return Err(Error::DimensionOutOfRange { n, max: MAX_DIMENSION });
    }
    let mut rays = Vec::with_capacity(2 * n);
    for stage in 0..n {
        let mut v = vec![BigInt::zero(); n];
        v[stage] = BigInt::one();
        rays.push(Ray { id: RayId::lower(stage), vector: v });
    }
    for stage in 0..n {
        let mut v = vec![BigInt::zero(); n];
        v[stage] = -BigInt::one();
        for j in stage + 1..n {
            v[j] = numbers.get(stage + 1, j + 1).clone();
        }
        rays.push(Ray { id: RayId::upper(stage), vector: v });
    }
    let tower = BottTower { numbers, rays };
    tower.validate()?;
    Ok(tower)
}

impl BottTower {
    /// Shorthand for [`build_tower`].
    pub fn new(numbers: BottNumbers) -> Result<Self> {
        build_tower(numbers)
    }

    fn validate(&self) -> Result<()> {
        for (k, a) in self.rays.iter().enumerate() {
            if self.rays[k + 1..].iter().any(|b| b.vector == a.vector) {
                return Err(Error::NonSmoothFan {
                    cone: format!("ray v{}", a.id.number(self.dimension())),
                    determinant: "repeated ray".into(),
                });
            }
        }
        for cone in self.maximal_cones() {
            let det = linalg::determinant(&self.cone_matrix(&cone))?;
            if !det.abs().is_one() {
                return Err(Error::NonSmoothFan {
                    cone: cone.to_string(),
                    determinant: det.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.numbers.dimension()
    }

    pub fn bott_numbers(&self) -> &BottNumbers {
        &self.numbers
    }

    /// `c_{i,j}` with 1-based indices.
    pub fn c(&self, i: usize, j: usize) -> &BigInt {
        self.numbers.get(i, j)
    }

    /// All `2n` rays in label order `v_1 .. v_{2n}`.
    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn ray(&self, id: RayId) -> &Ray {
        &self.rays[id.slot(self.dimension())]
    }

    /// Rows are the ray vectors of the cone, in stage order.
    pub fn cone_matrix(&self, cone: &MaximalCone) -> linalg::Matrix {
        cone.rays().into_iter().map(|r| self.ray(r).vector.clone()).collect()
    }

    /// All `2^n` maximal cones, by increasing selector mask.
    pub fn maximal_cones(&self) -> impl Iterator<Item = MaximalCone> {
        let n = self.dimension();
        (0..1u64 << n).map(move |m| MaximalCone::from_mask(n, m))
    }

    pub fn maximal_cone_count(&self) -> u64 {
        1 << self.dimension()
    }

    pub fn wall_count(&self) -> u64 {
        let n = self.dimension() as u64;
        n << (n - 1)
    }

    /// Every wall once, grouped by free stage, then by selector mask.
    pub fn walls(&self) -> impl Iterator<Item = Wall> {
        let n = self.dimension();
        (0..n).flat_map(move |free_stage| {
            (0..1u64 << n)
                .filter(move |m| m >> free_stage & 1 == 0)
                .map(move |upper| Wall { n, free_stage, upper })
        })
    }

    /// The Bott tower `X^{(j)}_i`, with Bott numbers `{c_{k,l} : j <= k < l <= i}`.
    pub fn vertical_subtower(&self, j: usize, i: usize) -> Result<BottTower> {
        build_tower(self.numbers.restrict(j, i)?)
    }
}

/// Enumerates the walls of a tower; see [`BottTower::walls`].
pub fn enumerate_walls(tower: &BottTower) -> Vec<Wall> {
    tower.walls().collect()
}

/// Tower description as read from and written to JSON:
/// `{"n": 3, "bott_numbers": [[c12, c13], [c23]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerSpec {
    pub n: usize,
    #[serde(with = "serde_int::rows")]
    pub bott_numbers: Vec<Vec<BigInt>>,
}

impl TryFrom<TowerSpec> for BottNumbers {
    type Error = Error;

    fn try_from(spec: TowerSpec) -> Result<Self> {
        BottNumbers::from_rows(spec.n, spec.bott_numbers)
    }
}

impl From<&BottNumbers> for TowerSpec {
    fn from(b: &BottNumbers) -> Self {
        TowerSpec { n: b.dimension(), bott_numbers: b.rows().to_vec() }
    }
}
