//! Curve classes in the basis `Gamma^{(1)}, .., Gamma^{(n)}` dual to
//! `D_1, .., D_n`, and intersection numbers of torus-invariant curves.
//!
//! For a wall `tau` with opposite rays `v_u`, `v_u'` the wall relation is
//! `v_u + v_u' + sum_{rho in tau} b_rho v_rho = 0`, and then
//! `D_rho . V(tau)` is 1 for the opposite rays, `b_rho` for rays of the wall
//! and 0 for every other ray.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::divisor::{DivisorClass, RayDivisor};
use crate::error::{check_len, Error, Result};
use crate::linalg;
use crate::serde_int;
use crate::tower::{BottTower, RayId, Wall};

/// `p_1 Gamma^{(1)} + .. + p_n Gamma^{(n)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveClass {
    #[serde(with = "serde_int::seq")]
    coeffs: Vec<BigInt>,
}

impl CurveClass {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        CurveClass { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        CurveClass { coeffs: coeffs.iter().map(|&p| p.into()).collect() }
    }

    /// `Gamma^{(i)}` (1-based).
    pub fn gamma(n: usize, i: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs[i - 1] = BigInt::one();
        CurveClass { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Inside the Mori cone, i.e. every `p_i >= 0`.
    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|p| p >= &BigInt::zero())
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `L . C = sum a_i p_i`.
pub fn pair(l: &DivisorClass, c: &CurveClass) -> Result<BigInt> {
    check_len(l.len(), c.len())?;
    Ok(l.coeffs().iter().zip(c.coeffs()).map(|(a, p)| a * p).sum())
}

/// Integer relation among the rays around one wall.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallRelation {
    pub wall: Wall,
    /// `b_rho` for each ray of the wall, in stage order.
    pub coefficients: Vec<(RayId, BigInt)>,
    /// The two rays with coefficient 1.
    pub opposite: (RayId, RayId),
}

impl WallRelation {
    /// `D_rho . V(tau)`.
    pub fn intersection(&self, ray: RayId) -> BigInt {
        if ray == self.opposite.0 || ray == self.opposite.1 {
            return BigInt::one();
        }
        self.coefficients
            .iter()
            .find(|(r, _)| *r == ray)
            .map_or_else(BigInt::zero, |(_, b)| b.clone())
    }

    /// `v_u + v_u' + sum b_rho v_rho`; zero for a correct relation.
    pub fn residual(&self, tower: &BottTower) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); tower.dimension()];
        let mut add = |ray: RayId, scale: &BigInt| {
            for (a, v) in acc.iter_mut().zip(&tower.ray(ray).vector) {
                *a += scale * v;
            }
        };
        add(self.opposite.0, &BigInt::one());
        add(self.opposite.1, &BigInt::one());
        for (r, b) in &self.coefficients {
            add(*r, b);
        }
        acc
    }
}

/// Solves for the wall relation in the basis of one adjacent maximal cone.
pub fn wall_relation(tower: &BottTower, wall: &Wall) -> Result<WallRelation> {
    let n = tower.dimension();
    check_len(n, wall.dimension())?;
    let (u, u2) = wall.opposite_rays();
    let mut columns = wall.rays();
    columns.push(u);
    // a[coord][col] = ray_col[coord]
    let a: linalg::Matrix = (0..n)
        .map(|coord| columns.iter().map(|r| tower.ray(*r).vector[coord].clone()).collect())
        .collect();
    let rhs: Vec<BigInt> = tower
        .ray(u)
        .vector
        .iter()
        .zip(&tower.ray(u2).vector)
        .map(|(x, y)| -(x + y))
        .collect();
    let mut x = linalg::solve(&a, &rhs)?;
    let off_wall = x.pop().expect("n >= 1");
    if !off_wall.is_zero() {
        // v_u + v_u' always lies in the span of the wall for a Bott fan
        return Err(Error::NonSmoothFan {
            cone: wall.to_string(),
            determinant: "wall relation leaves the wall".into(),
        });
    }
    Ok(WallRelation { wall: *wall, coefficients: columns.into_iter().zip(x).collect(), opposite: (u, u2) })
}

/// Class of `V(tau)` in the `Gamma` basis: `p_j = D_j . V(tau)`.
pub fn invariant_curve_class(tower: &BottTower, wall: &Wall) -> Result<CurveClass> {
    let rel = wall_relation(tower, wall)?;
    Ok(class_from_relation(&rel, tower.dimension()))
}

pub(crate) fn class_from_relation(rel: &WallRelation, n: usize) -> CurveClass {
    CurveClass::new((0..n).map(|j| rel.intersection(RayId::upper(j))).collect())
}

/// `D . V(tau)` for a divisor written on all `2n` rays, without passing
/// through the `D` basis.
pub fn intersect_ray_divisor(tower: &BottTower, d: &RayDivisor, wall: &Wall) -> Result<BigInt> {
    let n = tower.dimension();
    check_len(2 * n, d.coeffs().len())?;
    let rel = wall_relation(tower, wall)?;
    let rays = (0..n).flat_map(|s| [RayId::lower(s), RayId::upper(s)]);
    Ok(rays.map(|r| d.coeff(n, r) * rel.intersection(r)).sum())
}
