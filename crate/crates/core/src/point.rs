//! Points of a Bott tower in Cox coordinates `[z_1:w_1: .. :z_n:w_n]`.
//!
//! `D'_i = V(z_i)` and `D_i = V(w_i)`. Only the zero pattern of a point matters
//! for Seshadri constants, so coordinates may be left as "nonzero, value
//! unspecified".

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_index, check_len, Error, Result};
use crate::tower::{BottTower, MaximalCone, Side};

/// One homogeneous coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coord(Repr);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Zero,
    // value, if given, is never zero
    NonZero(Option<BigRational>),
}

impl Coord {
    pub fn zero() -> Self {
        Coord(Repr::Zero)
    }

    /// Nonzero with no concrete representative.
    pub fn nonzero() -> Self {
        Coord(Repr::NonZero(None))
    }

    pub fn one() -> Self {
        Coord(Repr::NonZero(Some(BigRational::one())))
    }

    pub fn value(q: BigRational) -> Self {
        if q.is_zero() {
            Coord(Repr::Zero)
        } else {
            Coord(Repr::NonZero(Some(q)))
        }
    }

    pub fn int(v: i64) -> Self {
        Self::value(BigRational::from_integer(v.into()))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Zero)
    }

    /// The concrete value, `None` when only "nonzero" is known.
    pub fn to_rational(&self) -> Option<BigRational> {
        match &self.0 {
            Repr::Zero => Some(BigRational::zero()),
            Repr::NonZero(v) => v.clone(),
        }
    }

    fn scaled(&self, factor: &BigRational) -> Self {
        match &self.0 {
            Repr::NonZero(Some(v)) => Coord::value(v * factor),
            other => Coord(other.clone()),
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match &self.0 {
            Repr::Zero => f.write_str("0"),
            Repr::NonZero(None) => f.write_str("*"),
            Repr::NonZero(Some(v)) => write!(f, "{v}"),
        }
    }
}

impl FromStr for Coord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "*" {
            return Ok(Coord::nonzero());
        }
        s.parse::<BigRational>()
            .map(Coord::value)
            .map_err(|_| Error::Parse(format!("invalid coordinate {s:?}")))
    }
}

/// A point `[z_1:w_1: .. :z_n:w_n]`; pairs are stored as `(z_i, w_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoxPoint {
    pairs: Vec<(Coord, Coord)>,
}

impl CoxPoint {
    pub fn from_pairs(pairs: Vec<(Coord, Coord)>) -> Self {
        CoxPoint { pairs }
    }

    /// Pattern-only point: `z_i` is zero where `z_zero[i]`, else nonzero;
    /// every `w_i` is nonzero.
    pub fn from_z_pattern(z_zero: &[bool]) -> Self {
        let pairs = z_zero
            .iter()
            .map(|&zero| (if zero { Coord::zero() } else { Coord::nonzero() }, Coord::nonzero()))
            .collect();
        CoxPoint { pairs }
    }

    /// `[1:1: .. :1:1]`, a point of the dense torus.
    pub fn torus_identity(n: usize) -> Self {
        CoxPoint { pairs: vec![(Coord::one(), Coord::one()); n] }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(Coord, Coord)] {
        &self.pairs
    }

    /// `z_i` (1-based).
    pub fn z(&self, i: usize) -> &Coord {
        &self.pairs[i - 1].0
    }

    /// `w_i` (1-based).
    pub fn w(&self, i: usize) -> &Coord {
        &self.pairs[i - 1].1
    }

    /// `(z_i == 0, w_i == 0)` per pair.
    pub fn zero_pattern(&self) -> Vec<(bool, bool)> {
        self.pairs.iter().map(|(z, w)| (z.is_zero(), w.is_zero())).collect()
    }

    /// `true` when every coordinate has a concrete value.
    pub fn is_concrete(&self) -> bool {
        self.pairs.iter().all(|(z, w)| z.to_rational().is_some() && w.to_rational().is_some())
    }

    /// Drops the first `k` pairs: the image of the point in the Bott tower of
    /// `X^{(k+1)}_n`.
    pub fn drop_front(&self, k: usize) -> Self {
        CoxPoint { pairs: self.pairs[k..].to_vec() }
    }

    fn check_pairs(&self) -> Result<()> {
        match self.pairs.iter().position(|(z, w)| z.is_zero() && w.is_zero()) {
            Some(k) => Err(Error::InvalidPair(k + 1)),
            None => Ok(()),
        }
    }
}

impl fmt::Display for CoxPoint {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("[")?;
        for (k, (z, w)) in self.pairs.iter().enumerate() {
            if k > 0 {
                f.write_str(":")?;
            }
            write!(f, "{z}:{w}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for CoxPoint {
    type Err = Error;

    /// Parses `[z1:w1:...:zn:wn]`; the brackets are optional.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body.strip_prefix('[').unwrap_or(body);
        let body = body.strip_suffix(']').unwrap_or(body);
        if body.trim().is_empty() {
            return Err(Error::Parse("empty point".into()));
        }
        let entries = body.split(':').map(str::parse).collect::<Result<Vec<Coord>>>()?;
        if entries.len() % 2 != 0 {
            return Err(Error::Parse(format!(
                "point needs an even number of coordinates, got {}",
                entries.len()
            )));
        }
        let mut it = entries.into_iter();
        let mut pairs = Vec::new();
        while let (Some(z), Some(w)) = (it.next(), it.next()) {
            pairs.push((z, w));
        }
        Ok(CoxPoint { pairs })
    }
}

impl Serialize for CoxPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CoxPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Checks the length against the tower and that no pair is `(0, 0)`.
pub fn validate_point(tower: &BottTower, x: &CoxPoint) -> Result<()> {
    check_len(tower.dimension(), x.len())?;
    x.check_pairs()
}

/// Smallest `i` with `z_j = 0` for all `j > i`, i.e. the smallest `i` with
/// `x` on `Gamma^{(i)}`. Only the zero pattern of `z_2, .., z_n` is read.
pub fn gamma_index(tower: &BottTower, x: &CoxPoint) -> Result<usize> {
    validate_point(tower, x)?;
    Ok(gamma_index_unchecked(x))
}

pub(crate) fn gamma_index_unchecked(x: &CoxPoint) -> usize {
    x.pairs.iter().rposition(|(z, _)| !z.is_zero()).map_or(1, |k| k + 1)
}

/// `x` lies on `Gamma^{(i)}`, `1 <= i <= n`.
pub fn in_gamma(tower: &BottTower, x: &CoxPoint, i: usize) -> Result<bool> {
    check_index(i, 1, tower.dimension())?;
    Ok(gamma_index(tower, x)? <= i)
}

/// The torus-fixed point of a maximal cone: it lies on `V(rho)` exactly for
/// the rays `rho` of the cone.
pub fn fixed_point_of_cone(cone: &MaximalCone) -> CoxPoint {
    let pairs = cone
        .sides()
        .into_iter()
        .map(|side| match side {
            Side::Lower => (Coord::zero(), Coord::one()),
            Side::Upper => (Coord::one(), Coord::zero()),
        })
        .collect();
    CoxPoint { pairs }
}

fn rational_pow(base: &BigRational, exp: &BigInt) -> BigRational {
    let p: BigRational = Pow::pow(base, exp.abs());
    if exp.is_negative() {
        p.recip()
    } else {
        p
    }
}

/// Applies `(t_1, .., t_n)` in the quotient group:
/// `w_i -> t_i w_i`, `z_i -> t_i prod_{k<i} t_k^{-c_{k,i}} z_i`.
pub fn act(tower: &BottTower, x: &CoxPoint, t: &[BigRational]) -> Result<CoxPoint> {
    let n = tower.dimension();
    check_len(n, x.len())?;
    check_len(n, t.len())?;
    if t.iter().any(Zero::is_zero) {
        return Err(Error::Parse("group parameters must be nonzero".into()));
    }
    let pairs = (0..n)
        .map(|i| {
            let (z, w) = &x.pairs[i];
            let z_factor = (0..i).fold(t[i].clone(), |acc, k| {
                acc * rational_pow(&t[k], &-tower.c(k + 1, i + 1))
            });
            (z.scaled(&z_factor), w.scaled(&t[i]))
        })
        .collect();
    Ok(CoxPoint { pairs })
}

/// Normal form under the group action: for each stage in order, `w_i` is
/// scaled to 1 when nonzero, otherwise `z_i` is. Returns the normalized point
/// and the group element used.
pub fn canonicalize_with_params(
    tower: &BottTower,
    x: &CoxPoint,
) -> Result<(CoxPoint, Vec<BigRational>)> {
    validate_point(tower, x)?;
    if !x.is_concrete() {
        return Err(Error::MissingValues);
    }
    let n = tower.dimension();
    let mut t: Vec<BigRational> = Vec::with_capacity(n);
    for i in 0..n {
        let (z, w) = &x.pairs[i];
        let ti = match w.to_rational() {
            Some(wv) if !wv.is_zero() => wv.recip(),
            _ => {
                let twist = (0..i).fold(BigRational::one(), |acc, k| {
                    acc * rational_pow(&t[k], &-tower.c(k + 1, i + 1))
                });
                let zv = z.to_rational().expect("concrete point");
                (zv * twist).recip()
            }
        };
        t.push(ti);
    }
    Ok((act(tower, x, &t)?, t))
}

/// See [`canonicalize_with_params`].
pub fn canonicalize(tower: &BottTower, x: &CoxPoint) -> Result<CoxPoint> {
    canonicalize_with_params(tower, x).map(|(p, _)| p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::{build_tower, BottNumbers};

    fn tower(n: usize, c: i64) -> BottTower {
        build_tower(BottNumbers::constant(n, c).unwrap()).unwrap()
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn parses_and_prints() {
        let x: CoxPoint = "[1:1:0:1]".parse().unwrap();
        assert_eq!(x.len(), 2);
        assert_eq!(x.to_string(), "[1:1:0:1]");
        let y: CoxPoint = " *:-2/4:0:* ".parse().unwrap();
        assert_eq!(y.to_string(), "[*:-1/2:0:*]");
        assert!(matches!("[1:2:3]".parse::<CoxPoint>(), Err(Error::Parse(_))));
        assert!(matches!("[a:1]".parse::<CoxPoint>(), Err(Error::Parse(_))));
        assert!(matches!("[]".parse::<CoxPoint>(), Err(Error::Parse(_))));
        assert!(matches!("[1/0:1]".parse::<CoxPoint>(), Err(Error::Parse(_))));
    }

    #[test]
    fn validation() {
        let t2 = tower(2, 1);
        assert!(validate_point(&t2, &"[1:1:0:1]".parse().unwrap()).is_ok());
        assert_eq!(validate_point(&t2, &"[0:0:1:1]".parse().unwrap()), Err(Error::InvalidPair(1)));
        assert_eq!(validate_point(&t2, &"[1:0:0:0/5]".parse().unwrap()), Err(Error::InvalidPair(2)));
        assert!(matches!(
            validate_point(&t2, &"[1:1]".parse().unwrap()),
            Err(Error::LengthMismatch { expected: 2, actual: 1 })
        ));
        let t3 = tower(3, 1);
        assert!(validate_point(&t3, &"[0:1:0:1:0:1]".parse().unwrap()).is_ok());
    }

    #[test]
    fn gamma_indices() {
        let t4 = tower(4, 2);
        assert_eq!(gamma_index(&t4, &"[5:0:0:1:0:7:0:1]".parse().unwrap()).unwrap(), 1);
        assert_eq!(gamma_index(&t4, &"[0:1:0:1:0:1:0:1]".parse().unwrap()).unwrap(), 1);
        assert_eq!(gamma_index(&t4, &CoxPoint::torus_identity(4)).unwrap(), 4);
        assert_eq!(gamma_index(&t4, &"[1:1:1:1:0:1:0:1]".parse().unwrap()).unwrap(), 2);
        assert_eq!(gamma_index(&t4, &"[*:*:0:1:1:0:0:1]".parse().unwrap()).unwrap(), 3);
        assert_eq!(gamma_index(&t4, &"[0:1:0:1:0:1:3:0]".parse().unwrap()).unwrap(), 4);
    }

    #[test]
    fn gamma_membership() {
        let t4 = tower(4, 1);
        let x: CoxPoint = "[1:1:1:1:0:1:0:1]".parse().unwrap();
        assert!(!in_gamma(&t4, &x, 1).unwrap());
        assert!(in_gamma(&t4, &x, 2).unwrap());
        assert!(in_gamma(&t4, &x, 4).unwrap());
        assert!(in_gamma(&t4, &CoxPoint::torus_identity(4), 4).unwrap());
        assert!(matches!(in_gamma(&t4, &x, 0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(in_gamma(&t4, &x, 5), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn fixed_points() {
        let t3 = tower(3, 1);
        let lo = fixed_point_of_cone(&MaximalCone::all_lower(3));
        assert_eq!(lo.to_string(), "[0:1:0:1:0:1]");
        assert_eq!(gamma_index(&t3, &lo).unwrap(), 1);
        let hi = fixed_point_of_cone(&MaximalCone::all_upper(3));
        assert_eq!(hi.to_string(), "[1:0:1:0:1:0]");
        assert_eq!(gamma_index(&t3, &hi).unwrap(), 3);
        assert_eq!(fixed_point_of_cone(&MaximalCone::all_lower(1)).to_string(), "[0:1]");
        assert_eq!(fixed_point_of_cone(&MaximalCone::all_upper(1)).to_string(), "[1:0]");
    }

    #[test]
    fn canonical_form_of_first_pair() {
        let t = tower(2, 3);
        let x: CoxPoint = "[2:3:5:7]".parse().unwrap();
        let (c, params) = canonicalize_with_params(&t, &x).unwrap();
        assert_eq!(params[0], q(1, 3));
        assert_eq!(c.z(1).to_rational(), Some(q(2, 3)));
        assert_eq!(c.w(1).to_rational(), Some(q(1, 1)));
        // z_2 -> t_2 t_1^{-3} z_2 = (1/7) * 27 * 5
        assert_eq!(c.z(2).to_rational(), Some(q(135, 7)));
        assert_eq!(c.w(2).to_rational(), Some(q(1, 1)));
    }

    #[test]
    fn canonical_form_when_w_vanishes() {
        let t = tower(2, 2);
        let x: CoxPoint = "[4:1:3:0]".parse().unwrap();
        let c = canonicalize(&t, &x).unwrap();
        assert_eq!(c.to_string(), "[4:1:1:0]");
        assert_eq!(canonicalize(&t, &c).unwrap(), c);
    }

    #[test]
    fn canonicalize_needs_values() {
        let t = tower(2, 1);
        assert_eq!(canonicalize(&t, &"[*:1:0:1]".parse().unwrap()), Err(Error::MissingValues));
        assert_eq!(canonicalize(&t, &"[0:0:0:1]".parse().unwrap()), Err(Error::InvalidPair(1)));
    }

    #[test]
    fn point_json_is_a_string() {
        let x: CoxPoint = "[*:1:0:-3/2]".parse().unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, "\"[*:1:0:-3/2]\"");
        assert_eq!(serde_json::from_str::<CoxPoint>(&s).unwrap(), x);
    }
}
