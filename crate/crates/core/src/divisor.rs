//! Picard-lattice arithmetic in the basis `D_1, .., D_n`, where `D_i` is the
//! invariant prime divisor of the upper ray `v_{n+i}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_index, check_len, Error, Result};
use crate::serde_int;
use crate::tower::{BottTower, RayId, Side};

/// `a_1 D_1 + .. + a_n D_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass {
    #[serde(with = "serde_int::seq")]
    coeffs: Vec<BigInt>,
}

impl DivisorClass {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        DivisorClass { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        DivisorClass { coeffs: coeffs.iter().map(|&a| a.into()).collect() }
    }

    pub fn zero(n: usize) -> Self {
        DivisorClass { coeffs: vec![BigInt::zero(); n] }
    }

    /// `D_i` (1-based).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut d = Self::zero(n);
        d.coeffs[i - 1] = 1.into();
        d
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `a_i` (1-based).
    pub fn a(&self, i: usize) -> &BigInt {
        &self.coeffs[i - 1]
    }

    pub fn min_coeff(&self) -> Option<&BigInt> {
        self.coeffs.iter().min()
    }

    /// `L|_{X^{(i)}_n}` for `2 <= i <= n`, i.e. `(a_i, .., a_n)`, a class on
    /// `vertical_subtower(i, n)`.
    pub fn restrict_to_stage(&self, i: usize) -> Result<Self> {
        check_index(i, 2, self.len())?;
        Ok(self.tail(i))
    }

    // (a_i, .., a_n) without the 2 <= i bound.
    pub(crate) fn tail(&self, i: usize) -> Self {
        DivisorClass { coeffs: self.coeffs[i - 1..].to_vec() }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        assert_eq!(self.len(), other.len(), "divisor classes of different length");
        DivisorClass { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect() }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("(")?;
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: Self) -> DivisorClass {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: Self) -> DivisorClass {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul<&DivisorClass> for &BigInt {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass { coeffs: rhs.coeffs.iter().map(|a| self * a).collect() }
    }
}

/// A torus-invariant divisor written on all `2n` prime divisors. Slot
/// `i - 1` holds the coefficient of `D'_i = V(v_i)`, slot `n + i - 1` that of
/// `D_i = V(v_{n+i})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RayDivisor {
    coeffs: Vec<BigInt>,
}

impl RayDivisor {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        RayDivisor { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        RayDivisor { coeffs: vec![BigInt::zero(); 2 * n] }
    }

    /// The prime divisor of a single ray.
    pub fn prime(n: usize, ray: RayId) -> Self {
        let mut d = Self::zero(n);
        d.coeffs[ray.slot(n)] = 1.into();
        d
    }

    /// `D_1, .., D_n` embedded on the upper-ray slots.
    pub fn from_class(class: &DivisorClass) -> Self {
        let n = class.len();
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.extend(class.coeffs().iter().cloned());
        RayDivisor { coeffs }
    }

    /// `div(chi^u) = sum_rho <u, v_rho> D_rho` for a character `u`.
    pub fn principal(tower: &BottTower, character: &[BigInt]) -> Result<Self> {
        check_len(tower.dimension(), character.len())?;
        let coeffs = tower
            .rays()
            .iter()
            .map(|r| r.vector.iter().zip(character).map(|(v, u)| v * u).sum())
            .collect();
        Ok(RayDivisor { coeffs })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize, ray: RayId) -> &BigInt {
        &self.coeffs[ray.slot(n)]
    }
}

impl Add for &RayDivisor {
    type Output = RayDivisor;
    fn add(self, rhs: Self) -> RayDivisor {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "ray divisors of different length");
        RayDivisor { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

/// Rewrites a ray divisor in the `D` basis using
/// `D'_1 ~ D_1` and `D'_i ~ D_i - sum_{k<i} c_{k,i} D_k`.
pub fn reduce_to_basis(tower: &BottTower, d: &RayDivisor) -> Result<DivisorClass> {
    let n = tower.dimension();
    check_len(2 * n, d.coeffs.len())?;
    let mut a: Vec<BigInt> = d.coeffs[n..].to_vec();
    for i in 0..n {
        let m = &d.coeffs[i];
        if m.is_zero() {
            continue;
        }
        a[i] += m;
        for k in 0..i {
            a[k] -= m * tower.c(k + 1, i + 1);
        }
    }
    Ok(DivisorClass::new(a))
}

/// Numerical class of the prime divisor of `ray`.
pub fn class_of_ray(tower: &BottTower, ray: RayId) -> DivisorClass {
    let n = tower.dimension();
    match ray.side {
        Side::Upper => DivisorClass::basis(n, ray.stage + 1),
        Side::Lower => reduce_to_basis(tower, &RayDivisor::prime(n, ray))
            .expect("prime divisor has the tower's length"),
    }
}

fn check_class(tower: &BottTower, l: &DivisorClass) -> Result<()> {
    check_len(tower.dimension(), l.len())?;
    tower.bott_numbers().require_positive()
}

/// `L` is nef iff every `a_i >= 0` (valid for positive Bott numbers).
pub fn is_nef(tower: &BottTower, l: &DivisorClass) -> Result<bool> {
    check_class(tower, l)?;
    Ok(l.coeffs().iter().all(|a| !a.is_negative()))
}

/// `L` is ample iff every `a_i > 0` (valid for positive Bott numbers).
pub fn is_ample(tower: &BottTower, l: &DivisorClass) -> Result<bool> {
    check_class(tower, l)?;
    Ok(l.coeffs().iter().all(|a| a.is_positive()))
}

/// Fails with [`Error::NotNef`] naming the first negative coefficient.
pub fn require_nef(l: &DivisorClass) -> Result<()> {
    match l.coeffs().iter().position(|a| a.is_negative()) {
        Some(k) => Err(Error::NotNef { index: k + 1, value: l.coeffs()[k].to_string() }),
        None => Ok(()),
    }
}

/// [`DivisorClass::restrict_to_stage`] with a length check against the tower.
pub fn restrict_to_stage(tower: &BottTower, l: &DivisorClass, i: usize) -> Result<DivisorClass> {
    check_len(tower.dimension(), l.len())?;
    check_index(i, 2, tower.dimension())?;
    l.restrict_to_stage(i)
}

/// The numerical class of the fibre `X^{(2)}_n` over a point of `X_1`: `(1, 0, .., 0)`.
pub fn class_of_fiber_divisor(tower: &BottTower) -> Result<DivisorClass> {
    let n = tower.dimension();
    if n < 2 {
        return Err(Error::IndexOutOfRange { index: 2, lo: 1, hi: n });
    }
    Ok(DivisorClass::basis(n, 1))
}
