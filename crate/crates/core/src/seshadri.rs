//! Seshadri constants of nef line bundles on Bott towers with positive Bott
//! numbers.
//!
//! For `L = (a_1, .., a_n)` and a point `x` with gamma index `i0` (the
//! smallest `i` with `x` on `Gamma^{(i)}`), `eps(L, x) = min{a_i : i >= i0}`,
//! and the minimum is attained by the curve `Gamma^{(i)}` at the minimizing
//! index.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::divisor::{require_nef, DivisorClass};
use crate::error::{check_len, Result};
use crate::point::{gamma_index, validate_point, Coord, CoxPoint};
use crate::serde_int;
use crate::tower::BottTower;

/// Whether to enforce positive Bott numbers and nef `L`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hypotheses {
    /// Positive Bott numbers and nef `L`; violations are errors.
    #[default]
    Enforce,
    /// Evaluate the formula regardless. Results are flagged as formal.
    Formal,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeshadriResult {
    #[serde(with = "serde_int::scalar")]
    pub value: BigInt,
    /// Index `i` of the curve `Gamma^{(i)}` achieving the value (smallest such).
    pub witness_index: usize,
    /// The stratum of the query point.
    pub gamma_index: usize,
    /// Computed outside the positivity/nef hypotheses.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub formal: bool,
}

/// A global extremum together with a point attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GlobalValue {
    #[serde(with = "serde_int::scalar")]
    pub value: BigInt,
    pub witness_point: CoxPoint,
    /// Stratum of the witness point.
    pub gamma_index: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub formal: bool,
}

/// Value of `eps` on `Gamma^{(i)} \ Gamma^{(i-1)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StratumValue {
    pub stratum: usize,
    #[serde(with = "serde_int::scalar")]
    pub value: BigInt,
    pub witness_index: usize,
}

fn check_hypotheses(tower: &BottTower, l: &DivisorClass, mode: Hypotheses) -> Result<bool> {
    check_len(tower.dimension(), l.len())?;
    match mode {
        Hypotheses::Enforce => {
            tower.bott_numbers().require_positive()?;
            require_nef(l)?;
            Ok(false)
        }
        Hypotheses::Formal => Ok(true),
    }
}

/// `(min{a_j : j >= i}, smallest j attaining it)` for 1-based `i`.
fn suffix_min(l: &DivisorClass, i: usize) -> (BigInt, usize) {
    let mut best = i;
    for j in i + 1..=l.len() {
        if l.a(j) < l.a(best) {
            best = j;
        }
    }
    (l.a(best).clone(), best)
}

/// `eps(X_n, L, x)` under enforced hypotheses.
pub fn seshadri_at(tower: &BottTower, l: &DivisorClass, x: &CoxPoint) -> Result<SeshadriResult> {
    seshadri_at_with(tower, l, x, Hypotheses::Enforce)
}

pub fn seshadri_at_with(
    tower: &BottTower,
    l: &DivisorClass,
    x: &CoxPoint,
    mode: Hypotheses,
) -> Result<SeshadriResult> {
    let formal = check_hypotheses(tower, l, mode)?;
    let i0 = gamma_index(tower, x)?;
    let (value, witness_index) = suffix_min(l, i0);
    Ok(SeshadriResult { value, witness_index, gamma_index: i0, formal })
}

/// `eps` on each stratum `Gamma^{(i)} \ Gamma^{(i-1)}`, `i = 1..n`.
pub fn strata_report(tower: &BottTower, l: &DivisorClass) -> Result<Vec<StratumValue>> {
    strata_report_with(tower, l, Hypotheses::Enforce)
}

pub fn strata_report_with(
    tower: &BottTower,
    l: &DivisorClass,
    mode: Hypotheses,
) -> Result<Vec<StratumValue>> {
    check_hypotheses(tower, l, mode)?;
    Ok((1..=l.len())
        .map(|stratum| {
            let (value, witness_index) = suffix_min(l, stratum);
            StratumValue { stratum, value, witness_index }
        })
        .collect())
}

/// A concrete point of stratum `i`: `z_i = w_i = 1`, `(z_l, w_l) = (0, 1)`
/// for `l > i`, and `(1, 1)` below `i`.
pub fn stratum_point(n: usize, i: usize) -> CoxPoint {
    let pairs = (1..=n)
        .map(|l| if l > i { (Coord::zero(), Coord::one()) } else { (Coord::one(), Coord::one()) })
        .collect();
    CoxPoint::from_pairs(pairs)
}

/// `eps(X_n, L) = inf_x eps(L, x) = min a_i`, with a point on the stratum of
/// the (first) minimizing index.
pub fn seshadri_inf(tower: &BottTower, l: &DivisorClass) -> Result<GlobalValue> {
    seshadri_inf_with(tower, l, Hypotheses::Enforce)
}

pub fn seshadri_inf_with(tower: &BottTower, l: &DivisorClass, mode: Hypotheses) -> Result<GlobalValue> {
    let formal = check_hypotheses(tower, l, mode)?;
    let (value, i) = suffix_min(l, 1);
    Ok(GlobalValue { value, witness_point: stratum_point(l.len(), i), gamma_index: i, formal })
}

/// `eps(X_n, L, 1) = sup_x eps(L, x) = a_n`, attained at torus points.
pub fn seshadri_sup(tower: &BottTower, l: &DivisorClass) -> Result<GlobalValue> {
    seshadri_sup_with(tower, l, Hypotheses::Enforce)
}

pub fn seshadri_sup_with(tower: &BottTower, l: &DivisorClass, mode: Hypotheses) -> Result<GlobalValue> {
    let formal = check_hypotheses(tower, l, mode)?;
    let n = l.len();
    Ok(GlobalValue {
        value: l.a(n).clone(),
        witness_point: CoxPoint::torus_identity(n),
        gamma_index: n,
        formal,
    })
}

/// Second route to `eps(L, x)`: unwinds the fibre recursion
/// `eps(X_n, L, x) = min{a_1, eps(X^{(2)}, L|, x)}` if `x` is on `Gamma_n`,
/// `eps(X^{(2)}, L|, x)` otherwise, with `eps(P^1, O(a), x) = a`.
///
/// Each step builds the subtower, restricts `L` and projects `x`; it shares
/// no code with [`seshadri_at`].
#[doc(hidden)]
pub fn seshadri_by_recursion(tower: &BottTower, l: &DivisorClass, x: &CoxPoint) -> Result<BigInt> {
    check_hypotheses(tower, l, Hypotheses::Enforce)?;
    validate_point(tower, x)?;
    recurse(tower, l, x)
}

fn recurse(tower: &BottTower, l: &DivisorClass, x: &CoxPoint) -> Result<BigInt> {
    let n = tower.dimension();
    if n == 1 {
        return Ok(l.a(1).clone());
    }
    let fibre = tower.vertical_subtower(2, n)?;
    let restricted = l.restrict_to_stage(2)?;
    let projected = x.drop_front(1);
    let below = recurse(&fibre, &restricted, &projected)?;
    // Gamma_n is cut out by z_2 = .. = z_n = 0
    let on_gamma = x.pairs()[1..].iter().all(|(z, _)| z.is_zero());
    Ok(if on_gamma { below.min(l.a(1).clone()) } else { below })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::tower::{build_tower, BottNumbers};

    fn tower(n: usize) -> BottTower {
        build_tower(BottNumbers::constant(n, 1).unwrap()).unwrap()
    }

    fn values(report: &[StratumValue]) -> Vec<i64> {
        report.iter().map(|s| i64::try_from(&s.value).unwrap()).collect()
    }

    #[test]
    fn example_tables() {
        let t4 = tower(4);
        let cases: [(&[i64], &[i64]); 3] =
            [(&[1, 3, 8, 4], &[1, 3, 4, 4]), (&[1, 2, 3, 8], &[1, 2, 3, 8]), (&[3, 6, 2, 7], &[2, 2, 2, 7])];
        for (l, want) in cases {
            let r = strata_report(&t4, &DivisorClass::from_i64s(l)).unwrap();
            assert_eq!(values(&r), want);
        }
        let t5 = tower(5);
        let r = strata_report(&t5, &DivisorClass::from_i64s(&[3, 6, 5, 7, 9])).unwrap();
        assert_eq!(values(&r), vec![3, 5, 5, 7, 9]);
        assert_eq!(r[1].witness_index, 3);
    }

    #[test]
    fn pointwise_values() {
        let t = tower(4);
        let l = DivisorClass::from_i64s(&[1, 3, 8, 4]);
        let on_gamma: CoxPoint = "[*:*:0:1:0:1:0:1]".parse().unwrap();
        let r = seshadri_at(&t, &l, &on_gamma).unwrap();
        assert_eq!((r.value, r.gamma_index, r.witness_index), (1.into(), 1, 1));
        let second: CoxPoint = "[*:*:*:*:0:1:0:1]".parse().unwrap();
        let r = seshadri_at(&t, &l, &second).unwrap();
        assert_eq!((r.value, r.gamma_index, r.witness_index), (3.into(), 2, 2));
        let general = CoxPoint::torus_identity(4);
        let r = seshadri_at(&t, &l, &general).unwrap();
        assert_eq!((r.value, r.gamma_index, r.witness_index), (4.into(), 4, 4));
        assert!(!r.formal);
    }

    #[test]
    fn projective_line() {
        let t = tower(1);
        let l = DivisorClass::from_i64s(&[7]);
        for x in ["[0:1]", "[1:0]", "[2:3]"] {
            let r = seshadri_at(&t, &l, &x.parse().unwrap()).unwrap();
            assert_eq!(r.value, 7.into());
        }
        assert_eq!(seshadri_sup(&t, &l).unwrap().value, 7.into());
        assert_eq!(seshadri_inf(&t, &l).unwrap().value, 7.into());
    }

    #[test]
    fn zero_coefficients_allowed() {
        let t = tower(3);
        let l = DivisorClass::from_i64s(&[2, 0, 5]);
        let r = seshadri_at(&t, &l, &"[1:1:1:1:0:1]".parse().unwrap()).unwrap();
        assert_eq!(r.value, 0.into());
    }

    #[test]
    fn global_values() {
        let t = tower(4);
        let l = DivisorClass::from_i64s(&[3, 6, 2, 7]);
        let inf = seshadri_inf(&t, &l).unwrap();
        assert_eq!(inf.value, 2.into());
        assert_eq!(inf.gamma_index, 3);
        assert_eq!(inf.witness_point.to_string(), "[1:1:1:1:1:1:0:1]");
        assert_eq!(seshadri_at(&t, &l, &inf.witness_point).unwrap().value, inf.value);
        let sup = seshadri_sup(&t, &l).unwrap();
        assert_eq!(sup.value, 7.into());
        assert_eq!(seshadri_at(&t, &l, &sup.witness_point).unwrap().value, sup.value);
        let k = DivisorClass::from_i64s(&[5, 5, 5, 5]);
        assert_eq!(seshadri_inf(&t, &k).unwrap().value, 5.into());
        assert_eq!(seshadri_sup(&t, &k).unwrap().value, 5.into());
    }

    #[test]
    fn hypotheses() {
        let t = tower(3);
        let bad = DivisorClass::from_i64s(&[1, -2, 3]);
        let x = CoxPoint::from_z_pattern(&[false, false, false]);
        assert_eq!(seshadri_at(&t, &bad, &x), Err(Error::NotNef { index: 2, value: "-2".into() }));
        let r = seshadri_at_with(&t, &bad, &x, Hypotheses::Formal).unwrap();
        assert!(r.formal);
        assert_eq!(r.value, 3.into());

        let flat = build_tower(BottNumbers::constant(3, 0).unwrap()).unwrap();
        let l = DivisorClass::from_i64s(&[1, 2, 3]);
        assert!(matches!(
            seshadri_at(&flat, &l, &x),
            Err(Error::NonPositiveBottNumbers { i: 1, j: 2, .. })
        ));
        assert!(seshadri_inf_with(&flat, &l, Hypotheses::Formal).unwrap().formal);
        assert!(matches!(strata_report(&flat, &l), Err(Error::NonPositiveBottNumbers { .. })));
    }

    #[test]
    fn point_errors_propagate() {
        let t = tower(2);
        let l = DivisorClass::from_i64s(&[1, 2]);
        assert_eq!(seshadri_at(&t, &l, &"[0:0:1:1]".parse().unwrap()), Err(Error::InvalidPair(1)));
        assert!(matches!(
            seshadri_at(&t, &DivisorClass::from_i64s(&[1]), &"[1:1:1:1]".parse().unwrap()),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn recursion_agrees_on_examples() {
        let t = tower(5);
        let l = DivisorClass::from_i64s(&[3, 6, 5, 7, 9]);
        for mask in 0u32..32 {
            let pattern: Vec<bool> = (0..5).map(|k| mask >> k & 1 == 1).collect();
            let x = CoxPoint::from_z_pattern(&pattern);
            assert_eq!(
                seshadri_by_recursion(&t, &l, &x).unwrap(),
                seshadri_at(&t, &l, &x).unwrap().value
            );
        }
    }

    #[test]
    fn result_json() {
        let r = SeshadriResult { value: 3.into(), witness_index: 2, gamma_index: 2, formal: false };
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"value":3,"witness_index":2,"gamma_index":2}"#);
        assert_eq!(serde_json::from_str::<SeshadriResult>(&s).unwrap(), r);
    }
}
