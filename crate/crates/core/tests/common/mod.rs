#![allow(dead_code)]

use bott_core::{build_tower, BottNumbers, BottTower, CoxPoint, DivisorClass};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Tower with Bott numbers drawn from `lo..=hi`.
pub fn tower_strategy(n: std::ops::RangeInclusive<usize>, lo: i64, hi: i64) -> impl Strategy<Value = BottTower> {
    n.prop_flat_map(move |n| {
        prop::collection::vec(lo..=hi, n * (n - 1) / 2).prop_map(move |flat| {
            let mut it = flat.into_iter();
            let numbers = BottNumbers::from_fn(n, |_, _| BigInt::from(it.next().unwrap())).unwrap();
            build_tower(numbers).unwrap()
        })
    })
}

pub fn positive_tower(max_n: usize) -> impl Strategy<Value = BottTower> {
    tower_strategy(1..=max_n, 1, 9)
}

pub fn nef_bundle(n: usize, max: i64) -> impl Strategy<Value = DivisorClass> {
    prop::collection::vec(0..=max, n).prop_map(|v| DivisorClass::from_i64s(&v))
}

pub fn z_pattern(n: usize) -> impl Strategy<Value = CoxPoint> {
    prop::collection::vec(any::<bool>(), n).prop_map(|zeros| CoxPoint::from_z_pattern(&zeros))
}

/// A positive tower with a nef bundle and a pattern point on it.
pub fn instance(max_n: usize) -> impl Strategy<Value = (BottTower, DivisorClass, CoxPoint)> {
    positive_tower(max_n).prop_flat_map(|t| {
        let n = t.dimension();
        (Just(t), nef_bundle(n, 99), z_pattern(n))
    })
}

pub fn to_i64(v: &BigInt) -> i64 {
    i64::try_from(v).unwrap()
}
