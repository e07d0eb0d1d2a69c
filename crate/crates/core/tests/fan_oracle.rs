//! Brute-force checks of the fan combinatorics, independent of the selector
//! encoding: cones are found by scanning all ray subsets.

use std::collections::BTreeSet;

use bott_core::{build_tower, enumerate_walls, BottNumbers, BottTower, RayId};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

fn subsets(universe: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, universe: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for k in start..universe {
            cur.push(k);
            go(k + 1, universe, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, universe, size, &mut Vec::new(), &mut out);
    out
}

fn det_cofactor(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return 1.into();
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect()).collect();
            let term = &m[0][j] * det_cofactor(&minor);
            if j % 2 == 0 { term } else { -term }
        })
        .sum()
}

/// Maximal cones as slot sets: n rays, never both slots of one stage.
fn brute_cones(t: &BottTower) -> Vec<BTreeSet<usize>> {
    let n = t.dimension();
    subsets(2 * n, n)
        .into_iter()
        .filter(|s| (0..n).all(|i| !(s.contains(&i) && s.contains(&(n + i)))))
        .map(|s| s.into_iter().collect())
        .collect()
}

fn slot_set(n: usize, rays: &[RayId]) -> BTreeSet<usize> {
    rays.iter().map(|r| r.slot(n)).collect()
}

fn tower(n: usize, rows: Vec<Vec<i64>>) -> BottTower {
    build_tower(
        BottNumbers::from_rows(n, rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
            .unwrap(),
    )
    .unwrap()
}

#[test]
fn three_fold_with_unit_numbers() {
    let t = tower(3, vec![vec![1, 1], vec![1]]);
    assert_eq!(t.rays().len(), 6);
    let cones = brute_cones(&t);
    assert_eq!(cones.len(), 8);
    for c in &cones {
        let m: Vec<Vec<BigInt>> = c.iter().map(|&s| t.rays()[s].vector.clone()).collect();
        assert_eq!(det_cofactor(&m).abs(), BigInt::from(1));
    }
    assert_eq!(enumerate_walls(&t).len(), 12);
}

#[test]
fn encoded_cones_match_brute_force() {
    for (n, rows) in [
        (1, vec![]),
        (2, vec![vec![3]]),
        (3, vec![vec![2, 5], vec![1]]),
        (4, vec![vec![1, 2, 3], vec![4, 5], vec![6]]),
    ] {
        let t = tower(n, rows);
        let brute: BTreeSet<_> = brute_cones(&t).into_iter().collect();
        let encoded: BTreeSet<_> = t.maximal_cones().map(|c| slot_set(n, &c.rays())).collect();
        assert_eq!(brute, encoded, "n = {n}");
        for c in t.maximal_cones() {
            assert_eq!(det_cofactor(&t.cone_matrix(&c)).abs(), BigInt::from(1));
        }
    }
}

#[test]
fn walls_match_brute_force() {
    for (n, rows, expected) in [
        (1, vec![], 1),
        (2, vec![vec![7]], 4),
        (3, vec![vec![1, 1], vec![1]], 12),
        (4, vec![vec![2, 1, 3], vec![1, 1], vec![4]], 32),
    ] {
        let t = tower(n, rows);
        let cones = brute_cones(&t);
        // (n-1)-subsets lying in exactly two maximal cones
        let brute: BTreeSet<BTreeSet<usize>> = subsets(2 * n, n - 1)
            .into_iter()
            .map(|s| s.into_iter().collect::<BTreeSet<_>>())
            .filter(|s| cones.iter().filter(|c| s.is_subset(c)).count() == 2)
            .collect();
        let walls = enumerate_walls(&t);
        assert_eq!(walls.len(), expected);
        let encoded: BTreeSet<_> = walls.iter().map(|w| slot_set(n, &w.rays())).collect();
        assert_eq!(encoded.len(), walls.len(), "walls listed once");
        assert_eq!(brute, encoded);
        for w in &walls {
            let (a, b) = w.adjacent();
            let s = slot_set(n, &w.rays());
            assert!(s.is_subset(&slot_set(n, &a.rays())) && s.is_subset(&slot_set(n, &b.rays())));
            assert_eq!((a.mask() ^ b.mask()).count_ones(), 1);
        }
    }
}

#[test]
fn completeness_by_sign_vectors() {
    // Every maximal cone is unimodular and the cones cover each generic
    // direction exactly once: a fixed generic vector has nonnegative
    // coordinates in exactly one cone basis.
    let t = tower(3, vec![vec![2, 1], vec![3]]);
    let probes: [[i64; 3]; 4] = [[7, -11, 13], [-5, 3, 17], [-19, -23, -2], [29, 31, -37]];
    for p in probes {
        let target: Vec<BigInt> = p.iter().map(|&v| BigInt::from(v)).collect();
        let hits = t
            .maximal_cones()
            .filter(|c| {
                let m = t.cone_matrix(c);
                let a: Vec<Vec<BigInt>> = (0..3).map(|r| (0..3).map(|k| m[k][r].clone()).collect()).collect();
                let x = bott_core::linalg::solve(&a, &target).unwrap();
                x.iter().all(|v| !v.is_negative() && !v.is_zero())
            })
            .count();
        assert_eq!(hits, 1, "probe {p:?}");
    }
}
