//! Oracles and criterion checks shared by the integration tests and the
//! acceptance harness.
#![allow(dead_code)]

pub mod checks;

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;

use superext::semigroup::{make_monogenic, power_ideal, MonogenicSpec, OpTable};
use superext::setfam::SubsetCode;
use superext::superext::build_lambda;

/// Every associative table on `n <= 3` points.
pub fn all_semigroups(n: usize) -> Vec<OpTable> {
    (0..n * n)
        .map(|_| 0..n)
        .multi_cartesian_product()
        .filter_map(|cells| {
            let rows = cells.chunks(n).map(<[usize]>::to_vec).collect();
            OpTable::new(rows, (0..n).map(|i| format!("x{i}")).collect()).ok()
        })
        .collect()
}

pub fn monogenic(r: usize, m: usize) -> OpTable {
    make_monogenic(MonogenicSpec::new(r, m).unwrap()).unwrap()
}

pub fn small_bases() -> Vec<OpTable> {
    let mut v = Vec::new();
    for size in 1..=4 {
        for spec in MonogenicSpec::of_size(size) {
            v.push(make_monogenic(spec).unwrap());
        }
    }
    v.push(OpTable::from_fn(4, |x, y| x ^ y).unwrap());
    v.push(OpTable::from_fn(4, |x, _| x).unwrap());
    v.push(OpTable::from_fn(4, |_, y| y).unwrap());
    v.push(OpTable::from_fn(4, |_, _| 0).unwrap());
    v.push(OpTable::from_fn(4, |x, y| x.min(y)).unwrap());
    v.push(OpTable::from_fn(4, |x, y| x.max(y)).unwrap());
    v
}

/// Maximal linked upfamilies found by scanning every family of subsets:
/// up-closed, pairwise intersecting, and with no outside set meeting all
/// members.
pub fn brute_force_mlf(n: usize) -> BTreeSet<u128> {
    let subsets = 1usize << n;
    let mut found = BTreeSet::new();
    for tt in 0u128..(1u128 << subsets) {
        let members: Vec<usize> = (0..subsets).filter(|&c| tt >> c & 1 == 1).collect();
        let up_closed = members
            .iter()
            .all(|&c| (0..subsets).all(|d| d & c != c || tt >> d & 1 == 1));
        let linked = members.iter().all(|&a| members.iter().all(|&b| a & b != 0));
        if members.is_empty() || !up_closed || !linked {
            continue;
        }
        let extendable = (0..subsets)
            .filter(|&c| tt >> c & 1 == 0)
            .any(|c| members.iter().all(|&a| a & c != 0));
        if !extendable {
            found.insert(tt);
        }
    }
    found
}

/// `𝒜 ∗ ℬ` as the upfamily generated by `⋃_{a∈A} a·B_a` over members `A`
/// of `𝒜` and selections `a ↦ B_a` of minimal members of `ℬ`.
pub fn selection_product(a: u128, b_minimal: &[SubsetCode], base: &OpTable) -> u128 {
    let n = base.size();
    let subsets = 1usize << n;
    let mut generated: HashSet<usize> = HashSet::new();
    for set in (1..subsets).filter(|&c| a >> c & 1 == 1) {
        let points: Vec<usize> = (0..n).filter(|&i| set >> i & 1 == 1).collect();
        for choice in points
            .iter()
            .map(|_| b_minimal.iter())
            .multi_cartesian_product()
        {
            let mut union = 0usize;
            for (&x, b) in points.iter().zip(choice) {
                for y in b.points() {
                    union |= 1 << base.mul(x, y);
                }
            }
            generated.insert(union);
        }
    }
    (0..subsets)
        .filter(|&c| generated.iter().any(|&g| g & c == g))
        .fold(0u128, |tt, c| tt | 1u128 << c)
}

pub fn brute_force_aut_count(t: &OpTable) -> usize {
    (0..t.size())
        .permutations(t.size())
        .filter(|p| t.is_automorphism(p))
        .count()
}

/// Tables with at most 8 elements: bases, their ideals, small λ-tables,
/// groups and a few bands.
pub fn aut_corpus() -> Vec<OpTable> {
    let mut v = Vec::new();
    for size in 1..=5 {
        for spec in MonogenicSpec::of_size(size) {
            let t = make_monogenic(spec).unwrap();
            for k in 2..=spec.r {
                v.push(t.restrict(&power_ideal(&t, k)).unwrap());
            }
            v.push(t);
        }
    }
    for t in all_semigroups(3) {
        v.push(build_lambda(&t).unwrap().table);
        v.push(t);
    }
    for n in 1..=8 {
        v.push(OpTable::from_fn(n, |x, y| (x + y) % n).unwrap());
    }
    v.push(OpTable::from_fn(8, |x, y| x ^ y).unwrap());
    v.push(OpTable::from_fn(8, |x, y| (((x & 3) + (y & 3)) % 4) | ((x ^ y) & 4)).unwrap());
    v.push(OpTable::from_fn(6, |x, _| x).unwrap());
    v.push(OpTable::from_fn(7, |_, _| 0).unwrap());
    v.push(OpTable::from_fn(8, |x, y| x.min(y)).unwrap());
    v
}
