use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::LambdaSemigroup;
use crate::error::{Error, Result};
use crate::semigroup::{
    detect_monogenic, max_subgroup_of_monogenic, power_ideal, MonogenicSpec, OpTable,
};
use crate::shifts::is_good_shift;

/// Which multiplication map to analyse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ShiftKind {
    /// `σ̄: 𝒜 ↦ a ∗ 𝒜` for the generator `a`.
    Sigma,
    /// `ρ̄: 𝒜 ↦ e ∗ 𝒜` for the idempotent `e` of the maximal subgroup.
    Retraction,
}

impl ShiftKind {
    pub fn symbol(self) -> &'static str {
        match self {
            ShiftKind::Sigma => "sigma",
            ShiftKind::Retraction => "rho",
        }
    }
}

/// A multiplication map on `λ(M^{·k})` with its image, fibers and verdicts.
/// Indices in `map`, `image` and `fibers` are local to `source`.
#[derive(Clone, Debug)]
pub struct ShiftAnalysis {
    pub spec: MonogenicSpec,
    pub kind: ShiftKind,
    pub k: usize,
    /// Elements of the whole λ-table forming `λ(M^{·k})`.
    pub domain: Vec<usize>,
    pub source: OpTable,
    pub map: Vec<usize>,
    pub image: Vec<usize>,
    /// Each image point with its sorted preimage.
    pub fibers: Vec<(usize, Vec<usize>)>,
    pub good_shift: bool,
    /// `map ∘ map = map` and `map` is an endomorphism.
    pub retraction: bool,
}

impl ShiftAnalysis {
    /// Fibers keyed by element label.
    pub fn fiber_labels(&self) -> BTreeMap<String, BTreeSet<String>> {
        self.fibers
            .iter()
            .map(|(t, f)| {
                (
                    self.source.label(*t).to_string(),
                    f.iter()
                        .map(|&x| self.source.label(x).to_string())
                        .collect(),
                )
            })
            .collect()
    }

    pub fn fiber_sizes(&self) -> Vec<usize> {
        self.fibers.iter().map(|(_, f)| f.len()).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.image.len() == self.map.len()
    }
}

pub fn shift_analysis(lam: &LambdaSemigroup, kind: ShiftKind, k: usize) -> Result<ShiftAnalysis> {
    if k == 0 {
        return Err(Error::invalid("ideal powers start at 1"));
    }
    let (spec, gen) = detect_monogenic(&lam.base)
        .ok_or_else(|| Error::invalid("shift analysis needs a monogenic base"))?;
    let multiplier = match kind {
        ShiftKind::Sigma => gen,
        ShiftKind::Retraction => {
            // locate e = a^n by walking powers of the detected generator
            let (_, e_exp) = max_subgroup_of_monogenic(spec);
            let mut x = gen;
            for _ in 0..e_exp {
                x = lam.base.mul(x, gen);
            }
            x
        }
    };
    let ideal = power_ideal(&lam.base, k);
    let (domain, source) = lam.sub_lambda(&ideal)?;
    let mut local = vec![usize::MAX; lam.size()];
    for (i, &x) in domain.iter().enumerate() {
        local[x] = i;
    }
    let left = lam.embed[multiplier];
    let map: Vec<usize> = domain
        .iter()
        .map(|&x| local[lam.table.mul(left, x)])
        .collect();
    debug_assert!(map.iter().all(|&v| v != usize::MAX), "ideal is absorbing");

    let mut fibers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (x, &t) in map.iter().enumerate() {
        fibers.entry(t).or_default().push(x);
    }
    let image: Vec<usize> = fibers.keys().copied().collect();
    let good_shift = is_good_shift(&map, &source);
    let retraction = map.iter().all(|&t| map[t] == t) && source.is_homomorphism(&source, &map);
    Ok(ShiftAnalysis {
        spec,
        kind,
        k,
        domain,
        source,
        map,
        image,
        fibers: fibers.into_iter().collect(),
        good_shift,
        retraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::make_monogenic;
    use crate::superext::build_lambda;

    fn lambda(r: usize, m: usize) -> LambdaSemigroup {
        build_lambda(&make_monogenic(MonogenicSpec::new(r, m).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn m32_sigma_fibers() {
        let a = shift_analysis(&lambda(3, 2), ShiftKind::Sigma, 1).unwrap();
        let mut sizes = a.fiber_sizes();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 4, 6]);
        assert!(a.good_shift);
        let labels = a.fiber_labels();
        let want: BTreeSet<String> = ["a^2", "a^4", "Tri_1", "Tri_3", "Sq_2", "Sq_4"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(labels["a^3"], want);
    }

    #[test]
    fn group_shift_is_bijective() {
        for m in 1..=4 {
            let a = shift_analysis(&lambda(1, m), ShiftKind::Sigma, 1).unwrap();
            assert!(a.is_injective());
            assert!(a.good_shift);
        }
    }

    #[test]
    fn m23_retraction() {
        let a = shift_analysis(&lambda(2, 3), ShiftKind::Retraction, 1).unwrap();
        assert!(a.retraction);
        assert_eq!(a.image.len(), 4);
    }

    #[test]
    fn rejects_non_monogenic_bases() {
        let klein = OpTable::from_fn(4, |x, y| x ^ y).unwrap();
        let l = build_lambda(&klein).unwrap();
        assert!(shift_analysis(&l, ShiftKind::Sigma, 1).is_err());
    }
}
