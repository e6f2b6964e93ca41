//! Good shifts, auto-shifts, the kernel subgroup and the restriction of
//! automorphisms to the image of a shift.

mod probe;

pub use probe::{conjecture_probe, C1Case, C2Case, ConjectureReport};

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::{
    automorphisms_with, decimal, factorial, group_shape, GroupShape, OpTable, Perm, PermGroup,
    SearchOptions, Structure,
};

/// `s` is good for `table` when `X·X ⊆ s(X)` and elements with equal images
/// cannot be told apart by multiplication on either side.
pub fn is_good_shift(s: &[usize], table: &OpTable) -> bool {
    let n = table.size();
    if s.len() != n || s.iter().any(|&v| v >= n) {
        return false;
    }
    let mut in_image = vec![false; n];
    for &v in s {
        in_image[v] = true;
    }
    if table.products().iter().any(|&p| !in_image[p]) {
        return false;
    }
    // one representative per fiber is enough: indistinguishability is an
    // equivalence relation
    let mut rep = vec![usize::MAX; n];
    for x in 0..n {
        let r = &mut rep[s[x]];
        if *r == usize::MAX {
            *r = x;
            continue;
        }
        let y = *r;
        if table.row(x) != table.row(y) || (0..n).any(|z| table.mul(z, x) != table.mul(z, y)) {
            return false;
        }
    }
    true
}

/// A good shift commuting with every automorphism.
pub fn is_auto_shift(s: &[usize], table: &OpTable, aut: &PermGroup) -> Result<bool> {
    if !is_good_shift(s, table) {
        return Err(Error::invalid("map is not a good shift"));
    }
    if aut.degree() != table.size() {
        return Err(Error::invalid("group degree does not match the table"));
    }
    Ok(aut
        .generators()
        .iter()
        .all(|g| (0..s.len()).all(|x| g.apply(s[x]) == s[g.apply(x)])))
}

/// Fibers of `s` with the image of `s` removed, for fibers where that leaves
/// at least two points.
fn loose_fibers(s: &[usize]) -> Vec<Vec<usize>> {
    let n = s.len();
    let mut in_image = vec![false; n];
    for &v in s {
        in_image[v] = true;
    }
    let mut fibers = vec![Vec::new(); n];
    for x in 0..n {
        if !in_image[x] {
            fibers[s[x]].push(x);
        }
    }
    fibers.into_iter().filter(|f| f.len() > 1).collect()
}

/// The group `K` of bijections `ψ` with `s∘ψ = s` that fix the image of `s`
/// pointwise, generated by adjacent transpositions inside each fiber.
/// Every generator is checked to be an automorphism of the table.
pub fn kernel_subgroup(s: &[usize], table: &OpTable) -> Result<PermGroup> {
    if !is_good_shift(s, table) {
        return Err(Error::invalid("map is not a good shift"));
    }
    let n = table.size();
    let mut gens = Vec::new();
    for fiber in loose_fibers(s) {
        for w in fiber.windows(2) {
            let t = Perm::transposition(n, w[0], w[1]);
            if !table.is_automorphism(t.images()) {
                return Err(Error::invalid(format!(
                    "swapping {} and {} is not an automorphism",
                    table.label(w[0]),
                    table.label(w[1])
                )));
            }
            gens.push(t);
        }
    }
    PermGroup::new(n, gens)
}

/// Restriction of `Aut(X)` to the image `s(X)` of a good shift, with the
/// bounding groups of the kernel/range theorem.
///
/// `G` is the group of automorphisms of `s(X)` commuting with `s` on `s(X)`
/// and preserving `|s⁻¹(x) \ s(X)|`; `H` additionally preserves
/// `|s⁻¹(x) ∩ O|` for every `Aut(X)`-orbit `O`. `fiber_matching` only asks
/// for `|s⁻¹(x)|` to be preserved.
#[derive(Clone, Debug, Serialize)]
pub struct RestrictionReport {
    pub whole_size: usize,
    pub sub: Vec<usize>,
    #[serde(with = "decimal")]
    pub aut_order: BigUint,
    pub kernel: GroupShape,
    pub range: GroupShape,
    /// `∏ |s⁻¹(x) \ s(X)|!` over the image.
    #[serde(with = "decimal")]
    pub kernel_from_fibers: BigUint,
    #[serde(with = "decimal")]
    pub g_order: BigUint,
    #[serde(with = "decimal")]
    pub h_order: BigUint,
    #[serde(with = "decimal")]
    pub fiber_matching_order: BigUint,
    pub range_trivial: bool,
    pub range_in_h: bool,
    pub h_in_g: bool,
    pub retraction: bool,
    /// `R(Aut) = H = G` by order (the inclusions are checked separately).
    pub range_equals_h_equals_g: bool,
}

impl RestrictionReport {
    /// `|Aut(X)| = |Ker R| · |Range R|`.
    pub fn orders_multiply(&self) -> bool {
        self.aut_order == &self.kernel.order * &self.range.order
    }

    /// Everything the theorem promises for this shift holds.
    pub fn consistent(&self) -> bool {
        self.orders_multiply()
            && self.kernel.order == self.kernel_from_fibers
            && self.range_in_h
            && self.h_in_g
            && (!self.retraction || self.range_equals_h_equals_g)
    }
}

pub fn restriction_report(
    whole: &OpTable,
    sub: &[usize],
    s: &[usize],
    opts: &SearchOptions,
) -> Result<RestrictionReport> {
    let n = whole.size();
    if !is_good_shift(s, whole) {
        return Err(Error::invalid("map is not a good shift"));
    }
    let mut image: Vec<usize> = s.to_vec();
    image.sort_unstable();
    image.dedup();
    let mut sub_sorted = sub.to_vec();
    sub_sorted.sort_unstable();
    if image != sub_sorted {
        return Err(Error::invalid("subset is not the image of the shift"));
    }
    let sub = sub_sorted;
    if !whole.is_closed(&sub) {
        return Err(Error::invalid("image of the shift is not a subsemigroup"));
    }
    let mut local = vec![usize::MAX; n];
    for (i, &x) in sub.iter().enumerate() {
        local[x] = i;
    }
    let in_sub = |x: usize| local[x] != usize::MAX;

    let aut = automorphisms_with(&Structure::new(whole), opts)?;
    let aut_order = aut.order();
    let range_gens: Vec<Perm> = aut
        .group
        .generators()
        .iter()
        .map(|g| {
            let images = sub
                .iter()
                .map(|&x| match local[g.apply(x)] {
                    usize::MAX => Err(Error::invalid("image of the shift is not characteristic")),
                    v => Ok(v),
                })
                .collect::<Result<Vec<_>>>()?;
            Perm::from_images(images)
        })
        .collect::<Result<_>>()?;
    let range = PermGroup::new(sub.len(), range_gens)?;

    let pinned: Vec<u64> = (0..n)
        .map(|x| if in_sub(x) { local[x] as u64 + 1 } else { 0 })
        .collect();
    let kernel = automorphisms_with(&Structure::new(whole).with_colors(&pinned)?, opts)?;
    let kernel_from_fibers = {
        let mut outside = vec![0usize; n];
        for x in (0..n).filter(|&x| !in_sub(x)) {
            outside[s[x]] += 1;
        }
        outside
            .iter()
            .fold(BigUint::one(), |acc, &k| acc * factorial(k))
    };

    let sub_table = whole.restrict(&sub)?;
    let s_local: Vec<usize> = sub.iter().map(|&x| local[s[x]]).collect();
    let mut outside = vec![0u64; sub.len()];
    let mut total = vec![0u64; sub.len()];
    for x in 0..n {
        total[local[s[x]]] += 1;
        if !in_sub(x) {
            outside[local[s[x]]] += 1;
        }
    }
    let g = automorphisms_with(
        &Structure::new(&sub_table)
            .with_map(s_local.clone())?
            .with_colors(&outside)?,
        opts,
    )?;
    let orbits = aut.group.orbits();
    let mut orbit_of = vec![0usize; n];
    for (i, o) in orbits.iter().enumerate() {
        for &x in o {
            orbit_of[x] = i;
        }
    }
    let mut per_orbit = vec![vec![0u64; orbits.len()]; sub.len()];
    for x in 0..n {
        per_orbit[local[s[x]]][orbit_of[x]] += 1;
    }
    let orbit_colors: Vec<u64> = per_orbit
        .iter()
        .map(|counts| {
            counts.iter().enumerate().fold(0u64, |h, (i, &c)| {
                h.wrapping_mul(0x100_0000_01b3)
                    .wrapping_add((i as u64) << 32 | c)
            })
        })
        .collect();
    let h = automorphisms_with(
        &Structure::new(&sub_table)
            .with_map(s_local)?
            .with_colors(&outside)?
            .with_colors(&orbit_colors)?,
        opts,
    )?;
    let fiber_matching =
        automorphisms_with(&Structure::new(&sub_table).with_colors(&total)?, opts)?;

    let range_in_h = range.generators().iter().all(|p| h.group.contains(p));
    let h_in_g = h.group.generators().iter().all(|p| g.group.contains(p));
    let retraction = sub.iter().all(|&x| s[x] == x) && whole.is_homomorphism(whole, s);
    let (g_order, h_order) = (g.order(), h.order());
    let range_order = range.order();
    Ok(RestrictionReport {
        whole_size: n,
        range_trivial: range.is_trivial(),
        range_equals_h_equals_g: range_order == h_order && h_order == g_order,
        kernel: group_shape(&kernel.group, None),
        range: group_shape(&range, None),
        sub,
        aut_order,
        kernel_from_fibers,
        g_order,
        h_order,
        fiber_matching_order: fiber_matching.order(),
        range_in_h,
        h_in_g,
        retraction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{make_monogenic, MonogenicSpec};

    #[test]
    fn identity_is_good_and_auto() {
        let c3 = OpTable::from_fn(3, |x, y| (x + y) % 3).unwrap();
        let id = vec![0, 1, 2];
        assert!(is_good_shift(&id, &c3));
        let aut = crate::semigroup::automorphisms(&c3).unwrap();
        assert!(is_auto_shift(&id, &c3, &aut).unwrap());
        assert!(kernel_subgroup(&id, &c3).unwrap().is_trivial());
    }

    #[test]
    fn constant_map_on_m31_is_not_good() {
        let t = make_monogenic(MonogenicSpec::new(3, 1).unwrap()).unwrap();
        let s = vec![0, 0, 0];
        assert!(!is_good_shift(&s, &t));
        // every pair shares the image a, and some pair is told apart by a
        // left multiplication
        let witness = (0..3).any(|x| (0..3).any(|y| (0..3).any(|z| t.mul(z, x) != t.mul(z, y))));
        assert!(witness);
    }

    #[test]
    fn identity_restriction_has_trivial_kernel() {
        let c4 = OpTable::from_fn(4, |x, y| (x + y) % 4).unwrap();
        let id: Vec<usize> = (0..4).collect();
        let r = restriction_report(&c4, &id, &id, &SearchOptions::default()).unwrap();
        assert_eq!(r.kernel.order, BigUint::one());
        assert_eq!(r.range.order, r.aut_order);
        assert!(r.consistent());
    }
}
