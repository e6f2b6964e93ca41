//! Ground-set combinatorics: subsets encoded as bit masks, linked upfamilies
//! stored by their minimal sets, and the enumeration of all maximal linked
//! families on a small ground set.
//!
//! A maximal linked family on `X` is the same thing as a self-dual monotone
//! Boolean function on `|X|` variables: for every subset `C` exactly one of
//! `C` and `X \ C` belongs to the family. Everything here leans on that
//! characterisation.

mod encoding;
mod enumerate;

pub use encoding::FamilyJson;
pub use enumerate::{count_mlf, enumerate_mlf, FamilyUniverse};

use std::fmt;

use crate::error::{Error, Result};

/// Largest ground set a [`SubsetCode`] can describe.
pub const MAX_GROUND: usize = 16;

/// Largest ground set for which all maximal linked families are enumerated.
pub const MAX_ENUM: usize = 7;

/// A finite ground set `{0, .., n-1}` with optional display names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("ground set must have at least one point"));
        }
        if n > MAX_GROUND {
            return Err(Error::Capacity {
                what: "ground set size",
                got: n,
                limit: MAX_GROUND,
            });
        }
        Ok(GroundSet { n, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut ground = GroundSet::new(labels.len())?;
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(Error::invalid("ground set labels must be distinct"));
        }
        if labels
            .iter()
            .any(|l| l.is_empty() || l.contains([',', '|', '{', '}']))
        {
            return Err(Error::invalid(
                "ground set labels must be non-empty and free of ',', '|', '{', '}'",
            ));
        }
        ground.labels = Some(labels);
        Ok(ground)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Display name of point `i`; `a^{i+1}` when no labels were given.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(labels) => labels[i].clone(),
            None => format!("a^{}", i + 1),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The whole ground set as a subset.
    pub fn full(&self) -> SubsetCode {
        SubsetCode::full(self.n)
    }
}

/// A subset of a ground set of at most 16 points; bit `i` marks point `i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetCode(pub u16);

impl SubsetCode {
    pub const EMPTY: SubsetCode = SubsetCode(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        SubsetCode(((1u32 << n) - 1) as u16)
    }

    pub fn singleton(i: usize) -> Self {
        SubsetCode(1 << i)
    }

    pub fn from_points<I: IntoIterator<Item = usize>>(points: I) -> Self {
        SubsetCode(points.into_iter().fold(0u16, |acc, p| acc | (1 << p)))
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, point: usize) -> bool {
        self.0 >> point & 1 == 1
    }

    pub fn is_subset_of(self, other: SubsetCode) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: SubsetCode) -> bool {
        self.0 & other.0 != 0
    }

    pub fn complement(self, n: usize) -> SubsetCode {
        SubsetCode(!self.0 & SubsetCode::full(n).0)
    }

    pub fn fits(self, n: usize) -> bool {
        self.is_subset_of(SubsetCode::full(n))
    }

    /// Points in increasing order.
    pub fn points(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..MAX_GROUND).filter(move |i| bits >> i & 1 == 1)
    }
}

/// A linked upfamily stored by the antichain of its minimal sets, sorted
/// ascending by bit pattern so that equal families have equal encodings.
///
/// Values produced by [`minimize`] are only guaranteed to be antichains; the
/// families handed out by [`enumerate_mlf`], [`map_family`] and the star
/// product are maximal linked.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinkedFamily {
    n: usize,
    minimal_sets: Vec<SubsetCode>,
}

impl LinkedFamily {
    /// Size of the ground set the family lives on.
    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn minimal_sets(&self) -> &[SubsetCode] {
        &self.minimal_sets
    }

    /// The principal ultrafilter `⟨{p}⟩`.
    pub fn principal(n: usize, p: usize) -> Self {
        assert!(p < n, "point {p} outside a ground set of {n} points");
        LinkedFamily {
            n,
            minimal_sets: vec![SubsetCode::singleton(p)],
        }
    }

    /// `Some(p)` when the family is the principal ultrafilter at `p`.
    pub fn principal_point(&self) -> Option<usize> {
        match self.minimal_sets.as_slice() {
            [single] if single.len() == 1 => single.points().next(),
            _ => None,
        }
    }

    /// Upfamily membership: some minimal set lies inside `c`.
    pub fn contains(&self, c: SubsetCode) -> bool {
        self.minimal_sets.iter().any(|m| m.is_subset_of(c))
    }

    /// Union of all minimal sets.
    pub fn support(&self) -> SubsetCode {
        SubsetCode(self.minimal_sets.iter().fold(0, |acc, m| acc | m.0))
    }

    pub fn is_linked(&self) -> bool {
        is_linked(&self.minimal_sets)
    }

    /// Self-duality test: for every subset `C` exactly one of `C` and its
    /// complement is a member. For linked upfamilies this is equivalent to
    /// maximality among linked upfamilies.
    pub fn is_maximal_linked(&self) -> bool {
        let full = SubsetCode::full(self.n).0 as u32;
        (0..=full).all(|c| {
            let c = SubsetCode(c as u16);
            self.contains(c) != self.contains(c.complement(self.n))
        })
    }

    /// Membership indicator over all `2^n` subsets (bit `c` set iff `c` is a
    /// member). Only available for `n <= 7`.
    pub fn truth_table(&self) -> u128 {
        assert!(self.n <= MAX_ENUM, "truth tables need n <= {MAX_ENUM}");
        let mut tt = 0u128;
        for c in 0..(1u32 << self.n) {
            if self.contains(SubsetCode(c as u16)) {
                tt |= 1u128 << c;
            }
        }
        tt
    }

    /// Rebuilds a family from an up-closed membership indicator.
    pub fn from_truth_table(n: usize, tt: u128) -> Self {
        assert!(n <= MAX_ENUM, "truth tables need n <= {MAX_ENUM}");
        let minimal_sets = (1..(1u32 << n))
            .filter(|&c| tt >> c & 1 == 1)
            .filter(|&c| {
                (0..n)
                    .filter(|i| c >> i & 1 == 1)
                    .all(|i| tt >> (c & !(1 << i)) & 1 == 0)
            })
            .map(|c| SubsetCode(c as u16))
            .collect();
        LinkedFamily { n, minimal_sets }
    }

    pub(crate) fn from_sorted_antichain(n: usize, minimal_sets: Vec<SubsetCode>) -> Self {
        LinkedFamily { n, minimal_sets }
    }
}

impl fmt::Display for LinkedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ground = GroundSet::new(self.n).map_err(|_| fmt::Error)?;
        f.write_str(&self.to_text(&ground))
    }
}

/// Reduces a generating family to its inclusion-minimal members in canonical
/// order. The result generates the same upfamily; linkedness is not checked.
pub fn minimize(sets: &[SubsetCode], ground: &GroundSet) -> Result<LinkedFamily> {
    if sets.is_empty() {
        return Err(Error::invalid("cannot minimize an empty list of sets"));
    }
    let n = ground.len();
    for s in sets {
        if s.is_empty() {
            return Err(Error::invalid("families consist of non-empty subsets"));
        }
        if !s.fits(n) {
            return Err(Error::invalid(format!(
                "subset {:#b} does not fit a ground set of {n} points",
                s.0
            )));
        }
    }
    Ok(LinkedFamily {
        n,
        minimal_sets: minimal_members(sets),
    })
}

pub(crate) fn minimal_members(sets: &[SubsetCode]) -> Vec<SubsetCode> {
    let mut sorted = sets.to_vec();
    sorted.sort_by_key(|s| (s.len(), s.0));
    sorted.dedup();
    let mut kept: Vec<SubsetCode> = Vec::with_capacity(sorted.len());
    for s in sorted {
        if !kept.iter().any(|k| k.is_subset_of(s)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// True iff every two of the given sets intersect.
pub fn is_linked(sets: &[SubsetCode]) -> bool {
    sets.iter()
        .enumerate()
        .all(|(i, a)| sets[i..].iter().all(|b| a.intersects(*b)))
}

/// The induced map `λf`: the family generated by the images `f(L)` of the
/// minimal sets `L`. `f[i]` is the image of point `i` in a ground set of
/// `target` points.
pub fn map_family(f: &[usize], family: &LinkedFamily, target: usize) -> Result<LinkedFamily> {
    if f.len() != family.n {
        return Err(Error::invalid(format!(
            "map has {} entries but the family lives on {} points",
            f.len(),
            family.n
        )));
    }
    if target == 0 || target > MAX_GROUND {
        return Err(Error::Capacity {
            what: "target ground size",
            got: target,
            limit: MAX_GROUND,
        });
    }
    if let Some(bad) = f.iter().find(|&&y| y >= target) {
        return Err(Error::invalid(format!(
            "map sends a point to {bad} >= {target}"
        )));
    }
    let images: Vec<SubsetCode> = family
        .minimal_sets
        .iter()
        .map(|m| SubsetCode::from_points(m.points().map(|p| f[p])))
        .collect();
    Ok(LinkedFamily {
        n: target,
        minimal_sets: minimal_members(&images),
    })
}
