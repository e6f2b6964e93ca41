use std::collections::HashMap;

use super::{GroundSet, LinkedFamily, MAX_ENUM};
use crate::error::{Error, Result};

/// All maximal linked families on a ground set, in canonical order.
///
/// Families are ordered lexicographically by their sorted minimal-set lists.
/// The `index` lookup is keyed by membership truth tables, which are a
/// canonical encoding as well.
#[derive(Clone, Debug)]
pub struct FamilyUniverse {
    ground: GroundSet,
    families: Vec<LinkedFamily>,
    truth_tables: Vec<u128>,
    index: HashMap<u128, usize>,
}

impl FamilyUniverse {
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    pub fn families(&self) -> &[LinkedFamily] {
        &self.families
    }

    pub fn family(&self, i: usize) -> &LinkedFamily {
        &self.families[i]
    }

    pub fn truth_tables(&self) -> &[u128] {
        &self.truth_tables
    }

    pub fn position(&self, family: &LinkedFamily) -> Option<usize> {
        if family.ground_size() != self.ground.len() {
            return None;
        }
        self.index.get(&family.truth_table()).copied()
    }

    pub fn position_of_truth_table(&self, tt: u128) -> Option<usize> {
        self.index.get(&tt).copied()
    }

    /// Index of the principal ultrafilter at each point.
    pub fn principal_positions(&self) -> Vec<usize> {
        (0..self.ground.len())
            .map(|p| {
                self.position(&LinkedFamily::principal(self.ground.len(), p))
                    .expect("principal ultrafilters are maximal linked")
            })
            .collect()
    }
}

/// Superset and subset masks over the `2^n` subsets, as truth tables.
struct Closures {
    up: Vec<u128>,
    down: Vec<u128>,
}

impl Closures {
    fn new(n: usize) -> Self {
        let count = 1usize << n;
        let mut up = vec![0u128; count];
        let mut down = vec![0u128; count];
        for c in 0..count {
            for d in 0..count {
                if c & !d == 0 {
                    up[c] |= 1u128 << d;
                }
                if d & !c == 0 {
                    down[c] |= 1u128 << d;
                }
            }
        }
        Closures { up, down }
    }
}

/// Backtracking over complementary pairs `(C, X \ C)`.
///
/// `inside` is up-closed, `outside` is down-closed and is the complement image
/// of `inside`. An undecided `C` has no member below it and no non-member
/// above it, so putting either `C` or its complement into the family never
/// conflicts: every branch ends in a distinct self-dual monotone function.
struct Enumerator {
    n: usize,
    full: usize,
    order: Vec<usize>,
    closures: Closures,
}

impl Enumerator {
    fn new(n: usize) -> Self {
        let full = (1usize << n) - 1;
        let mut order: Vec<usize> = (1..full).collect();
        order.sort_by_key(|&c| (c.count_ones(), c));
        Enumerator {
            n,
            full,
            order,
            closures: Closures::new(n),
        }
    }

    fn run(&self, visit: &mut impl FnMut(u128)) {
        let inside = self.closures.up[self.full];
        let outside = self.closures.down[0];
        self.descend(0, inside, outside, visit);
    }

    fn descend(&self, from: usize, inside: u128, outside: u128, visit: &mut impl FnMut(u128)) {
        debug_assert_eq!(inside & outside, 0);
        let decided = inside | outside;
        let Some(pos) = (from..self.order.len()).find(|&i| decided >> self.order[i] & 1 == 0)
        else {
            debug_assert_eq!(inside.count_ones(), 1 << (self.n - 1));
            visit(inside);
            return;
        };
        let c = self.order[pos];
        let co = self.full ^ c;
        let up = &self.closures.up;
        let down = &self.closures.down;
        self.descend(pos + 1, inside | up[c], outside | down[co], visit);
        self.descend(pos + 1, inside | up[co], outside | down[c], visit);
    }
}

fn check_range(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUM {
        return Err(Error::Capacity {
            what: "enumeration ground size",
            got: n,
            limit: MAX_ENUM,
        });
    }
    Ok(())
}

/// Number of maximal linked families on `n` points, without materialising
/// them.
pub fn count_mlf(n: usize) -> Result<u64> {
    check_range(n)?;
    let mut count = 0u64;
    Enumerator::new(n).run(&mut |_| count += 1);
    Ok(count)
}

/// Every maximal linked family on the ground set exactly once, canonically
/// encoded and sorted.
pub fn enumerate_mlf(ground: &GroundSet) -> Result<FamilyUniverse> {
    let n = ground.len();
    check_range(n)?;
    let mut tables = Vec::new();
    Enumerator::new(n).run(&mut |tt| tables.push(tt));

    let mut families: Vec<(LinkedFamily, u128)> = tables
        .into_iter()
        .map(|tt| (LinkedFamily::from_truth_table(n, tt), tt))
        .collect();
    families.sort_unstable_by(|a, b| a.0.cmp(&b.0));

    let (families, truth_tables): (Vec<_>, Vec<_>) = families.into_iter().unzip();
    let index = truth_tables
        .iter()
        .enumerate()
        .map(|(i, &tt)| (tt, i))
        .collect();
    Ok(FamilyUniverse {
        ground: ground.clone(),
        families,
        truth_tables,
        index,
    })
}
