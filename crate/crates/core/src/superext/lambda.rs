use rayon::prelude::*;

use super::labels::paper_labels;
use crate::error::{Error, Result};
use crate::semigroup::OpTable;
use crate::setfam::{enumerate_mlf, FamilyUniverse, GroundSet, LinkedFamily, MAX_ENUM};

/// Largest base for which [`build_lambda`] runs by default; one more point is
/// allowed with [`LambdaOptions::perf`].
pub const MAX_LAMBDA_BASE: usize = 5;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LambdaOptions {
    /// Allow a base of 6 elements (2646 families, about 7·10^6 products).
    pub perf: bool,
}

/// Left preimages `a⁻¹C = {x : a·x ∈ C}` for every element `a` and subset `C`.
struct Preimages {
    n: usize,
    table: Vec<u8>,
}

impl Preimages {
    fn new(base: &OpTable) -> Self {
        let n = base.size();
        let subsets = 1usize << n;
        let mut table = vec![0u8; n * subsets];
        for a in 0..n {
            for c in 0..subsets {
                let mut pre = 0u8;
                for x in 0..n {
                    if c >> base.mul(a, x) & 1 == 1 {
                        pre |= 1 << x;
                    }
                }
                table[a * subsets + c] = pre;
            }
        }
        Preimages { n, table }
    }

    /// Truth table of `A ∗ B` from the truth tables of `A` and `B`:
    /// `C ∈ A∗B` iff `{a : a⁻¹C ∈ B} ∈ A`.
    fn star(&self, a: u128, b: u128) -> u128 {
        let subsets = 1usize << self.n;
        let mut out = 0u128;
        for c in 0..subsets {
            let mut witnesses = 0usize;
            for x in 0..self.n {
                let pre = self.table[x * subsets + c] as usize;
                witnesses |= ((b >> pre & 1) as usize) << x;
            }
            out |= (a >> witnesses & 1) << c;
        }
        out
    }
}

/// The product `𝒜 ∗ ℬ` in `λ(S)`.
pub fn star(a: &LinkedFamily, b: &LinkedFamily, base: &OpTable) -> Result<LinkedFamily> {
    let n = base.size();
    if a.ground_size() != n || b.ground_size() != n {
        return Err(Error::invalid(format!(
            "families on {} and {} points but the base has {n} elements",
            a.ground_size(),
            b.ground_size()
        )));
    }
    if n > MAX_ENUM {
        return Err(Error::Capacity {
            what: "base size for the star product",
            got: n,
            limit: MAX_ENUM,
        });
    }
    let pre = Preimages::new(base);
    Ok(LinkedFamily::from_truth_table(
        n,
        pre.star(a.truth_table(), b.truth_table()),
    ))
}

/// The superextension `λ(S)` of a finite semigroup as a table over the
/// canonically ordered maximal linked families.
#[derive(Clone, Debug)]
pub struct LambdaSemigroup {
    pub base: OpTable,
    pub universe: FamilyUniverse,
    pub table: OpTable,
    /// `embed[x]` is the index of the principal ultrafilter at `x`.
    pub embed: Vec<usize>,
}

/// Ground set named after the base elements when their labels are usable as
/// point names.
fn ground_for(base: &OpTable) -> Result<GroundSet> {
    GroundSet::with_labels(base.labels().to_vec()).or_else(|_| GroundSet::new(base.size()))
}

pub fn build_lambda(base: &OpTable) -> Result<LambdaSemigroup> {
    build_lambda_with(base, LambdaOptions::default())
}

pub fn build_lambda_with(base: &OpTable, opts: LambdaOptions) -> Result<LambdaSemigroup> {
    let n = base.size();
    let limit = if opts.perf {
        MAX_LAMBDA_BASE + 1
    } else {
        MAX_LAMBDA_BASE
    };
    if n > limit {
        return Err(Error::Capacity {
            what: "base size for a lambda table",
            got: n,
            limit,
        });
    }
    let ground = ground_for(base)?;
    let universe = enumerate_mlf(&ground)?;
    let pre = Preimages::new(base);
    let tts = universe.truth_tables();
    let size = universe.len();
    let rows: Vec<Vec<usize>> = (0..size)
        .into_par_iter()
        .map(|x| {
            (0..size)
                .map(|y| {
                    let tt = pre.star(tts[x], tts[y]);
                    universe
                        .position_of_truth_table(tt)
                        .expect("products of maximal linked families are maximal linked")
                })
                .collect()
        })
        .collect();
    let cells = rows.concat();
    let embed = universe.principal_positions();
    let labels = match paper_labels(&universe, base.labels()) {
        Ok(labels) => labels.iter().map(|l| l.render(base.labels())).collect(),
        Err(_) => universe
            .families()
            .iter()
            .map(|f| f.to_text(&ground))
            .collect(),
    };
    let table = OpTable::from_cells(size, cells, labels);
    Ok(LambdaSemigroup {
        base: base.clone(),
        universe,
        table,
        embed,
    })
}

impl LambdaSemigroup {
    pub fn size(&self) -> usize {
        self.table.size()
    }

    pub fn family(&self, x: usize) -> &LinkedFamily {
        self.universe.family(x)
    }

    /// Elements of `λ(S)` that are families on the subset `points`, i.e. the
    /// image of `λ(points)` under the inclusion. Sorted.
    pub fn supported_in(&self, points: &[usize]) -> Vec<usize> {
        let mask = points.iter().fold(0u16, |m, &p| m | 1 << p);
        (0..self.size())
            .filter(|&x| self.family(x).support().0 & !mask == 0)
            .collect()
    }

    /// The sub-table on `λ(points)` for a subsemigroup `points` of the base,
    /// with the labels of the whole table.
    pub fn sub_lambda(&self, points: &[usize]) -> Result<(Vec<usize>, OpTable)> {
        if !self.base.is_closed(points) {
            return Err(Error::invalid("points do not form a subsemigroup"));
        }
        let elements = self.supported_in(points);
        let table = self.table.restrict(&elements)?;
        Ok((elements, table))
    }

    pub fn position_of_label(&self, label: &str) -> Option<usize> {
        self.table.position_of_label(label)
    }
}

/// The map `λφ` induced by a homomorphism of bases, as element indices.
pub fn lambda_hom(
    phi: &[usize],
    src: &LambdaSemigroup,
    dst: &LambdaSemigroup,
) -> Result<Vec<usize>> {
    if !src.base.is_homomorphism(&dst.base, phi) {
        return Err(Error::invalid("base map is not a homomorphism"));
    }
    let target = dst.base.size();
    let map = src
        .universe
        .families()
        .iter()
        .map(|f| {
            let image = crate::setfam::map_family(phi, f, target)?;
            dst.universe
                .position(&image)
                .ok_or_else(|| Error::invalid("image family is not maximal linked"))
        })
        .collect::<Result<Vec<_>>>()?;
    if !src.table.is_homomorphism(&dst.table, &map) {
        return Err(Error::invalid("induced map is not a homomorphism"));
    }
    Ok(map)
}
