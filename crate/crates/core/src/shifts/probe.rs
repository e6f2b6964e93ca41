use serde::Serialize;

use crate::error::Result;
use crate::semigroup::{
    automorphisms_with, group_shape, make_monogenic, power_ideal, GroupShape, MonogenicSpec,
    SearchOptions, Structure,
};
use crate::superext::{build_lambda, MAX_LAMBDA_BASE};

/// Two specs of equal size with index at least 3: do their λ-tables have
/// automorphism groups of the same order and symmetric-product shape?
#[derive(Clone, Debug, Serialize)]
pub struct C1Case {
    pub a: MonogenicSpec,
    pub b: MonogenicSpec,
    pub shape_a: GroupShape,
    pub shape_b: GroupShape,
    pub holds: bool,
}

/// Does restriction of `Aut(λ(M))` to `λ(M^{·2})` have trivial range?
#[derive(Clone, Debug, Serialize)]
pub struct C2Case {
    pub spec: MonogenicSpec,
    pub range_trivial: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ConjectureReport {
    pub c1: Vec<C1Case>,
    pub c2: Vec<C2Case>,
    /// Sizes that were not examined, with the reason.
    pub skipped: Vec<(usize, String)>,
}

impl ConjectureReport {
    pub fn all_hold(&self) -> bool {
        self.c1.iter().all(|c| c.holds) && self.c2.iter().all(|c| c.range_trivial)
    }
}

/// Tests both conjectures on every monogenic semigroup with at most
/// `max_size` elements. Sizes whose λ-tables exceed the search capacity are
/// listed as skipped; nothing here is a proof.
pub fn conjecture_probe(max_size: usize, opts: &SearchOptions) -> Result<ConjectureReport> {
    let mut report = ConjectureReport::default();
    for size in 1..=max_size {
        if size > MAX_LAMBDA_BASE {
            report.skipped.push((
                size,
                format!(
                    "capacity: lambda tables on {size} points exceed the automorphism search limit of {} elements",
                    opts.max_size
                ),
            ));
            continue;
        }
        let mut shapes: Vec<(MonogenicSpec, GroupShape)> = Vec::new();
        for spec in MonogenicSpec::of_size(size) {
            let base = make_monogenic(spec)?;
            let lam = build_lambda(&base)?;
            let aut = automorphisms_with(&Structure::new(&lam.table), opts)?;
            if spec.r >= 2 {
                let sub = lam.supported_in(&power_ideal(&base, 2));
                let range_trivial = aut
                    .group
                    .generators()
                    .iter()
                    .all(|g| sub.iter().all(|&x| g.apply(x) == x));
                report.c2.push(C2Case {
                    spec,
                    range_trivial,
                });
            }
            if spec.r >= 3 {
                shapes.push((spec, group_shape(&aut.group, None)));
            }
        }
        for (i, (a, sa)) in shapes.iter().enumerate() {
            for (b, sb) in &shapes[i + 1..] {
                let holds = sa.order == sb.order
                    && sa.symmetric_degrees().is_some()
                    && sa.symmetric_degrees() == sb.symmetric_degrees();
                report.c1.push(C1Case {
                    a: *a,
                    b: *b,
                    shape_a: sa.clone(),
                    shape_b: sb.clone(),
                    holds,
                });
            }
        }
    }
    Ok(report)
}
