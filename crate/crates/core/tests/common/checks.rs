//! One function per acceptance criterion. Each returns a short summary on
//! success and the first violation found otherwise.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    all_semigroups, aut_corpus, brute_force_aut_count, brute_force_mlf, selection_product,
    small_bases,
};
use superext::report::{catalog, report_row, report_table, Verdict};
use superext::semigroup::{
    automorphisms, automorphisms_with, factorial, isomorphic, make_monogenic,
    max_subgroup_of_monogenic, parse_group_key, power_ideal, Isomorphism, MonogenicSpec, OpTable,
    SearchOptions, Structure,
};
use superext::setfam::{count_mlf, enumerate_mlf, GroundSet};
use superext::shifts::{is_auto_shift, kernel_subgroup, restriction_report};
use superext::superext::{build_lambda, shift_analysis, star, LambdaSemigroup, ShiftKind};

pub type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

pub const COUNTS: [u64; 7] = [1, 2, 4, 12, 81, 2646, 1_422_564];
pub const COUNT_LIMIT: Duration = Duration::from_secs(5);
pub const COUNT7_LIMIT: Duration = Duration::from_secs(600);
pub const ROW_LIMIT: Duration = Duration::from_secs(600);
pub const ISO_LIMIT: Duration = Duration::from_secs(60);
pub const RANDOM_TRIPLES: usize = 1_000_000;

fn specs_up_to(size: usize) -> Vec<MonogenicSpec> {
    (1..=size).flat_map(MonogenicSpec::of_size).collect()
}

fn lambda_of(spec: MonogenicSpec) -> LambdaSemigroup {
    build_lambda(&make_monogenic(spec).unwrap()).unwrap()
}

/// Counts of maximal linked families for n = 1..6, and n = 7 when `seven`.
pub fn mlf_counts(seven: bool) -> Check {
    let start = Instant::now();
    for n in 1..=6 {
        let got = enumerate_mlf(&GroundSet::new(n).unwrap()).unwrap().len() as u64;
        ensure!(
            got == COUNTS[n - 1],
            "n = {n}: {got} families, expected {}",
            COUNTS[n - 1]
        );
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < COUNT_LIMIT, "n <= 6 took {elapsed:?}");
    let mut summary = format!("n=1..6 in {:.3} s", elapsed.as_secs_f64());
    if seven {
        let start = Instant::now();
        let got = count_mlf(7).unwrap();
        let elapsed = start.elapsed();
        ensure!(got == COUNTS[6], "n = 7: {got}");
        ensure!(elapsed < COUNT7_LIMIT, "n = 7 took {elapsed:?}");
        summary += &format!(", n=7 in {:.3} s", elapsed.as_secs_f64());
    } else {
        summary += ", n=7 not run (needs --perf)";
    }
    Ok(summary)
}

pub fn oracle_equivalence() -> Check {
    for n in 1..=4 {
        let universe = enumerate_mlf(&GroundSet::new(n).unwrap()).unwrap();
        let ours: BTreeSet<u128> = universe.truth_tables().iter().copied().collect();
        ensure!(ours.len() == universe.len(), "n = {n}: duplicate families");
        ensure!(
            ours == brute_force_mlf(n),
            "n = {n}: enumeration differs from brute force"
        );
    }
    let mut bases: Vec<OpTable> = (1..=3).flat_map(all_semigroups).collect();
    bases.extend(small_bases().into_iter().filter(|t| t.size() == 4));
    let mut pairs = 0usize;
    for base in &bases {
        let universe = enumerate_mlf(&GroundSet::new(base.size()).unwrap()).unwrap();
        for a in universe.families() {
            for b in universe.families() {
                let fast = star(a, b, base).unwrap().truth_table();
                let slow = selection_product(a.truth_table(), b.minimal_sets(), base);
                ensure!(fast == slow, "{a} * {b} differs on {base:?}");
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "n<=4 families, {pairs} products over {} bases",
        bases.len()
    ))
}

pub fn lambda_soundness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut tables = 0;
    for spec in specs_up_to(5) {
        let lam = lambda_of(spec);
        let t = &lam.table;
        let n = t.size();
        ensure!(
            lam.base.is_homomorphism(t, &lam.embed),
            "{}: embedding is not a homomorphism",
            spec.name()
        );
        let distinct: BTreeSet<_> = lam.embed.iter().collect();
        ensure!(
            distinct.len() == lam.base.size(),
            "{}: embedding not injective",
            spec.name()
        );
        if n <= 12 {
            ensure!(t.check_associative(), "{}: not associative", spec.name());
        } else {
            for _ in 0..RANDOM_TRIPLES {
                let (x, y, z) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                ensure!(
                    t.mul(t.mul(x, y), z) == t.mul(x, t.mul(y, z)),
                    "{}: ({x} {y}) {z} fails",
                    spec.name()
                );
            }
        }
        tables += 1;
    }
    Ok(format!(
        "{tables} tables, {RANDOM_TRIPLES} random triples per 81-element table"
    ))
}

pub fn fiber_reproduction() -> Check {
    let cat = catalog();
    let mut lists = 0;
    for case in &cat.fibers {
        let spec = MonogenicSpec::new(case.r, case.m).unwrap();
        let kind = match case.kind.as_str() {
            "sigma" => ShiftKind::Sigma,
            "rho" => ShiftKind::Retraction,
            other => return Err(format!("unknown shift kind {other}")),
        };
        let analysis = shift_analysis(&lambda_of(spec), kind, case.k).unwrap();
        let computed = analysis.fiber_labels();
        let expected: BTreeMap<String, BTreeSet<String>> = case
            .map
            .iter()
            .map(|(k, v)| (k.clone(), v.iter().cloned().collect()))
            .collect();
        ensure!(
            computed == expected,
            "{} {} k={}: computed {computed:?}",
            spec.name(),
            case.kind,
            case.k
        );
        lists += expected.len();
    }
    Ok(format!("{} shifts, {lists} fibers", cat.fibers.len()))
}

/// Printed products; the ones marked as errata must differ from the print.
pub fn product_reproduction() -> Check {
    let cat = catalog();
    let mut errata = 0;
    for p in &cat.products {
        let lam = lambda_of(MonogenicSpec::new(p.r, p.m).unwrap());
        let pos = |l: &str| {
            lam.position_of_label(l)
                .ok_or_else(|| format!("no element {l}"))
        };
        let got = lam
            .table
            .label(lam.table.mul(pos(&p.left)?, pos(&p.right)?));
        ensure!(
            got == p.expected(),
            "{} * {} = {got} in lambda(M{}{}), expected {}",
            p.left,
            p.right,
            p.r,
            p.m,
            p.expected()
        );
        if p.erratum.is_some() {
            ensure!(got != p.result, "erratum entry matches the print");
            errata += 1;
        }
    }
    Ok(format!(
        "{} products, {errata} printed values corrected",
        cat.products.len()
    ))
}

pub fn automorphism_table() -> Check {
    let opts = SearchOptions::default();
    let rows = report_table(5, &opts).map_err(|e| e.to_string())?;
    ensure!(rows.len() == catalog().rows.len(), "{} rows", rows.len());
    let mut flagged = 0;
    for row in &rows {
        ensure!(
            row.verdict != Verdict::Mismatch,
            "{}: {:?}",
            row.name(),
            row.notes
        );
        let expected = row
            .expected
            .as_ref()
            .ok_or(format!("{}: no entry", row.name()))?;
        ensure!(
            row.aut_lambda.order == expected.shape_order,
            "{}: order",
            row.name()
        );
        if row.lambda_size == 81 && expected.aut_lambda.starts_with('S') {
            let degrees = row
                .aut_lambda
                .symmetric_degrees()
                .ok_or(format!("{}: not a symmetric product", row.name()))?;
            let product = degrees
                .iter()
                .fold(BigUint::from(1u32), |a, &d| a * factorial(d));
            ensure!(
                product == row.aut_lambda.order,
                "{}: factorial product",
                row.name()
            );
            let start = Instant::now();
            report_row(row.spec, row.k, &opts).map_err(|e| e.to_string())?;
            ensure!(
                start.elapsed() < ROW_LIMIT,
                "{} took {:?}",
                row.name(),
                start.elapsed()
            );
        }
        if row.verdict == Verdict::PaperEntryFlagged {
            flagged += 1;
        }
    }
    Ok(format!(
        "{} rows, 0 mismatched, {flagged} printed entries flagged",
        rows.len()
    ))
}

/// Orders of the symmetric products in a fibered kernel.
fn fiber_kernel_order(map: &[usize]) -> BigUint {
    let mut in_image = vec![false; map.len()];
    for &v in map {
        in_image[v] = true;
    }
    let mut outside = vec![0usize; map.len()];
    for x in (0..map.len()).filter(|&x| !in_image[x]) {
        outside[map[x]] += 1;
    }
    outside
        .iter()
        .fold(BigUint::from(1u32), |a, &k| a * factorial(k))
}

pub fn structural_theorems() -> Check {
    let opts = SearchOptions::default();
    let mut checks = 0usize;
    for spec in specs_up_to(5) {
        let name = spec.name();
        let lam = lambda_of(spec);
        let t = &lam.table;
        let aut = automorphisms_with(&Structure::new(t), &opts).unwrap();
        let gens = aut.group.generators();

        for k in 2..=spec.r + 1 {
            let lifted = lam.supported_in(&power_ideal(&lam.base, k));
            ensure!(
                lifted == power_ideal(t, k),
                "{name}: lambda(M^{k}) != lambda(M)^{k}"
            );
            checks += 1;
        }
        if spec.r >= 3 {
            ensure!(
                gens.iter()
                    .all(|g| lam.embed.iter().all(|&x| g.apply(x) == x)),
                "{name}: an automorphism moves a principal element"
            );
            checks += 1;
        }
        if spec.r == 2 {
            let rho = shift_analysis(&lam, ShiftKind::Retraction, 1).unwrap();
            let p = &rho.map;
            let n = t.size();
            for x in 0..n {
                for y in 0..n {
                    let xy = t.mul(x, y);
                    ensure!(
                        xy == t.mul(p[x], y) && xy == t.mul(x, p[y]) && xy == t.mul(p[x], p[y]),
                        "{name}: part (1) fails at ({x}, {y})"
                    );
                }
            }
            let (group, _) = max_subgroup_of_monogenic(spec);
            ensure!(
                gens.iter()
                    .all(|g| group.iter().all(|&x| g.apply(lam.embed[x]) == lam.embed[x])),
                "{name}: part (2) fails"
            );
            ensure!(
                is_auto_shift(p, t, &aut.group).unwrap(),
                "{name}: part (3) fails"
            );
            let r = restriction_report(t, &rho.image, p, &opts).unwrap();
            ensure!(
                r.kernel.order == fiber_kernel_order(p)
                    && r.range.order == r.fiber_matching_order
                    && r.retraction
                    && r.consistent(),
                "{name}: part (4) fails: {r:?}"
            );
            checks += 4;
        }
        if spec.r >= 2 {
            let sigma = shift_analysis(&lam, ShiftKind::Sigma, 1).unwrap();
            let s = &sigma.map;
            ensure!(
                is_auto_shift(s, t, &aut.group).unwrap(),
                "{name}: sigma is not an auto-shift"
            );
            let kernel = kernel_subgroup(s, t).map_err(|e| format!("{name}: {e}"))?;
            let mut rng = ChaCha8Rng::seed_from_u64(spec.size() as u64 * 31 + spec.r as u64);
            for _ in 0..100 {
                let g = kernel.random_element(&mut rng);
                ensure!(
                    t.is_automorphism(g.images()),
                    "{name}: kernel element {g} fails"
                );
            }
            ensure!(
                kernel.order() == fiber_kernel_order(s),
                "{name}: kernel order"
            );
            let r = restriction_report(t, &sigma.image, s, &opts).unwrap();
            ensure!(r.consistent(), "{name}: restriction chain fails: {r:?}");
            ensure!(r.range_in_h && r.h_in_g, "{name}: inclusions");
            checks += 4;
        }
    }
    Ok(format!(
        "{checks} theorem instances over {} specs",
        specs_up_to(5).len()
    ))
}

pub fn monogenic_non_isomorphism() -> Check {
    let mut verdicts = 0;
    let mut slowest = Duration::ZERO;
    for size in 3..=5 {
        let lams: Vec<_> = MonogenicSpec::of_size(size)
            .into_iter()
            .map(lambda_of)
            .collect();
        for (i, a) in lams.iter().enumerate() {
            for b in &lams[i + 1..] {
                let start = Instant::now();
                let verdict = isomorphic(&a.table, &b.table).unwrap();
                slowest = slowest.max(start.elapsed());
                ensure!(
                    matches!(verdict, Isomorphism::NotIsomorphic(_)),
                    "lambda tables of size-{size} monogenic semigroups are isomorphic"
                );
                verdicts += 1;
            }
        }
    }
    let m33 = make_monogenic(MonogenicSpec::new(3, 3).unwrap()).unwrap();
    let (_, sub) = build_lambda(&m33)
        .unwrap()
        .sub_lambda(&power_ideal(&m33, 2))
        .unwrap();
    let m23 = lambda_of(MonogenicSpec::new(2, 3).unwrap());
    let start = Instant::now();
    let verdict = isomorphic(&sub, &m23.table).unwrap();
    slowest = slowest.max(start.elapsed());
    let Isomorphism::Isomorphic(w) = verdict else {
        return Err("lambda(M33^2) and lambda(M23) are not isomorphic".into());
    };
    ensure!(
        sub.is_homomorphism(&m23.table, &w),
        "witness is not a homomorphism"
    );
    ensure!(slowest < ISO_LIMIT, "slowest verdict took {slowest:?}");
    Ok(format!(
        "{verdicts} non-isomorphic pairs plus one isomorphism, slowest {:.3} s",
        slowest.as_secs_f64()
    ))
}

pub fn small_degree_oracle() -> Check {
    let corpus = aut_corpus();
    for t in &corpus {
        ensure!(t.size() <= 8, "corpus table too large");
        let chain = automorphisms(t).unwrap().order();
        let brute = BigUint::from(brute_force_aut_count(t));
        ensure!(
            chain == brute,
            "order {chain} vs brute force {brute} on {t:?}"
        );
    }
    Ok(format!("{} tables", corpus.len()))
}

/// The expected order of a catalog key, used by tests that compare groups.
pub fn key_order(key: &str) -> BigUint {
    parse_group_key(key).unwrap().order()
}
