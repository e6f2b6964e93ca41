//! The summary table of automorphism groups for monogenic semigroups, checked
//! against a bundled catalog of expected values.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::semigroup::{
    automorphisms_with, decimal, group_shape, isomorphic_with, make_monogenic, parse_group_key,
    power_ideal, GroupShape, Isomorphism, MonogenicSpec, OpTable, SearchOptions, Structure,
};
use crate::superext::{build_lambda, MAX_LAMBDA_BASE};

const CATALOG_TOML: &str = include_str!("../data/catalog.toml");

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct CatalogRow {
    pub r: usize,
    pub m: usize,
    pub k: usize,
    pub size: usize,
    /// What `M_{r,m}^{·k}` is isomorphic to; empty when the table makes no claim.
    pub iso: String,
    pub aut_base: String,
    pub aut_lambda: String,
    /// `|Aut(λ(S))|` as printed.
    pub order: String,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct GroupCase {
    pub name: String,
    pub aut: String,
    pub aut_lambda: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct FiberCase {
    pub r: usize,
    pub m: usize,
    pub k: usize,
    /// `sigma` or `rho`.
    pub kind: String,
    pub map: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ProductCase {
    pub r: usize,
    pub m: usize,
    pub left: String,
    pub right: String,
    /// The printed value.
    pub result: String,
    /// The correct value when the printed one is wrong.
    #[serde(default)]
    pub erratum: Option<String>,
    #[serde(default)]
    pub note: Option<String>,
}

impl ProductCase {
    /// The value a correct table must produce.
    pub fn expected(&self) -> &str {
        self.erratum.as_deref().unwrap_or(&self.result)
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Catalog {
    #[serde(rename = "row")]
    pub rows: Vec<CatalogRow>,
    #[serde(rename = "group")]
    pub groups: Vec<GroupCase>,
    pub fibers: Vec<FiberCase>,
    #[serde(rename = "product")]
    pub products: Vec<ProductCase>,
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn row(&self, r: usize, m: usize, k: usize) -> Option<&CatalogRow> {
        self.rows.iter().find(|c| (c.r, c.m, c.k) == (r, m, k))
    }
}

/// The bundled catalog.
pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::parse(CATALOG_TOML).expect("bundled catalog parses"))
}

/// Table of a named semigroup: `C<n>`, `C2^2`, `M<r><m>` or `M<r><m>^<k>`.
pub fn named_semigroup(name: &str) -> Result<OpTable> {
    let bad = || Error::Parse(format!("unknown semigroup name {name:?}"));
    if name == "C2^2" {
        return OpTable::from_fn(4, |x, y| x ^ y);
    }
    if let Some(n) = name.strip_prefix('C') {
        let n: usize = n.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        return OpTable::from_fn(n, |x, y| (x + y) % n);
    }
    let rest = name.strip_prefix('M').ok_or_else(bad)?;
    let (digits, k) = match rest.split_once('^') {
        Some((d, k)) => (d, k.parse::<usize>().map_err(|_| bad())?),
        None => (rest, 1),
    };
    let mut chars = digits.chars().map(|c| c.to_digit(10).map(|d| d as usize));
    let (r, m) = match (chars.next(), chars.next(), chars.next()) {
        (Some(Some(r)), Some(Some(m)), None) => (r, m),
        _ => return Err(bad()),
    };
    let base = make_monogenic(MonogenicSpec::new(r, m)?)?;
    if k == 1 {
        return Ok(base);
    }
    base.restrict(&power_ideal(&base, k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    Mismatch,
    /// `Aut(λ(S))` matches the symbolic entry but another printed column
    /// (order, `Aut(S)` or the isomorphism type) disagrees with a direct check.
    PaperEntryFlagged,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::PaperEntryFlagged => "paper-entry-flagged",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Expected {
    pub iso: String,
    pub aut_base: String,
    pub aut_lambda: String,
    pub order: String,
    /// `|Aut(λ(S))|` recomputed from the symbolic entry.
    #[serde(with = "decimal")]
    pub shape_order: BigUint,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub spec: MonogenicSpec,
    pub k: usize,
    pub size: usize,
    pub lambda_size: usize,
    pub aut_base: GroupShape,
    pub aut_lambda: GroupShape,
    pub expected: Option<Expected>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl ReportRow {
    /// `M_{r,m}` or `M_{r,m}^k`.
    pub fn name(&self) -> String {
        if self.k == 1 {
            self.spec.name()
        } else {
            format!("{}^{}", self.spec.name(), self.k)
        }
    }
}

/// One row per `M_{r,m}^{·k}` with `r + m - 1 <= max_size` and `1 <= k <= r`.
pub fn report_table(max_size: usize, opts: &SearchOptions) -> Result<Vec<ReportRow>> {
    if max_size > MAX_LAMBDA_BASE {
        return Err(Error::Capacity {
            what: "report size",
            got: max_size,
            limit: MAX_LAMBDA_BASE,
        });
    }
    let specs: Vec<(MonogenicSpec, usize)> = (1..=max_size)
        .flat_map(MonogenicSpec::of_size)
        .flat_map(|spec| (1..=spec.r).map(move |k| (spec, k)))
        .collect();
    specs
        .into_par_iter()
        .map(|(spec, k)| report_row(spec, k, opts))
        .collect()
}

pub fn report_row(spec: MonogenicSpec, k: usize, opts: &SearchOptions) -> Result<ReportRow> {
    let whole = make_monogenic(spec)?;
    let ideal = power_ideal(&whole, k);
    let base = whole.restrict(&ideal)?;
    let lam = build_lambda(&whole)?;
    let (_, lam_sub) = lam.sub_lambda(&ideal)?;
    let aut_base = group_shape(
        &automorphisms_with(&Structure::new(&base), opts)?.group,
        None,
    );
    let aut_lambda = group_shape(
        &automorphisms_with(&Structure::new(&lam_sub), opts)?.group,
        None,
    );

    let mut notes = Vec::new();
    let Some(row) = catalog().row(spec.r, spec.m, k) else {
        notes.push("no catalog entry".into());
        return Ok(ReportRow {
            spec,
            k,
            size: base.size(),
            lambda_size: lam_sub.size(),
            aut_base,
            aut_lambda,
            expected: None,
            verdict: Verdict::Match,
            notes,
        });
    };

    let want_lambda = parse_group_key(&row.aut_lambda)?;
    let want_base = parse_group_key(&row.aut_base)?;
    // the verdict is decided by the lambda column; disagreement in any other
    // column only flags the entry
    let mut lambda_ok = row.size == base.size();
    if !lambda_ok {
        notes.push(format!("size {} expected {}", base.size(), row.size));
    }
    if aut_lambda.key() != want_lambda.key() || aut_lambda.order != want_lambda.order() {
        lambda_ok = false;
        notes.push(format!(
            "Aut(lambda(S)) is {} expected {}",
            aut_lambda.key(),
            row.aut_lambda
        ));
    }
    let mut flagged = false;
    if aut_base.key() != want_base.key() || aut_base.order != want_base.order() {
        flagged = true;
        notes.push(format!(
            "Aut(S) is {} (order {}), entry says {}",
            aut_base.key(),
            aut_base.order,
            row.aut_base
        ));
    }
    if !row.iso.is_empty() {
        let target = named_semigroup(&row.iso)?;
        match isomorphic_with(&Structure::new(&base), &Structure::new(&target), opts)? {
            Isomorphism::Isomorphic(_) => notes.push(format!("isomorphic to {}", row.iso)),
            Isomorphism::NotIsomorphic(why) => {
                flagged = true;
                notes.push(format!("not isomorphic to {} ({why})", row.iso));
            }
        }
    }
    let printed: Option<BigUint> = row.order.parse().ok();
    if printed.as_ref() != Some(&aut_lambda.order) {
        flagged = true;
        notes.push(format!(
            "printed order {} differs from the order {} of the symbolic entry",
            row.order, aut_lambda.order
        ));
    }
    let verdict = match (lambda_ok, flagged) {
        (false, _) => Verdict::Mismatch,
        (true, true) => Verdict::PaperEntryFlagged,
        (true, false) => Verdict::Match,
    };
    if let Some(note) = &row.note {
        notes.push(note.clone());
    }
    Ok(ReportRow {
        spec,
        k,
        size: base.size(),
        lambda_size: lam_sub.size(),
        aut_base,
        aut_lambda,
        expected: Some(Expected {
            iso: row.iso.clone(),
            aut_base: row.aut_base.clone(),
            aut_lambda: row.aut_lambda.clone(),
            order: row.order.clone(),
            shape_order: want_lambda.order(),
        }),
        verdict,
        notes,
    })
}

#[derive(Serialize)]
struct CsvRecord<'a> {
    semigroup: String,
    r: usize,
    m: usize,
    k: usize,
    size: usize,
    lambda_size: usize,
    aut_base: String,
    aut_lambda: String,
    order: String,
    expected_aut_lambda: &'a str,
    expected_order: &'a str,
    verdict: String,
    notes: String,
}

pub fn rows_to_csv(rows: &[ReportRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        let (exp_aut, exp_order) = row
            .expected
            .as_ref()
            .map_or(("", ""), |e| (e.aut_lambda.as_str(), e.order.as_str()));
        w.serialize(CsvRecord {
            semigroup: row.name(),
            r: row.spec.r,
            m: row.spec.m,
            k: row.k,
            size: row.size,
            lambda_size: row.lambda_size,
            aut_base: row.aut_base.key(),
            aut_lambda: row.aut_lambda.key(),
            order: row.aut_lambda.order.to_string(),
            expected_aut_lambda: exp_aut,
            expected_order: exp_order,
            verdict: row.verdict.to_string(),
            notes: row.notes.join("; "),
        })
        .map_err(|e| Error::invalid(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::invalid(e.to_string()))
}

pub fn rows_to_json(rows: &[ReportRow]) -> Result<String> {
    serde_json::to_string_pretty(rows).map_err(|e| Error::invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_complete() {
        let c = catalog();
        assert_eq!(c.rows.len(), 35);
        for size in 1..=5 {
            for spec in MonogenicSpec::of_size(size) {
                for k in 1..=spec.r {
                    let row = c.row(spec.r, spec.m, k).unwrap();
                    assert_eq!(row.size, spec.size() + 1 - k);
                    parse_group_key(&row.aut_lambda).unwrap();
                }
            }
        }
        assert_eq!(c.fibers.len(), 10);
        assert_eq!(c.groups.len(), 6);
    }

    #[test]
    fn named_semigroups() {
        assert_eq!(named_semigroup("C4").unwrap().size(), 4);
        assert_eq!(named_semigroup("M41^2").unwrap().size(), 3);
        assert_eq!(named_semigroup("M23").unwrap().size(), 4);
        assert!(named_semigroup("Q8").is_err());
    }

    #[test]
    fn small_table_matches() {
        let rows = report_table(3, &SearchOptions::default()).unwrap();
        assert_eq!(rows.len(), 10);
        assert!(
            rows.iter().all(|r| r.verdict == Verdict::Match),
            "{rows:#?}"
        );
        let csv = rows_to_csv(&rows).unwrap();
        assert_eq!(csv.lines().count(), 11);
    }
}
