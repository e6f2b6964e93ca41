use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::perm::{Perm, PermGroup};
use crate::error::{Error, Result};

/// Symbolic form of a group, where one could be established.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NamedForm {
    /// All permutations preserving each listed class (singletons omitted).
    SymmetricProduct(Vec<Vec<usize>>),
    /// A named group of order at most 8, e.g. `C4`, `C2^2`, `S3`, `Q8`.
    Small(String),
}

/// Order plus, when recognised, a named decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupShape {
    #[serde(with = "decimal")]
    pub order: BigUint,
    pub named_form: Option<NamedForm>,
}

pub(crate) mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

pub fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

impl GroupShape {
    /// Canonical key: factors joined by `" x "`, symmetric factors grouped
    /// with exponents (`S3^3 x S8^3 x S17 x S19`); `C1` for the trivial group.
    /// `S2` is written `C2`. Falls back to `order N` when unnamed.
    pub fn key(&self) -> String {
        match &self.named_form {
            Some(NamedForm::Small(name)) => name.clone(),
            Some(NamedForm::SymmetricProduct(classes)) => {
                symmetric_key(&classes.iter().map(Vec::len).collect::<Vec<_>>())
            }
            None => format!("order {}", self.order),
        }
    }

    /// Sizes of the symmetric factors, ascending, when the group is a
    /// product of symmetric groups on classes.
    pub fn symmetric_degrees(&self) -> Option<Vec<usize>> {
        match &self.named_form {
            Some(NamedForm::SymmetricProduct(classes)) => {
                let mut v: Vec<usize> = classes.iter().map(Vec::len).collect();
                v.sort_unstable();
                Some(v)
            }
            _ => None,
        }
    }
}

impl fmt::Display for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.key(), self.order)
    }
}

/// Canonical key of a product of symmetric groups of the given degrees.
pub fn symmetric_key(degrees: &[usize]) -> String {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &d in degrees.iter().filter(|&&d| d > 1) {
        *counts.entry(d).or_default() += 1;
    }
    if counts.is_empty() {
        return "C1".into();
    }
    // S2 is the only symmetric factor that is also cyclic; a lone S3 stays S3.
    let parts: Vec<String> = counts
        .iter()
        .map(|(&d, &e)| {
            let base = if d == 2 {
                "C2".to_string()
            } else {
                format!("S{d}")
            };
            if e == 1 {
                base
            } else {
                format!("{base}^{e}")
            }
        })
        .collect();
    parts.join(" x ")
}

/// Parses an expected-group key: either a small-group name or a product of
/// `S<d>` / `C2` factors with optional `^<e>` exponents.
pub fn parse_group_key(key: &str) -> Result<ParsedKey> {
    let key = key.trim();
    if SMALL_NAMES.contains(&key) && !key.starts_with('S') {
        return Ok(ParsedKey::Small(key.to_string()));
    }
    let mut degrees = Vec::new();
    for factor in key.split(" x ") {
        let factor = factor.trim();
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => (
                b,
                e.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
            ),
            None => (factor, 1),
        };
        let d = match base {
            "C1" => 1,
            "C2" => 2,
            _ => base
                .strip_prefix('S')
                .and_then(|d| d.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("unknown group factor {factor:?}")))?,
        };
        degrees.extend(std::iter::repeat_n(d, exp));
    }
    Ok(ParsedKey::Symmetric(degrees))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedKey {
    Small(String),
    Symmetric(Vec<usize>),
}

impl ParsedKey {
    pub fn order(&self) -> BigUint {
        match self {
            ParsedKey::Small(name) => BigUint::from(small_order(name).unwrap_or(0)),
            ParsedKey::Symmetric(d) => d.iter().fold(BigUint::one(), |a, &k| a * factorial(k)),
        }
    }

    /// Canonical key for comparison with [`GroupShape::key`].
    pub fn key(&self) -> String {
        match self {
            ParsedKey::Small(name) => name.clone(),
            ParsedKey::Symmetric(d) => symmetric_key(d),
        }
    }
}

const SMALL_NAMES: [&str; 15] = [
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C2^2", "C2xC4", "C2^3", "S3", "D4", "Q8",
    "C2 x C4",
];

fn small_order(name: &str) -> Option<u32> {
    Some(match name {
        "C1" => 1,
        "C2" => 2,
        "C3" => 3,
        "C4" | "C2^2" => 4,
        "C5" => 5,
        "C6" | "S3" => 6,
        "C7" => 7,
        "C8" | "C2xC4" | "C2 x C4" | "C2^3" | "D4" | "Q8" => 8,
        _ => return None,
    })
}

/// Order, and a named form when the group is a product of symmetric groups
/// on its orbits (or on `hint_classes`), or is small enough to identify by
/// order, commutativity, exponent and involution count.
pub fn group_shape(group: &PermGroup, hint_classes: Option<&[Vec<usize>]>) -> GroupShape {
    let order = group.order();
    let classes: Vec<Vec<usize>> = match hint_classes {
        Some(h) => h.to_vec(),
        None => group.orbits(),
    };
    let mut classes: Vec<Vec<usize>> = classes.into_iter().filter(|c| c.len() > 1).collect();
    classes.sort();
    let product = classes
        .iter()
        .fold(BigUint::one(), |a, c| a * factorial(c.len()));
    let symmetric = product == order
        && classes.iter().all(|c| {
            c.windows(2)
                .all(|w| group.contains(&Perm::transposition(group.degree(), w[0], w[1])))
        });
    // small groups get their own names unless they are plain symmetric
    // products of degree > 2 factors
    let named_form = if order <= BigUint::from(8u32) {
        small_name(group).map(NamedForm::Small)
    } else {
        None
    };
    let named_form = match named_form {
        Some(NamedForm::Small(ref s)) if s == "S3" && symmetric => {
            Some(NamedForm::SymmetricProduct(classes))
        }
        Some(f) => Some(f),
        None if symmetric => Some(NamedForm::SymmetricProduct(classes)),
        None => faithful_symmetric_orbit(group, &order).map(NamedForm::Small),
    };
    GroupShape { order, named_form }
}

/// `S_d` when the group has order `d!` and acts faithfully on an orbit of
/// `d` points.
fn faithful_symmetric_orbit(group: &PermGroup, order: &BigUint) -> Option<String> {
    group
        .orbits()
        .into_iter()
        .filter(|o| o.len() > 2 && factorial(o.len()) == *order)
        .find(|o| group.restrict(o).is_ok_and(|r| r.order() == *order))
        .map(|o| format!("S{}", o.len()))
}

fn small_name(group: &PermGroup) -> Option<String> {
    let elements = group.elements(8)?;
    let n = elements.len();
    let abelian = group
        .generators()
        .iter()
        .all(|a| group.generators().iter().all(|b| a.then(b) == b.then(a)));
    let orders: Vec<u64> = elements.iter().map(Perm::order).collect();
    let exponent = orders.iter().copied().fold(1, lcm);
    let involutions = orders.iter().filter(|&&o| o == 2).count();
    let name = match (n, abelian) {
        (1, _) => "C1",
        (2, _) => "C2",
        (3, _) => "C3",
        (4, _) if exponent == 4 => "C4",
        (4, _) => "C2^2",
        (5, _) => "C5",
        (6, true) => "C6",
        (6, false) => "S3",
        (7, _) => "C7",
        (8, true) if exponent == 8 => "C8",
        (8, true) if exponent == 4 => "C2xC4",
        (8, true) => "C2^3",
        (8, false) if involutions == 5 => "D4",
        (8, false) => "Q8",
        _ => return None,
    };
    Some(name.to_string())
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}
