use serde::{Deserialize, Serialize};

use super::{minimal_members, GroundSet, LinkedFamily, SubsetCode};
use crate::error::{Error, Result};

/// JSON form of a family: `{"n": 3, "minimal_sets": [[0,1],[0,2],[1,2]]}`
/// with 0-based point indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub n: usize,
    pub minimal_sets: Vec<Vec<usize>>,
}

impl LinkedFamily {
    /// Text form `{a^1,a^2}|{a^1,a^3}|{a^2,a^3}`: minimal sets in canonical
    /// order separated by `|`, points named by the ground set.
    pub fn to_text(&self, ground: &GroundSet) -> String {
        self.minimal_sets
            .iter()
            .map(|m| {
                let names: Vec<String> = m.points().map(|p| ground.label(p)).collect();
                format!("{{{}}}", names.join(","))
            })
            .collect::<Vec<_>>()
            .join("|")
    }

    pub fn from_text(text: &str, ground: &GroundSet) -> Result<Self> {
        let names: Vec<String> = (0..ground.len()).map(|i| ground.label(i)).collect();
        let mut sets = Vec::new();
        for part in text.trim().split('|') {
            let inner = part
                .trim()
                .strip_prefix('{')
                .and_then(|p| p.strip_suffix('}'))
                .ok_or_else(|| Error::Parse(format!("expected {{...}}, got {part:?}")))?;
            let mut set = SubsetCode::EMPTY;
            for name in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let p = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| Error::Parse(format!("unknown point {name:?}")))?;
                set = SubsetCode(set.0 | 1 << p);
            }
            sets.push(set);
        }
        Self::from_sets_strict(ground.len(), sets)
    }

    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            n: self.n,
            minimal_sets: self
                .minimal_sets
                .iter()
                .map(|m| m.points().collect())
                .collect(),
        }
    }

    pub fn from_json(json: &FamilyJson) -> Result<Self> {
        GroundSet::new(json.n)?;
        let mut sets = Vec::with_capacity(json.minimal_sets.len());
        for pts in &json.minimal_sets {
            if let Some(p) = pts.iter().find(|&&p| p >= json.n) {
                return Err(Error::Parse(format!("point {p} outside 0..{}", json.n)));
            }
            sets.push(SubsetCode::from_points(pts.iter().copied()));
        }
        Self::from_sets_strict(json.n, sets)
    }

    /// Decoding only accepts genuine antichains of non-empty sets, so that
    /// decode(encode(x)) == x is the only way to obtain a value.
    fn from_sets_strict(n: usize, sets: Vec<SubsetCode>) -> Result<Self> {
        if sets.is_empty() || sets.iter().any(|s| s.is_empty()) {
            return Err(Error::Parse("a family needs non-empty minimal sets".into()));
        }
        let minimal = minimal_members(&sets);
        if minimal.len() != sets.len() {
            return Err(Error::Parse("minimal sets do not form an antichain".into()));
        }
        Ok(LinkedFamily::from_sorted_antichain(n, minimal))
    }
}
