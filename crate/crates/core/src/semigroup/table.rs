use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite semigroup given by its multiplication table; `mul(x, y)` is the
/// index of `x·y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpTable {
    size: usize,
    cells: Vec<usize>,
    labels: Vec<String>,
}

/// On-disk form: `{"size": 4, "labels": [...], "table": [[...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableJson {
    pub size: usize,
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl OpTable {
    /// Builds a table from rows, checking shape, entry range and associativity.
    pub fn new(rows: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let table = Self::from_rows_unchecked(rows, labels)?;
        if let Some((x, y, z)) = table.associativity_failure() {
            return Err(Error::invalid(format!(
                "operation is not associative at ({x}, {y}, {z})"
            )));
        }
        Ok(table)
    }

    /// Like [`OpTable::new`] but skips the associativity scan. Used for
    /// tables known to be associative by construction and for testing the
    /// checker itself.
    pub fn from_rows_unchecked(rows: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::invalid("a semigroup needs at least one element"));
        }
        if labels.len() != size {
            return Err(Error::invalid(format!(
                "{} labels for {size} elements",
                labels.len()
            )));
        }
        let mut cells = Vec::with_capacity(size * size);
        for (x, row) in rows.into_iter().enumerate() {
            if row.len() != size {
                return Err(Error::invalid(format!("row {x} has {} entries", row.len())));
            }
            if let Some(bad) = row.iter().find(|&&v| v >= size) {
                return Err(Error::invalid(format!("row {x} contains {bad} >= {size}")));
            }
            cells.extend(row);
        }
        Ok(OpTable {
            size,
            cells,
            labels,
        })
    }

    pub(crate) fn from_cells(size: usize, cells: Vec<usize>, labels: Vec<String>) -> Self {
        debug_assert_eq!(cells.len(), size * size);
        debug_assert_eq!(labels.len(), size);
        OpTable {
            size,
            cells,
            labels,
        }
    }

    /// Table with default labels `e0, e1, ...` built from a product function.
    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let rows = (0..size)
            .map(|x| (0..size).map(|y| f(x, y)).collect())
            .collect();
        Self::new(rows, (0..size).map(|i| format!("e{i}")).collect())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.size + y]
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.cells[x * self.size..(x + 1) * self.size]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn position_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::invalid("label count does not match table size"));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn check_associative(&self) -> bool {
        self.associativity_failure().is_none()
    }

    /// First triple `(x, y, z)` with `(xy)z != x(yz)`, if any.
    pub fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// The set `X·X` of all products, sorted.
    pub fn products(&self) -> Vec<usize> {
        let mut hit = vec![false; self.size];
        for &v in &self.cells {
            hit[v] = true;
        }
        (0..self.size).filter(|&x| hit[x]).collect()
    }

    /// Whether `subset` is closed under the operation.
    pub fn is_closed(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.size];
        for &x in subset {
            if x >= self.size {
                return false;
            }
            member[x] = true;
        }
        subset
            .iter()
            .all(|&x| subset.iter().all(|&y| member[self.mul(x, y)]))
    }

    /// The subsemigroup on `subset` (in the given order) as a table of its own.
    pub fn restrict(&self, subset: &[usize]) -> Result<OpTable> {
        if subset.is_empty() {
            return Err(Error::invalid("cannot restrict to the empty set"));
        }
        let mut local = vec![usize::MAX; self.size];
        for (i, &x) in subset.iter().enumerate() {
            if x >= self.size || local[x] != usize::MAX {
                return Err(Error::invalid(
                    "restriction subset has repeated or bad elements",
                ));
            }
            local[x] = i;
        }
        let k = subset.len();
        let mut cells = Vec::with_capacity(k * k);
        for &x in subset {
            for &y in subset {
                let v = local[self.mul(x, y)];
                if v == usize::MAX {
                    return Err(Error::invalid(format!(
                        "subset not closed: {}·{} = {}",
                        self.labels[x],
                        self.labels[y],
                        self.labels[self.mul(x, y)]
                    )));
                }
                cells.push(v);
            }
        }
        let labels = subset.iter().map(|&x| self.labels[x].clone()).collect();
        Ok(OpTable::from_cells(k, cells, labels))
    }

    /// Whether `map` (indexed by this table's elements) is a homomorphism into
    /// `target`.
    pub fn is_homomorphism(&self, target: &OpTable, map: &[usize]) -> bool {
        map.len() == self.size
            && map.iter().all(|&v| v < target.size)
            && (0..self.size)
                .all(|x| (0..self.size).all(|y| map[self.mul(x, y)] == target.mul(map[x], map[y])))
    }

    /// Whether `perm` is a bijective homomorphism of this table onto itself.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        if perm.len() != self.size {
            return false;
        }
        let mut seen = vec![false; self.size];
        for &v in perm {
            if v >= self.size || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        self.is_homomorphism(self, perm)
    }

    pub fn to_json(&self) -> TableJson {
        TableJson {
            size: self.size,
            labels: self.labels.clone(),
            table: (0..self.size).map(|x| self.row(x).to_vec()).collect(),
        }
    }

    pub fn from_json(json: TableJson) -> Result<Self> {
        if json.table.len() != json.size {
            return Err(Error::Parse(format!(
                "size is {} but the table has {} rows",
                json.size,
                json.table.len()
            )));
        }
        Self::new(json.table, json.labels)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("table serialises")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let json: TableJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(json)
    }
}
