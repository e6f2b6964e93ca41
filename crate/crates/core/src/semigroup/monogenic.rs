use serde::{Deserialize, Serialize};

use super::OpTable;
use crate::error::{Error, Result};
use crate::setfam::MAX_GROUND;

/// The monogenic semigroup `M_{r,m}` generated by `a` with `a^(r+m) = a^r`:
/// `r` is the index, `m` the period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonogenicSpec {
    pub r: usize,
    pub m: usize,
}

impl MonogenicSpec {
    pub fn new(r: usize, m: usize) -> Result<Self> {
        if r == 0 || m == 0 {
            return Err(Error::invalid(format!(
                "index and period must be positive, got r={r}, m={m}"
            )));
        }
        Ok(MonogenicSpec { r, m })
    }

    pub fn size(self) -> usize {
        self.r + self.m - 1
    }

    /// Element index of the generator `a`.
    pub fn generator(self) -> usize {
        0
    }

    /// Element index of `a^e` for any `e >= 1`.
    pub fn power(self, e: usize) -> usize {
        assert!(e >= 1, "exponents start at 1");
        let top = self.size();
        let e = if e <= top {
            e
        } else {
            self.r + (e - self.r) % self.m
        };
        e - 1
    }

    /// All specs with `r + m - 1 == size`, ordered by increasing index.
    pub fn of_size(size: usize) -> Vec<MonogenicSpec> {
        (1..=size)
            .map(|r| MonogenicSpec { r, m: size + 1 - r })
            .collect()
    }

    pub fn name(self) -> String {
        format!("M_{{{},{}}}", self.r, self.m)
    }
}

/// Label of `a^e`: `a` for the generator, `a^e` otherwise.
pub fn power_label(e: usize) -> String {
    if e == 1 {
        "a".to_string()
    } else {
        format!("a^{e}")
    }
}

pub fn make_monogenic(spec: MonogenicSpec) -> Result<OpTable> {
    let spec = MonogenicSpec::new(spec.r, spec.m)?;
    let size = spec.size();
    if size > MAX_GROUND {
        return Err(Error::Capacity {
            what: "monogenic semigroup size",
            got: size,
            limit: MAX_GROUND,
        });
    }
    let mut cells = Vec::with_capacity(size * size);
    for i in 1..=size {
        for j in 1..=size {
            cells.push(spec.power(i + j));
        }
    }
    let labels = (1..=size).map(power_label).collect();
    Ok(OpTable::from_cells(size, cells, labels))
}

/// The maximal subgroup `C_m = {a^r, ..., a^(r+m-1)}` and its neutral element
/// `a^n`, `n` the multiple of `m` in `r..r+m`.
pub fn max_subgroup_of_monogenic(spec: MonogenicSpec) -> (Vec<usize>, usize) {
    let group: Vec<usize> = (spec.r..spec.r + spec.m).map(|e| e - 1).collect();
    let n = (spec.r..spec.r + spec.m)
        .find(|e| e % spec.m == 0)
        .expect("m consecutive integers contain a multiple of m");
    (group, n - 1)
}

/// If the table is monogenic, its spec and a generator.
///
/// A generator is an element whose powers exhaust the table; the spec is read
/// off from the first repeated power.
pub fn detect_monogenic(table: &OpTable) -> Option<(MonogenicSpec, usize)> {
    let n = table.size();
    (0..n).find_map(|g| {
        let mut seen = vec![0usize; n];
        let mut x = g;
        let mut e = 1;
        loop {
            if seen[x] != 0 {
                let r = seen[x];
                let m = e - r;
                return (e - 1 == n).then_some((MonogenicSpec { r, m }, g));
            }
            seen[x] = e;
            x = table.mul(x, g);
            e += 1;
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_relation_holds() {
        for size in 1..=6 {
            for spec in MonogenicSpec::of_size(size) {
                let t = make_monogenic(spec).unwrap();
                assert_eq!(t.size(), size);
                assert!(t.check_associative());
                // a^(r+m) = a^r computed by repeated multiplication
                let mut x = 0;
                for _ in 1..spec.r + spec.m {
                    x = t.mul(x, 0);
                }
                assert_eq!(x, spec.r - 1, "{}", spec.name());
                assert_eq!(detect_monogenic(&t).map(|d| d.0), Some(spec));
            }
        }
    }

    #[test]
    fn m23_wraps_a5_to_a2() {
        let spec = MonogenicSpec::new(2, 3).unwrap();
        let t = make_monogenic(spec).unwrap();
        assert_eq!(t.size(), 4);
        assert_eq!(t.mul(spec.power(1), spec.power(4)), spec.power(2));
        assert_eq!(t.label(3), "a^4");
        assert_eq!(max_subgroup_of_monogenic(spec), (vec![1, 2, 3], 2));
    }

    #[test]
    fn cyclic_and_other_subgroups() {
        let c4 = MonogenicSpec::new(1, 4).unwrap();
        assert_eq!(max_subgroup_of_monogenic(c4), (vec![0, 1, 2, 3], 3));
        let t = make_monogenic(c4).unwrap();
        assert!((0..4).all(|x| t.mul(3, x) == x));
        let m42 = MonogenicSpec::new(4, 2).unwrap();
        assert_eq!(max_subgroup_of_monogenic(m42), (vec![3, 4], 3));
    }

    #[test]
    fn capacity_and_bad_specs() {
        assert!(MonogenicSpec::new(0, 2).is_err());
        assert!(matches!(
            make_monogenic(MonogenicSpec { r: 10, m: 10 }),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn non_monogenic_is_not_detected() {
        let klein = OpTable::from_fn(4, |x, y| x ^ y).unwrap();
        assert!(detect_monogenic(&klein).is_none());
    }
}
