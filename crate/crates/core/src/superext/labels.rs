//! Names for the elements of `λ(S)` with `|S| <= 5`.
//!
//! Points are numbered `1..=n` (point `i` is base element `i - 1`, i.e. `a^i`
//! for a monogenic base). Rendering, with `M` the ground set:
//!
//! | name          | rendered    | minimal sets                                     |
//! |---------------|-------------|--------------------------------------------------|
//! | principal     | base label  | `{i}`                                            |
//! | △ (n = 3)     | `Tri`       | all 2-subsets                                    |
//! | △_i (n = 4)   | `Tri_i`     | 2-subsets of `M \ {i}`                           |
//! | □_i (n = 4)   | `Sq_i`      | `M \ {i}` and `{i, x}` for `x != i`              |
//! | ○ (n = 5)     | `O`         | all 3-subsets                                    |
//! | Θ_ij          | `T_ij`      | `{i, j}` and 3-sets meeting `{i, j}` once        |
//! | △_ijk         | `Tri_ijk`   | 2-subsets of `{i, j, k}`                         |
//! | Λ^i           | `L^i`       | `M \ {i}` and `{i, x}` for `x != i`              |
//! | ◇^n_ijk       | `D^n_ijk`   | `{n,i}, {n,j}, {n,k}, {i,j,k}`                   |
//! | Λ^i_jk        | `L^i_jk`    | `{i,j}, {i,k}, {i,p,q}, {j,k,p}, {j,k,q}`        |
//!
//! Subscripts are written in increasing order; `{p, q}` is the complement of
//! `{i, j, k}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::setfam::{minimize, FamilyUniverse, GroundSet, SubsetCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PaperLabel {
    Principal(usize),
    Triangle,
    TriangleWithout(usize),
    Square(usize),
    Circle,
    Theta(usize, usize),
    TriangleOn(usize, usize, usize),
    Lambda(usize),
    Diamond(usize, usize, usize, usize),
    LambdaPair(usize, usize, usize),
}

impl PaperLabel {
    /// ASCII rendering; principal elements take the base element's label.
    pub fn render(&self, base_labels: &[String]) -> String {
        use PaperLabel::*;
        match *self {
            Principal(i) => base_labels[i - 1].clone(),
            Triangle => "Tri".into(),
            TriangleWithout(i) => format!("Tri_{i}"),
            Square(i) => format!("Sq_{i}"),
            Circle => "O".into(),
            Theta(i, j) => format!("T_{i}{j}"),
            TriangleOn(i, j, k) => format!("Tri_{i}{j}{k}"),
            Lambda(i) => format!("L^{i}"),
            Diamond(n, i, j, k) => format!("D^{n}_{i}{j}{k}"),
            LambdaPair(i, j, k) => format!("L^{i}_{j}{k}"),
        }
    }

    /// Inverse of [`PaperLabel::render`].
    pub fn parse(text: &str, base_labels: &[String]) -> Result<Self> {
        use PaperLabel::*;
        if let Some(i) = base_labels.iter().position(|l| l == text) {
            return Ok(Principal(i + 1));
        }
        let digits = |s: &str| -> Option<Vec<usize>> {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect()
        };
        let bad = || Error::Parse(format!("unknown element name {text:?}"));
        let parsed = match text {
            "Tri" => Some(Triangle),
            "O" => Some(Circle),
            _ => {
                if let Some(rest) = text.strip_prefix("Tri_") {
                    match digits(rest).ok_or_else(bad)?.as_slice() {
                        [i] => Some(TriangleWithout(*i)),
                        [i, j, k] => Some(TriangleOn(*i, *j, *k)),
                        _ => None,
                    }
                } else if let Some(rest) = text.strip_prefix("Sq_") {
                    match digits(rest).ok_or_else(bad)?.as_slice() {
                        [i] => Some(Square(*i)),
                        _ => None,
                    }
                } else if let Some(rest) = text.strip_prefix("T_") {
                    match digits(rest).ok_or_else(bad)?.as_slice() {
                        [i, j] => Some(Theta(*i, *j)),
                        _ => None,
                    }
                } else if let Some(rest) = text.strip_prefix("D^") {
                    let (n, sub) = rest.split_once('_').ok_or_else(bad)?;
                    match (
                        digits(n).ok_or_else(bad)?.as_slice(),
                        digits(sub).ok_or_else(bad)?.as_slice(),
                    ) {
                        ([n], [i, j, k]) => Some(Diamond(*n, *i, *j, *k)),
                        _ => None,
                    }
                } else if let Some(rest) = text.strip_prefix("L^") {
                    match rest.split_once('_') {
                        None => match digits(rest).ok_or_else(bad)?.as_slice() {
                            [i] => Some(Lambda(*i)),
                            _ => None,
                        },
                        Some((i, sub)) => {
                            match (
                                digits(i).ok_or_else(bad)?.as_slice(),
                                digits(sub).ok_or_else(bad)?.as_slice(),
                            ) {
                                ([i], [j, k]) => Some(LambdaPair(*i, *j, *k)),
                                _ => None,
                            }
                        }
                    }
                } else {
                    None
                }
            }
        };
        parsed.ok_or_else(bad)
    }

    /// Minimal sets of the family this label names on `n` points, or `None`
    /// when the label does not apply to `n` points.
    pub fn minimal_sets(&self, n: usize) -> Option<Vec<SubsetCode>> {
        use PaperLabel::*;
        let pt = |i: usize| SubsetCode::singleton(i - 1);
        let set = |pts: &[usize]| SubsetCode::from_points(pts.iter().map(|p| p - 1));
        let all: Vec<usize> = (1..=n).collect();
        let without = |i: usize| set(&all.iter().copied().filter(|&x| x != i).collect::<Vec<_>>());
        let pairs_of = |pts: &[usize]| -> Vec<SubsetCode> {
            let mut out = Vec::new();
            for a in 0..pts.len() {
                for b in a + 1..pts.len() {
                    out.push(set(&[pts[a], pts[b]]));
                }
            }
            out
        };
        let in_range = |xs: &[usize]| xs.iter().all(|&x| (1..=n).contains(&x));
        let distinct = |xs: &[usize]| {
            let mut v = xs.to_vec();
            v.sort_unstable();
            v.dedup();
            v.len() == xs.len()
        };
        let increasing = |xs: &[usize]| xs.windows(2).all(|w| w[0] < w[1]);
        let sets = match *self {
            Principal(i) if in_range(&[i]) => vec![pt(i)],
            Triangle if n == 3 => pairs_of(&all),
            TriangleWithout(i) if n == 4 && in_range(&[i]) => {
                pairs_of(&all.iter().copied().filter(|&x| x != i).collect::<Vec<_>>())
            }
            Square(i) if n == 4 && in_range(&[i]) => {
                let mut v = vec![without(i)];
                v.extend(all.iter().filter(|&&x| x != i).map(|&x| set(&[i, x])));
                v
            }
            Circle if n == 5 => triples(&all).into_iter().map(|t| set(&t)).collect(),
            Theta(i, j) if n == 5 && in_range(&[i, j]) && increasing(&[i, j]) => {
                let mut v = vec![set(&[i, j])];
                for t in triples(&all) {
                    let hits = t.iter().filter(|&&x| x == i || x == j).count();
                    if hits == 1 {
                        v.push(set(&t));
                    }
                }
                v
            }
            TriangleOn(i, j, k) if n == 5 && in_range(&[i, j, k]) && increasing(&[i, j, k]) => {
                pairs_of(&[i, j, k])
            }
            Lambda(i) if n == 5 && in_range(&[i]) => {
                let mut v = vec![without(i)];
                v.extend(all.iter().filter(|&&x| x != i).map(|&x| set(&[i, x])));
                v
            }
            Diamond(c, i, j, k)
                if n == 5
                    && in_range(&[c, i, j, k])
                    && increasing(&[i, j, k])
                    && distinct(&[c, i, j, k]) =>
            {
                vec![set(&[c, i]), set(&[c, j]), set(&[c, k]), set(&[i, j, k])]
            }
            LambdaPair(i, j, k)
                if n == 5 && in_range(&[i, j, k]) && j < k && distinct(&[i, j, k]) =>
            {
                let rest: Vec<usize> = all
                    .iter()
                    .copied()
                    .filter(|x| ![i, j, k].contains(x))
                    .collect();
                let (p, q) = (rest[0], rest[1]);
                vec![
                    set(&[i, j]),
                    set(&[i, k]),
                    set(&[i, p, q]),
                    set(&[j, k, p]),
                    set(&[j, k, q]),
                ]
            }
            _ => return None,
        };
        Some(sets)
    }
}

fn triples(pts: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 0..pts.len() {
        for b in a + 1..pts.len() {
            for c in b + 1..pts.len() {
                out.push(vec![pts[a], pts[b], pts[c]]);
            }
        }
    }
    out
}

impl fmt::Display for PaperLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let defaults: Vec<String> = (1..=9).map(|i| format!("a^{i}")).collect();
        f.write_str(&self.render(&defaults))
    }
}

/// Every label defined for an `n`-point ground set.
pub fn all_labels(n: usize) -> Vec<PaperLabel> {
    use PaperLabel::*;
    let mut out: Vec<PaperLabel> = (1..=n).map(Principal).collect();
    match n {
        3 => out.push(Triangle),
        4 => {
            out.extend((1..=4).map(TriangleWithout));
            out.extend((1..=4).map(Square));
        }
        5 => {
            let all: Vec<usize> = (1..=5).collect();
            out.push(Circle);
            for i in 1..=5 {
                for j in i + 1..=5 {
                    out.push(Theta(i, j));
                }
            }
            out.extend(triples(&all).iter().map(|t| TriangleOn(t[0], t[1], t[2])));
            out.extend((1..=5).map(Lambda));
            for c in 1..=5 {
                let rest: Vec<usize> = all.iter().copied().filter(|&x| x != c).collect();
                out.extend(triples(&rest).iter().map(|t| Diamond(c, t[0], t[1], t[2])));
            }
            for i in 1..=5 {
                for j in 1..=5 {
                    for k in j + 1..=5 {
                        if i != j && i != k {
                            out.push(LambdaPair(i, j, k));
                        }
                    }
                }
            }
        }
        _ => {}
    }
    out
}

/// Label of every element of the universe, indexed like the universe.
///
/// Fails unless the labels cover the universe bijectively, which holds
/// exactly for ground sets of 1 to 5 points.
pub fn paper_labels(universe: &FamilyUniverse, base_labels: &[String]) -> Result<Vec<PaperLabel>> {
    let n = universe.ground().len();
    if n > 5 || base_labels.len() != n {
        return Err(Error::invalid(format!(
            "element names are defined for bases of 1 to 5 elements, not {n}"
        )));
    }
    let ground = GroundSet::new(n)?;
    let mut out: Vec<Option<PaperLabel>> = vec![None; universe.len()];
    for label in all_labels(n) {
        let sets = label.minimal_sets(n).expect("label defined for n");
        let family = minimize(&sets, &ground)?;
        let pos = universe.position(&family).ok_or_else(|| {
            Error::invalid(format!("{label} does not name a maximal linked family"))
        })?;
        if out[pos].replace(label).is_some() {
            return Err(Error::invalid(format!("two names for element {pos}")));
        }
    }
    out.into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::invalid("some elements have no name"))
}
