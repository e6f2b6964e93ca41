//! Automorphism and isomorphism search by colour refinement and backtracking.
//!
//! Elements are coloured by isomorphism-invariant data and the colouring is
//! refined against the ternary relation `x·y = z` (and any attached unary
//! maps) until it stops splitting. Colours are 64-bit hashes that depend only
//! on invariant data, so colourings of two different structures can be
//! compared value by value.
//!
//! The search fixes a "left path" by individualising the least element of the
//! smallest non-singleton cell until the colouring is discrete. Levels are
//! then processed deepest first: for every cell member not yet in the orbit of
//! the automorphisms found so far, a depth-first search looks for an
//! automorphism fixing the earlier base points and sending the base point to
//! it. Found automorphisms prune later candidates through their orbits.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;

use super::ideals::{ideal_chain, ideal_depth, idempotents};
use super::perm::{orbits_of, Perm, PermGroup};
use super::OpTable;
use crate::error::{Error, Result};

/// Limits for a single search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of refinement nodes before giving up.
    pub budget: u64,
    /// Largest table the search accepts.
    pub max_size: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 100_000_000,
            max_size: 100,
        }
    }
}

/// A table with optional unary maps and element colours that automorphisms
/// must respect: `φ(σ(x)) = σ(φ(x))` for each map and `c(φ(x)) = c(x)` for
/// the colours.
#[derive(Clone, Debug)]
pub struct Structure<'a> {
    table: &'a OpTable,
    maps: Vec<Vec<usize>>,
    colors: Vec<u64>,
}

impl<'a> Structure<'a> {
    pub fn new(table: &'a OpTable) -> Self {
        Structure {
            table,
            maps: Vec::new(),
            colors: vec![0; table.size()],
        }
    }

    pub fn with_map(mut self, map: Vec<usize>) -> Result<Self> {
        let n = self.table.size();
        if map.len() != n || map.iter().any(|&v| v >= n) {
            return Err(Error::invalid("unary map must be total on the table"));
        }
        self.maps.push(map);
        Ok(self)
    }

    /// Mixes `colors` into the existing element colours.
    pub fn with_colors(mut self, colors: &[u64]) -> Result<Self> {
        if colors.len() != self.table.size() {
            return Err(Error::invalid("one colour per element required"));
        }
        for (c, &extra) in self.colors.iter_mut().zip(colors) {
            *c = mix(*c ^ mix(extra.wrapping_add(0x51_7c_c1_b7)));
        }
        Ok(self)
    }

    pub fn table(&self) -> &OpTable {
        self.table
    }

    fn size(&self) -> usize {
        self.table.size()
    }

    fn initial_colors(&self) -> Vec<u64> {
        let n = self.size();
        let mut idem = vec![false; n];
        for e in idempotents(self.table) {
            idem[e] = true;
        }
        let depth = ideal_depth(self.table);
        (0..n)
            .map(|x| hash3(1 + idem[x] as u64, depth[x] as u64, self.colors[x]))
            .collect()
    }

    /// Refines `colors` in place until the number of cells stops growing.
    fn refine(&self, colors: &mut Vec<u64>) {
        let n = self.size();
        let mut cells = count_cells(colors);
        let mut row = vec![0u64; n];
        let mut col = vec![0u64; n];
        let mut fact = vec![0u64; n];
        let mut pre = vec![0u64; n];
        loop {
            row.fill(0);
            col.fill(0);
            fact.fill(0);
            for x in 0..n {
                let cx = colors[x];
                for (y, &z) in self.table.row(x).iter().enumerate() {
                    let (cy, cz) = (colors[y], colors[z]);
                    row[x] = row[x].wrapping_add(hash3(11, cy, cz));
                    col[y] = col[y].wrapping_add(hash3(12, cx, cz));
                    fact[z] = fact[z].wrapping_add(hash3(13, cx, cy));
                }
            }
            let mut next: Vec<u64> = (0..n)
                .map(|x| hash3(colors[x], row[x], hash3(col[x], fact[x], 0)))
                .collect();
            for (k, map) in self.maps.iter().enumerate() {
                pre.fill(0);
                for (y, &t) in map.iter().enumerate() {
                    pre[t] = pre[t].wrapping_add(hash3(21, k as u64, colors[y]));
                }
                for x in 0..n {
                    next[x] = hash3(next[x], colors[map[x]], pre[x]);
                }
            }
            let next_cells = count_cells(&next);
            if next_cells == cells {
                return;
            }
            cells = next_cells;
            *colors = next;
        }
    }

    /// Whether `map` (from this structure to `other`) preserves the table,
    /// the unary maps and the colours.
    fn is_iso_to(&self, other: &Structure<'_>, map: &[usize]) -> bool {
        self.colors
            .iter()
            .enumerate()
            .all(|(x, &c)| other.colors[map[x]] == c)
            && self
                .maps
                .iter()
                .zip(&other.maps)
                .all(|(s, t)| (0..self.size()).all(|x| map[s[x]] == t[map[x]]))
            && self.table.is_homomorphism(other.table, map)
    }
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn hash3(a: u64, b: u64, c: u64) -> u64 {
    mix(mix(mix(a) ^ b) ^ c)
}

fn count_cells(colors: &[u64]) -> usize {
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

fn sorted(colors: &[u64]) -> Vec<u64> {
    let mut v = colors.to_vec();
    v.sort_unstable();
    v
}

fn individualize(s: &Structure<'_>, colors: &[u64], x: usize, depth: usize) -> Vec<u64> {
    let mut next = colors.to_vec();
    next[x] = hash3(next[x], 0xd1_5c_0f, depth as u64);
    s.refine(&mut next);
    next
}

/// The refinement path of the left structure down to a discrete colouring.
struct LeftPath {
    base: Vec<usize>,
    /// `colors[d]` is the colouring with `base[..d]` individualised.
    colors: Vec<Vec<u64>>,
    sorted: Vec<Vec<u64>>,
}

impl LeftPath {
    fn build(s: &Structure<'_>) -> LeftPath {
        let mut colors = s.initial_colors();
        s.refine(&mut colors);
        let mut path = LeftPath {
            base: Vec::new(),
            colors: Vec::new(),
            sorted: Vec::new(),
        };
        loop {
            let target = target_cell_point(&colors);
            path.sorted.push(sorted(&colors));
            path.colors.push(colors.clone());
            let Some(b) = target else { return path };
            let d = path.base.len();
            colors = individualize(s, &colors, b, d);
            path.base.push(b);
        }
    }

    fn depth(&self) -> usize {
        self.base.len()
    }
}

/// Least element of the smallest non-singleton cell (ties broken by least
/// element), or `None` when the colouring is discrete.
fn target_cell_point(colors: &[u64]) -> Option<usize> {
    let mut first: HashMap<u64, (usize, usize)> = HashMap::new();
    for (x, &c) in colors.iter().enumerate() {
        first.entry(c).and_modify(|e| e.1 += 1).or_insert((x, 1));
    }
    first
        .values()
        .filter(|&&(_, size)| size > 1)
        .min_by_key(|&&(x, size)| (size, x))
        .map(|&(x, _)| x)
}

/// Depth-first matcher from a fixed left path onto a right structure.
struct Matcher<'p, 's> {
    left: &'s Structure<'s>,
    right: &'s Structure<'s>,
    path: &'p LeftPath,
    opts: SearchOptions,
    nodes: u64,
    level: usize,
}

impl Matcher<'_, '_> {
    fn tick(&mut self, generators: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.opts.budget {
            return Err(Error::Budget {
                budget: self.opts.budget,
                level: self.level,
                generators,
            });
        }
        Ok(())
    }

    /// Extends `rseq` (right images of `base[..d]`) to a full isomorphism.
    fn dfs(
        &mut self,
        d: usize,
        colors: &[u64],
        rseq: &mut Vec<usize>,
        known: &[Perm],
    ) -> Result<Option<Vec<usize>>> {
        self.tick(known.len())?;
        let path = self.path;
        if d == path.depth() {
            let by_color: HashMap<u64, usize> =
                colors.iter().enumerate().map(|(y, &c)| (c, y)).collect();
            let map: Option<Vec<usize>> = path.colors[d]
                .iter()
                .map(|c| by_color.get(c).copied())
                .collect();
            return Ok(map.filter(|m| self.left.is_iso_to(self.right, m)));
        }
        let b = path.base[d];
        let target = path.colors[d][b];
        let mut cands: Vec<usize> = (0..colors.len()).filter(|&y| colors[y] == target).collect();
        if let Some(pos) = cands.iter().position(|&y| y == b) {
            cands[..=pos].rotate_right(1);
        }
        let fixing: Vec<Perm> = known
            .iter()
            .filter(|g| rseq.iter().all(|&p| g.apply(p) == p))
            .cloned()
            .collect();
        let orbit_id = orbit_labels(colors.len(), &fixing);
        let mut tried: Vec<usize> = Vec::new();
        for y in cands {
            if tried.contains(&orbit_id[y]) {
                continue;
            }
            tried.push(orbit_id[y]);
            let next = individualize(self.right, colors, y, d);
            if sorted(&next) != path.sorted[d + 1] {
                continue;
            }
            rseq.push(y);
            let found = self.dfs(d + 1, &next, rseq, known)?;
            rseq.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

fn orbit_labels(degree: usize, gens: &[Perm]) -> Vec<usize> {
    let mut label = vec![0; degree];
    for (i, orbit) in orbits_of(degree, gens).iter().enumerate() {
        for &x in orbit {
            label[x] = i;
        }
    }
    label
}

fn check_size(size: usize, opts: &SearchOptions) -> Result<()> {
    if size > opts.max_size {
        return Err(Error::Capacity {
            what: "table size for automorphism search",
            got: size,
            limit: opts.max_size,
        });
    }
    Ok(())
}

/// Result of an automorphism search.
#[derive(Clone, Debug)]
pub struct AutSearch {
    pub group: PermGroup,
    /// The individualisation sequence used as the chain's base.
    pub base: Vec<usize>,
    /// Orbit length of each base point under the automorphisms fixing the
    /// earlier base points; their product is the group order.
    pub orbit_lengths: Vec<usize>,
    pub nodes: u64,
}

impl AutSearch {
    pub fn order(&self) -> BigUint {
        self.group.order()
    }
}

pub fn automorphisms(table: &OpTable) -> Result<PermGroup> {
    automorphisms_with(&Structure::new(table), &SearchOptions::default()).map(|a| a.group)
}

pub fn automorphisms_with(s: &Structure<'_>, opts: &SearchOptions) -> Result<AutSearch> {
    let n = s.size();
    check_size(n, opts)?;
    let path = LeftPath::build(s);
    let mut m = Matcher {
        left: s,
        right: s,
        path: &path,
        opts: *opts,
        nodes: 0,
        level: 0,
    };
    let mut gens: Vec<Perm> = Vec::new();
    let mut orbit_lengths = vec![1; path.depth()];
    for i in (0..path.depth()).rev() {
        m.level = i;
        let b = path.base[i];
        let colors = &path.colors[i];
        let cell: Vec<usize> = (0..n).filter(|&y| colors[y] == colors[b]).collect();
        for &c in &cell {
            let fixing: Vec<Perm> = gens
                .iter()
                .filter(|g| path.base[..i].iter().all(|&p| g.apply(p) == p))
                .cloned()
                .collect();
            let label = orbit_labels(n, &fixing);
            if label[c] == label[b] {
                continue;
            }
            m.tick(gens.len())?;
            let next = individualize(s, colors, c, i);
            if sorted(&next) != path.sorted[i + 1] {
                continue;
            }
            let mut rseq: Vec<usize> = path.base[..i].to_vec();
            rseq.push(c);
            if let Some(map) = m.dfs(i + 1, &next, &mut rseq, &gens)? {
                gens.push(Perm::from_images(map)?);
            }
        }
        let fixing: Vec<Perm> = gens
            .iter()
            .filter(|g| path.base[..i].iter().all(|&p| g.apply(p) == p))
            .cloned()
            .collect();
        let label = orbit_labels(n, &fixing);
        orbit_lengths[i] = cell.iter().filter(|&&y| label[y] == label[b]).count();
    }
    let group = PermGroup::with_base(n, gens, &path.base)?;
    debug_assert_eq!(
        group.order(),
        orbit_lengths
            .iter()
            .fold(BigUint::from(1u32), |acc, &k| acc * BigUint::from(k))
    );
    Ok(AutSearch {
        group,
        base: path.base.clone(),
        orbit_lengths,
        nodes: m.nodes,
    })
}

/// Why two structures are not isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distinction {
    Size(usize, usize),
    IdempotentCount(usize, usize),
    IdealChain(Vec<usize>, Vec<usize>),
    RefinementSignature,
    /// Invariants agree but the exhaustive search found no isomorphism.
    SearchExhausted,
}

impl fmt::Display for Distinction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distinction::Size(a, b) => write!(f, "sizes differ: {a} vs {b}"),
            Distinction::IdempotentCount(a, b) => {
                write!(f, "idempotent counts differ: {a} vs {b}")
            }
            Distinction::IdealChain(a, b) => {
                write!(f, "ideal chain profiles differ: {a:?} vs {b:?}")
            }
            Distinction::RefinementSignature => {
                write!(f, "colour refinement signatures differ")
            }
            Distinction::SearchExhausted => write!(f, "no isomorphism exists (exhaustive search)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isomorphism {
    /// `witness[x]` is the image of element `x` of the first table.
    Isomorphic(Vec<usize>),
    NotIsomorphic(Distinction),
}

pub fn isomorphic(a: &OpTable, b: &OpTable) -> Result<Isomorphism> {
    isomorphic_with(
        &Structure::new(a),
        &Structure::new(b),
        &SearchOptions::default(),
    )
}

pub fn isomorphic_with(
    a: &Structure<'_>,
    b: &Structure<'_>,
    opts: &SearchOptions,
) -> Result<Isomorphism> {
    use Isomorphism::NotIsomorphic;
    let (ta, tb) = (a.table(), b.table());
    if ta.size() != tb.size() {
        return Ok(NotIsomorphic(Distinction::Size(ta.size(), tb.size())));
    }
    check_size(ta.size(), opts)?;
    let (ia, ib) = (idempotents(ta).len(), idempotents(tb).len());
    if ia != ib {
        return Ok(NotIsomorphic(Distinction::IdempotentCount(ia, ib)));
    }
    let profile = |t: &OpTable| ideal_chain(t).iter().map(Vec::len).collect::<Vec<_>>();
    let (pa, pb) = (profile(ta), profile(tb));
    if pa != pb {
        return Ok(NotIsomorphic(Distinction::IdealChain(pa, pb)));
    }
    if a.maps.len() != b.maps.len() {
        return Err(Error::invalid("structures carry different numbers of maps"));
    }
    let path = LeftPath::build(a);
    let mut right = b.initial_colors();
    b.refine(&mut right);
    if sorted(&right) != path.sorted[0] {
        return Ok(NotIsomorphic(Distinction::RefinementSignature));
    }
    let aut_b = automorphisms_with(b, opts)?;
    let mut m = Matcher {
        left: a,
        right: b,
        path: &path,
        opts: *opts,
        nodes: aut_b.nodes,
        level: 0,
    };
    let found = m.dfs(0, &right, &mut Vec::new(), aut_b.group.generators())?;
    Ok(match found {
        Some(w) => Isomorphism::Isomorphic(w),
        None => NotIsomorphic(Distinction::SearchExhausted),
    })
}
