use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `0..degree` stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::invalid(format!("{images:?} is not a permutation")));
            }
            seen[v] = true;
        }
        Ok(Perm(images))
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..degree).collect();
        images.swap(a, b);
        Perm(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Composition applying `self` first: `self.then(q)(x) = q(self(x))`.
    pub fn then(&self, q: &Perm) -> Perm {
        Perm(self.0.iter().map(|&v| q.0[v]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v] = i;
        }
        Perm(inv)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(i, &v)| *i != v)
            .map(|(i, _)| i)
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        fn gcd(a: u64, b: u64) -> u64 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        let mut seen = vec![false; self.0.len()];
        let mut lcm = 1u64;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x];
                len += 1;
            }
            lcm = lcm / gcd(lcm, len) * len;
        }
        lcm
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x.to_string());
                x = self.0[x];
            }
            write!(f, "({})", cycle.join(" "))?;
            any = true;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// One level of a stabilizer chain: the basic orbit of `base` under the
/// strong generators fixing all earlier base points, with coset
/// representatives mapping `base` to each orbit point.
#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<usize>,
    orbit: Vec<usize>,
    reps: Vec<Option<(Perm, Perm)>>,
    checked: HashSet<(usize, usize)>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut reps = vec![None; degree];
        reps[base] = Some((Perm::identity(degree), Perm::identity(degree)));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            reps,
            checked: HashSet::new(),
        }
    }

    fn rep(&self, point: usize) -> Option<&(Perm, Perm)> {
        self.reps[point].as_ref()
    }

    fn extend_orbit(&mut self, strong: &[Perm]) {
        let mut queue: VecDeque<usize> = self.orbit.iter().copied().collect();
        while let Some(p) = queue.pop_front() {
            for &g in &self.gens {
                let q = strong[g].apply(p);
                if self.reps[q].is_none() {
                    let rep = self.reps[p]
                        .as_ref()
                        .expect("orbit point has rep")
                        .0
                        .then(&strong[g]);
                    let inv = rep.inverse();
                    self.reps[q] = Some((rep, inv));
                    self.orbit.push(q);
                    queue.push_back(q);
                }
            }
        }
    }
}

/// Deterministic Schreier–Sims stabilizer chain.
#[derive(Clone, Debug)]
struct Chain {
    degree: usize,
    strong: Vec<Perm>,
    levels: Vec<Level>,
}

impl Chain {
    fn build(degree: usize, gens: &[Perm], base_prefix: &[usize]) -> Chain {
        let mut chain = Chain {
            degree,
            strong: Vec::new(),
            levels: base_prefix.iter().map(|&b| Level::new(b, degree)).collect(),
        };
        for g in gens.iter().filter(|g| !g.is_identity()) {
            let depth = chain
                .levels
                .iter()
                .position(|l| g.apply(l.base) != l.base)
                .unwrap_or(chain.levels.len());
            chain.insert_strong(g.clone(), depth);
        }
        let mut i = chain.levels.len();
        while i > 0 {
            match chain.failing_schreier_generator(i - 1) {
                Some((h, j)) => {
                    chain.insert_strong(h, j);
                    i = j + 1;
                }
                None => i -= 1,
            }
        }
        chain
    }

    /// Adds `h`, which fixes the base points of levels `< depth`, to the
    /// generators of levels `0..=depth`.
    fn insert_strong(&mut self, h: Perm, depth: usize) {
        if depth == self.levels.len() {
            let b = h.first_moved().expect("non-identity strong generator");
            self.levels.push(Level::new(b, self.degree));
        }
        let idx = self.strong.len();
        self.strong.push(h);
        for level in &mut self.levels[..=depth] {
            level.gens.push(idx);
            level.extend_orbit(&self.strong);
        }
    }

    /// Sifts `g` through levels `from..`; returns the residue and the level
    /// where it got stuck (`levels.len()` if it passed every level).
    fn strip(&self, mut g: Perm, from: usize) -> (Perm, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let beta = g.apply(level.base);
            match level.rep(beta) {
                Some((_, inv)) => g = g.then(inv),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    fn failing_schreier_generator(&mut self, i: usize) -> Option<(Perm, usize)> {
        let level = &self.levels[i];
        let mut pending = Vec::new();
        for (oi, &beta) in level.orbit.iter().enumerate() {
            for &g in &level.gens {
                if !level.checked.contains(&(oi, g)) {
                    pending.push((oi, beta, g));
                }
            }
        }
        for (oi, beta, g) in pending {
            self.levels[i].checked.insert((oi, g));
            let level = &self.levels[i];
            let x = &self.strong[g];
            let image = x.apply(beta);
            let (u, _) = level.rep(beta).expect("orbit point");
            let (_, v_inv) = level.rep(image).expect("orbit is closed");
            let s = u.then(x).then(v_inv);
            let (h, j) = self.strip(s, i + 1);
            if j < self.levels.len() || !h.is_identity() {
                return Some((h, j));
            }
        }
        None
    }

    fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    fn contains(&self, g: &Perm) -> bool {
        let (h, j) = self.strip(g.clone(), 0);
        j == self.levels.len() && h.is_identity()
    }
}

/// A permutation group given by generators, with a stabilizer chain for exact
/// order and membership.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: Chain,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::with_base(degree, generators, &[])
    }

    /// Like [`PermGroup::new`] but with the chain's base starting with
    /// `base_prefix`.
    pub fn with_base(degree: usize, generators: Vec<Perm>, base_prefix: &[usize]) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::invalid(format!(
                "generator of degree {} in a group of degree {degree}",
                g.degree()
            )));
        }
        if base_prefix.iter().any(|&b| b >= degree) {
            return Err(Error::invalid("base point outside the domain"));
        }
        let mut seen = HashSet::new();
        if !base_prefix.iter().all(|b| seen.insert(*b)) {
            return Err(Error::invalid("repeated base point"));
        }
        let chain = Chain::build(degree, &generators, base_prefix);
        Ok(PermGroup {
            degree,
            generators,
            chain,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.chain.levels.iter().all(|l| l.orbit.len() == 1)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        g.degree() == self.degree && self.chain.contains(g)
    }

    /// Base points and basic orbit lengths of the chain.
    pub fn base_and_orbit_lengths(&self) -> Vec<(usize, usize)> {
        self.chain
            .levels
            .iter()
            .map(|l| (l.base, l.orbit.len()))
            .collect()
    }

    /// A uniformly random element, as a product of random coset
    /// representatives down the chain.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for level in self.chain.levels.iter().rev() {
            let beta = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.then(&level.rep(beta).expect("orbit point").0);
        }
        g
    }

    /// The orbit partition of the natural action, each orbit sorted, orbits
    /// ordered by their least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    /// The action on an invariant subset, relabelled to `0..subset.len()` in
    /// the given order.
    pub fn restrict(&self, subset: &[usize]) -> Result<PermGroup> {
        let gens = restrict_generators(self.degree, &self.generators, subset)?;
        PermGroup::new(subset.len(), gens)
    }

    /// The subgroup fixing every point of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> Result<PermGroup> {
        let rebased = PermGroup::with_base(self.degree, self.generators.clone(), points)?;
        let k = points.len();
        let gens: Vec<Perm> = match rebased.chain.levels.get(k) {
            Some(level) => level
                .gens
                .iter()
                .map(|&g| rebased.chain.strong[g].clone())
                .collect(),
            None => Vec::new(),
        };
        debug_assert!(gens.iter().all(|g| points.iter().all(|&p| g.apply(p) == p)));
        PermGroup::new(self.degree, gens)
    }

    /// All elements, if the group has at most `limit` of them.
    pub fn elements(&self, limit: usize) -> Option<Vec<Perm>> {
        if self.order() > BigUint::from(limit) {
            return None;
        }
        let id = Perm::identity(self.degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        let mut out = Vec::new();
        while let Some(g) = queue.pop_front() {
            for s in &self.generators {
                let h = g.then(s);
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
            out.push(g);
        }
        out.sort();
        Some(out)
    }
}

pub(crate) fn orbits_of(degree: usize, generators: &[Perm]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in generators {
        for x in 0..degree {
            let (a, b) = (find(&mut parent, x), find(&mut parent, g.apply(x)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; degree];
    for x in 0..degree {
        let root = find(&mut parent, x);
        if slot[root] == usize::MAX {
            slot[root] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[root]].push(x);
    }
    classes
}

pub(crate) fn restrict_generators(
    degree: usize,
    generators: &[Perm],
    subset: &[usize],
) -> Result<Vec<Perm>> {
    let mut local = vec![usize::MAX; degree];
    for (i, &x) in subset.iter().enumerate() {
        if x >= degree || local[x] != usize::MAX {
            return Err(Error::invalid("bad restriction subset"));
        }
        local[x] = i;
    }
    generators
        .iter()
        .map(|g| {
            subset
                .iter()
                .map(|&x| match local[g.apply(x)] {
                    usize::MAX => Err(Error::invalid("subset is not invariant under the group")),
                    v => Ok(v),
                })
                .collect::<Result<Vec<_>>>()
                .map(Perm)
        })
        .collect()
}
