//! Permutations and permutation groups.
//!
//! Points are `0..n`. A permutation acts on the right: `g.apply(x)` is the
//! image of `x`, and `g.then(h)` is "first g, then h".
//!
//! Group order and stabilizers come from a deterministic Schreier–Sims
//! stabilizer chain. Base points are chosen as the smallest point moved by
//! the generator that forces a new level, so identical generator lists always
//! produce identical chains.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use num_integer::Integer;
use thiserror::Error;

/// Degree bound for stabilizer-chain computations.
pub const MAX_DEGREE: usize = 10_000;
/// Bound on the number of k-subsets an orbit enumeration may visit.
pub const MAX_SUBSETS: u64 = 10_000_000;
/// Largest t accepted by the transitivity and homogeneity tests.
pub const MAX_T: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("image list is not a permutation of 0..{0}")]
    NotBijection(usize),
    #[error("permutation degree {found} does not match expected degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("degree {0} exceeds the limit of {MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("C({n},{k}) exceeds the subset enumeration limit of {MAX_SUBSETS}")]
    TooManySubsets { n: usize, k: usize },
    #[error("t = {0} exceeds the limit of {MAX_T}")]
    TupleTooLarge(usize),
    #[error("subset must be nonempty with distinct points")]
    BadSubset,
    #[error("cannot parse permutation {0:?}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(PermError::NotBijection(n));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from a point map; the caller guarantees bijectivity.
    pub(crate) fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Self {
        let p = Permutation {
            images: (0..n).map(|i| f(i) as u32).collect(),
        };
        debug_assert!(Self::from_images(p.images.clone()).is_ok());
        p
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)` or `(0,1)`; `()` is the identity.
    pub fn from_cycles(n: usize, text: &str) -> Result<Self, PermError> {
        let bad = || PermError::Parse(text.to_string());
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut seen = vec![false; n];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = open.find(')').ok_or_else(bad)?;
            let body = &open[..close];
            rest = open[close + 1..].trim_start();
            let cycle: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            for (i, &a) in cycle.iter().enumerate() {
                if a >= n {
                    return Err(PermError::PointOutOfRange {
                        point: a,
                        degree: n,
                    });
                }
                if seen[a] {
                    return Err(bad());
                }
                seen[a] = true;
                images[a] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    /// First `self`, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn fixed_point_count(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &j)| i as u32 == j)
            .count()
    }

    pub fn fixed_points(&self) -> Vec<u32> {
        (0..self.degree() as u32)
            .filter(|&i| self.apply(i) == i)
            .collect()
    }

    pub fn support(&self) -> Vec<u32> {
        (0..self.degree() as u32)
            .filter(|&i| self.apply(i) != i)
            .collect()
    }

    /// Order of the cyclic group generated by this permutation.
    pub fn order(&self) -> u64 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut order = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            order = order.lcm(&len);
        }
        order
    }

    /// Image of a point set, sorted ascending.
    pub fn image_of_set(&self, set: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = set.iter().map(|&x| self.apply(x)).collect();
        out.sort_unstable();
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

/// Parses a generator file: one permutation per line, either as an image
/// list (`0 2 1 3`) or in cycle notation. Blank lines and `#` comments are
/// skipped. Cycle lines need `degree`, or an image-list line to infer it from.
pub fn parse_generator_file(
    text: &str,
    degree: Option<usize>,
) -> Result<Vec<Permutation>, PermError> {
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    let inferred = degree.or_else(|| {
        lines
            .iter()
            .find(|l| !l.starts_with('('))
            .map(|l| l.split_whitespace().count())
    });
    let mut gens = Vec::with_capacity(lines.len());
    for line in lines {
        let perm = if line.starts_with('(') {
            let n = inferred.ok_or_else(|| PermError::Parse(line.to_string()))?;
            Permutation::from_cycles(n, line)?
        } else {
            let images = line
                .split_whitespace()
                .map(|s| s.parse().map_err(|_| PermError::Parse(line.to_string())))
                .collect::<Result<Vec<u32>, _>>()?;
            Permutation::from_images(images)?
        };
        if let Some(n) = inferred {
            if perm.degree() != n {
                return Err(PermError::DegreeMismatch {
                    expected: n,
                    found: perm.degree(),
                });
            }
        }
        gens.push(perm);
    }
    Ok(gens)
}

/// Writes generators in image-list form, one per line.
pub fn write_generator_file(gens: &[Permutation]) -> String {
    gens.iter().map(|g| format!("{g}\n")).collect()
}

pub(crate) use num_integer::binomial;

/// Colex ranking of sorted k-subsets of `0..n`.
#[derive(Clone, Debug)]
pub(crate) struct SubsetRanker {
    table: Vec<Vec<u64>>,
}

impl SubsetRanker {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        let table = (0..=n)
            .map(|m| (0..=k).map(|j| binomial(m as u64, j as u64)).collect())
            .collect();
        SubsetRanker { table }
    }

    pub(crate) fn rank(&self, sorted: &[u32]) -> usize {
        sorted
            .iter()
            .enumerate()
            .map(|(i, &c)| self.table[c as usize][i + 1])
            .sum::<u64>() as usize
    }
}

/// Advances `c` to the next k-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(c: &mut [u32], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if (c[i] as usize) < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Partition of all k-subsets into G-orbits.
#[derive(Clone, Debug)]
pub struct SubsetOrbits {
    pub k: usize,
    /// Lexicographically least member of each orbit, orbits in order of their representatives.
    pub representatives: Vec<Vec<u32>>,
    pub lengths: Vec<u64>,
    orbit_of_rank: Vec<u32>,
    ranker: SubsetRanker,
}

impl SubsetOrbits {
    /// Orbit index of a k-subset (any order of its points).
    pub fn orbit_of(&self, subset: &[u32]) -> usize {
        let mut s = subset.to_vec();
        s.sort_unstable();
        self.orbit_of_rank[self.ranker.rank(&s)] as usize
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    orbit: Vec<u32>,
    /// `transversal[b]` maps the base point to `b`.
    transversal: Vec<Option<Permutation>>,
    inverse: Vec<Option<Permutation>>,
}

/// Base and strong generating set.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
    strong: Vec<Permutation>,
}

impl StabChain {
    /// Deterministic Schreier–Sims. `base_prefix` points come first in the
    /// base; further base points are appended as the smallest point moved by
    /// the element that needs them.
    pub fn build(degree: usize, gens: &[Permutation], base_prefix: &[u32]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
            strong: Vec::new(),
        };
        let mut base: Vec<u32> = base_prefix.to_vec();
        for g in gens.iter().filter(|g| !g.is_identity()) {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.support()[0]);
            }
            chain.strong.push(g.clone());
        }
        for &b in &base {
            chain.levels.push(chain.empty_level(b));
        }
        for l in 0..chain.levels.len() {
            chain.rebuild_level(l);
        }

        let mut i = chain.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let level = i as usize;
            let gens_here = chain.level_generators(level);
            let orbit = chain.levels[level].orbit.clone();
            for &b in &orbit {
                for s in &gens_here {
                    let u = chain.levels[level].transversal[b as usize]
                        .as_ref()
                        .unwrap();
                    let image = s.apply(b);
                    let w = chain.levels[level].inverse[image as usize]
                        .as_ref()
                        .unwrap();
                    let h = u.then(s).then(w);
                    let (residue, drop) = chain.sift(h, level + 1);
                    if residue.is_identity() {
                        continue;
                    }
                    if drop == chain.levels.len() {
                        let b = residue.support()[0];
                        chain.levels.push(chain.empty_level(b));
                    }
                    chain.strong.push(residue);
                    for l in level + 1..=drop {
                        chain.rebuild_level(l);
                    }
                    i = drop as isize;
                    continue 'outer;
                }
            }
            i -= 1;
        }
        chain
    }

    fn empty_level(&self, base: u32) -> Level {
        let mut transversal = vec![None; self.degree];
        let mut inverse = vec![None; self.degree];
        transversal[base as usize] = Some(Permutation::identity(self.degree));
        inverse[base as usize] = Some(Permutation::identity(self.degree));
        Level {
            base,
            orbit: vec![base],
            transversal,
            inverse,
        }
    }

    /// Strong generators fixing the first `level` base points.
    fn level_generators(&self, level: usize) -> Vec<Permutation> {
        let prefix: Vec<u32> = self.levels[..level].iter().map(|l| l.base).collect();
        self.strong
            .iter()
            .filter(|s| prefix.iter().all(|&b| s.apply(b) == b))
            .cloned()
            .collect()
    }

    fn rebuild_level(&mut self, level: usize) {
        let gens = self.level_generators(level);
        let base = self.levels[level].base;
        let mut fresh = self.empty_level(base);
        let mut queue = VecDeque::from([base]);
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = s.apply(x);
                if fresh.transversal[y as usize].is_none() {
                    let u = fresh.transversal[x as usize].as_ref().unwrap().then(s);
                    fresh.inverse[y as usize] = Some(u.inverse());
                    fresh.transversal[y as usize] = Some(u);
                    fresh.orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        self.levels[level] = fresh;
    }

    /// Strips `g` through the levels starting at `start`; returns the residue
    /// and the level where stripping stopped (`levels.len()` if it went through).
    fn sift(&self, mut g: Permutation, start: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let b = g.apply(level.base);
            match &level.inverse[b as usize] {
                Some(w) => g = g.then(w),
                None => return (g, l),
            }
        }
        (g, self.levels.len())
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g.clone(), 0).0.is_identity()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Basic orbit lengths, one per base point.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }
}

/// A permutation group given by generators.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain: self.chain.clone(),
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self, PermError> {
        if degree > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(degree));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    /// Sym(n), generated by a transposition and an n-cycle.
    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_fn(degree, |i| match i {
                0 => 1,
                1 => 0,
                i => i,
            }));
            gens.push(Permutation::from_fn(degree, |i| (i + 1) % degree));
        }
        PermGroup::new(degree, gens).expect("degrees agree")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| StabChain::build(self.degree, &self.generators, &[]))
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    fn check_point(&self, x: u32) -> Result<(), PermError> {
        if (x as usize) < self.degree {
            Ok(())
        } else {
            Err(PermError::PointOutOfRange {
                point: x as usize,
                degree: self.degree,
            })
        }
    }

    /// Orbit of a point, sorted ascending.
    pub fn orbit_of_point(&self, x: u32) -> Result<Vec<u32>, PermError> {
        self.check_point(x)?;
        let mut seen = vec![false; self.degree];
        seen[x as usize] = true;
        let mut queue = VecDeque::from([x]);
        let mut orbit = vec![x];
        while let Some(y) = queue.pop_front() {
            for g in &self.generators {
                let z = g.apply(y);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    orbit.push(z);
                    queue.push_back(z);
                }
            }
        }
        orbit.sort_unstable();
        Ok(orbit)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit_of_point(0).map(|o| o.len()) == Ok(self.degree)
    }

    /// |G_x| via orbit–stabilizer.
    pub fn point_stabilizer_order(&self, x: u32) -> Result<u128, PermError> {
        let len = self.orbit_of_point(x)?.len() as u128;
        Ok(self.order() / len)
    }

    /// Orbits of G on the k-subsets of the points.
    pub fn subset_orbits(&self, k: usize) -> Result<SubsetOrbits, PermError> {
        let n = self.degree;
        let total = binomial(n as u64, k as u64);
        if total > MAX_SUBSETS {
            return Err(PermError::TooManySubsets { n, k });
        }
        let ranker = SubsetRanker::new(n, k);
        let mut orbit_of_rank = vec![u32::MAX; total as usize];
        let mut representatives = Vec::new();
        let mut lengths = Vec::new();
        if k > n {
            return Ok(SubsetOrbits {
                k,
                representatives,
                lengths,
                orbit_of_rank,
                ranker,
            });
        }
        let mut current: Vec<u32> = (0..k as u32).collect();
        loop {
            let r = ranker.rank(&current);
            if orbit_of_rank[r] == u32::MAX {
                let id = representatives.len() as u32;
                orbit_of_rank[r] = id;
                let mut len = 1u64;
                let mut queue = VecDeque::from([current.clone()]);
                while let Some(s) = queue.pop_front() {
                    for g in &self.generators {
                        let img = g.image_of_set(&s);
                        let ri = ranker.rank(&img);
                        if orbit_of_rank[ri] == u32::MAX {
                            orbit_of_rank[ri] = id;
                            len += 1;
                            queue.push_back(img);
                        }
                    }
                }
                representatives.push(current.clone());
                lengths.push(len);
            }
            if !next_combination(&mut current, n) {
                break;
            }
        }
        Ok(SubsetOrbits {
            k,
            representatives,
            lengths,
            orbit_of_rank,
            ranker,
        })
    }

    /// `(representative, orbit length)` for every orbit on k-subsets.
    pub fn orbits_on_ksubsets(&self, k: usize) -> Result<Vec<(Vec<u32>, u64)>, PermError> {
        let orbits = self.subset_orbits(k)?;
        Ok(orbits
            .representatives
            .into_iter()
            .zip(orbits.lengths)
            .collect())
    }

    fn check_subset(&self, set: &[u32]) -> Result<Vec<u32>, PermError> {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() || s.len() != set.len() {
            return Err(PermError::BadSubset);
        }
        for &x in &s {
            self.check_point(x)?;
        }
        if binomial(self.degree as u64, s.len() as u64) > MAX_SUBSETS {
            return Err(PermError::TooManySubsets {
                n: self.degree,
                k: s.len(),
            });
        }
        Ok(s)
    }

    /// Orbit of a point set under G, as sorted sets in discovery order.
    pub fn orbit_of_set(&self, set: &[u32]) -> Result<Vec<Vec<u32>>, PermError> {
        Ok(self.set_orbit_with_transversal(set)?.0)
    }

    /// Orbit of a set plus, for each orbit member, an element mapping the
    /// start set onto it.
    fn set_orbit_with_transversal(
        &self,
        set: &[u32],
    ) -> Result<(Vec<Vec<u32>>, Vec<Permutation>), PermError> {
        let start = self.check_subset(set)?;
        let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(start.clone(), 0)]);
        let mut orbit = vec![start];
        let mut reps = vec![Permutation::identity(self.degree)];
        let mut head = 0;
        while head < orbit.len() {
            for g in &self.generators {
                let img = g.image_of_set(&orbit[head]);
                if !index.contains_key(&img) {
                    index.insert(img.clone(), orbit.len());
                    reps.push(reps[head].then(g));
                    orbit.push(img);
                }
            }
            head += 1;
        }
        Ok((orbit, reps))
    }

    /// |G_S| = |G| / |S^G|.
    pub fn setwise_stabilizer_order(&self, set: &[u32]) -> Result<u128, PermError> {
        let len = self.orbit_of_set(set)?.len() as u128;
        Ok(self.order() / len)
    }

    /// Schreier generators of the setwise stabilizer G_S, deduplicated and
    /// with the identity removed.
    pub fn setwise_stabilizer_generators(
        &self,
        set: &[u32],
    ) -> Result<Vec<Permutation>, PermError> {
        let (orbit, reps) = self.set_orbit_with_transversal(set)?;
        let index: HashMap<&[u32], usize> = orbit
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect();
        let mut seen = HashSet::new();
        let mut gens = Vec::new();
        for (i, s) in orbit.iter().enumerate() {
            for g in &self.generators {
                let img = g.image_of_set(s);
                let j = index[img.as_slice()];
                let h = reps[i].then(g).then(&reps[j].inverse());
                if !h.is_identity() && seen.insert(h.clone()) {
                    gens.push(h);
                }
            }
        }
        gens.sort();
        Ok(gens)
    }

    pub fn setwise_stabilizer(&self, set: &[u32]) -> Result<PermGroup, PermError> {
        PermGroup::new(self.degree, self.setwise_stabilizer_generators(set)?)
    }

    /// Transitive on ordered t-tuples of distinct points: the orbit of
    /// `(0, 1, .., t-1)` has length n(n-1)...(n-t+1).
    pub fn is_t_transitive(&self, t: usize) -> Result<bool, PermError> {
        if t > MAX_T {
            return Err(PermError::TupleTooLarge(t));
        }
        if t > self.degree {
            return Ok(false);
        }
        let prefix: Vec<u32> = (0..t as u32).collect();
        let chain = StabChain::build(self.degree, &self.generators, &prefix);
        let lengths = chain.orbit_lengths();
        Ok((0..t).all(|i| lengths[i] == self.degree - i))
    }

    /// Single orbit on unordered t-subsets.
    pub fn is_t_homogeneous(&self, t: usize) -> Result<bool, PermError> {
        if t > MAX_T {
            return Err(PermError::TupleTooLarge(t));
        }
        if t > self.degree {
            return Ok(false);
        }
        if t == 0 {
            return Ok(true);
        }
        let start: Vec<u32> = (0..t as u32).collect();
        let len = self.orbit_of_set(&start)?.len() as u64;
        Ok(len == binomial(self.degree as u64, t as u64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[u32]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn permutation_basics() {
        let a = perm(&[1, 2, 0, 3]);
        let b = perm(&[0, 1, 3, 2]);
        assert_eq!(a.then(&b).images(), &[1, 3, 0, 2]);
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.order(), 3);
        assert_eq!(a.then(&b).order(), 4);
        assert_eq!(a.fixed_point_count(), 1);
        assert_eq!(a.support(), vec![0, 1, 2]);
        assert_eq!(Permutation::identity(5).fixed_point_count(), 5);
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 3]).is_err());
    }

    #[test]
    fn cycle_notation() {
        let p = Permutation::from_cycles(5, "(0 1 2)(3,4)").unwrap();
        assert_eq!(p.images(), &[1, 2, 0, 4, 3]);
        assert!(Permutation::from_cycles(3, "()").unwrap().is_identity());
        assert!(Permutation::from_cycles(3, "(0 1)(1 2)").is_err());
        assert!(Permutation::from_cycles(3, "(0 5)").is_err());
        assert!(Permutation::from_cycles(3, "0 1").is_err());
    }

    #[test]
    fn generator_file_round_trip() {
        let text = "# S4\n1 0 2 3\n(0 1 2 3)\n\n";
        let gens = parse_generator_file(text, None).unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[1].images(), &[1, 2, 3, 0]);
        let written = write_generator_file(&gens);
        assert_eq!(written, "1 0 2 3\n1 2 3 0\n");
        assert_eq!(parse_generator_file(&written, None).unwrap(), gens);
        assert!(parse_generator_file("0 1\n0 1 2\n", None).is_err());
        assert!(parse_generator_file("(0 1)\n", None).is_err());
        assert_eq!(parse_generator_file("(0 1)\n", Some(3)).unwrap().len(), 1);
    }

    #[test]
    fn symmetric_orders() {
        assert_eq!(PermGroup::symmetric(3).order(), 6);
        assert_eq!(PermGroup::symmetric(4).order(), 24);
        assert_eq!(PermGroup::symmetric(7).order(), 5040);
        assert_eq!(PermGroup::trivial(5).order(), 1);
    }

    #[test]
    fn order_ignores_generator_order() {
        let gens = vec![
            perm(&[1, 0, 2, 3, 4, 5]),
            perm(&[0, 2, 3, 1, 4, 5]),
            perm(&[0, 1, 2, 3, 5, 4]),
        ];
        let mut rev = gens.clone();
        rev.reverse();
        let a = PermGroup::new(6, gens).unwrap();
        let b = PermGroup::new(6, rev).unwrap();
        assert_eq!(a.order(), 48);
        assert_eq!(b.order(), 48);
    }

    #[test]
    fn membership() {
        // A4 inside S4
        let a4 = PermGroup::new(4, vec![perm(&[1, 2, 0, 3]), perm(&[0, 2, 3, 1])]).unwrap();
        assert_eq!(a4.order(), 12);
        assert!(!a4.contains(&perm(&[1, 0, 2, 3])));
        assert!(a4.contains(&perm(&[1, 0, 3, 2])));
    }

    #[test]
    fn point_orbits() {
        let g = PermGroup::new(4, vec![perm(&[1, 0, 2, 3])]).unwrap();
        assert_eq!(g.orbit_of_point(2).unwrap(), vec![2]);
        assert_eq!(g.orbit_of_point(1).unwrap(), vec![0, 1]);
        assert_eq!(PermGroup::trivial(3).orbit_of_point(0).unwrap(), vec![0]);
        assert!(matches!(
            g.orbit_of_point(4),
            Err(PermError::PointOutOfRange { .. })
        ));
    }

    #[test]
    fn subset_orbits_of_trivial_group() {
        let orbits = PermGroup::trivial(3).orbits_on_ksubsets(2).unwrap();
        assert_eq!(
            orbits,
            vec![(vec![0, 1], 1), (vec![0, 2], 1), (vec![1, 2], 1)]
        );
    }

    #[test]
    fn setwise_stabilizers() {
        let s4 = PermGroup::symmetric(4);
        assert_eq!(s4.setwise_stabilizer_order(&[0, 1, 2, 3]).unwrap(), 24);
        assert_eq!(s4.setwise_stabilizer_order(&[0, 1]).unwrap(), 4);
        let stab = s4.setwise_stabilizer(&[0, 1]).unwrap();
        assert_eq!(stab.order(), 4);
        assert!(s4.setwise_stabilizer_order(&[0, 0]).is_err());
        assert!(s4.setwise_stabilizer_order(&[]).is_err());
    }

    #[test]
    fn transitivity_of_symmetric_groups() {
        for n in 1..=6 {
            let s = PermGroup::symmetric(n);
            for t in 0..=n.min(MAX_T) {
                assert!(s.is_t_transitive(t).unwrap(), "S{n} t={t}");
                assert!(s.is_t_homogeneous(t).unwrap());
            }
        }
        assert!(PermGroup::symmetric(8).is_t_transitive(5).is_err());
        assert!(!PermGroup::trivial(3).is_t_transitive(1).unwrap());
    }

    #[test]
    fn subset_ranking_is_a_bijection() {
        let ranker = SubsetRanker::new(7, 3);
        let mut c = vec![0, 1, 2];
        let mut seen = HashSet::new();
        loop {
            assert!(seen.insert(ranker.rank(&c)));
            if !next_combination(&mut c, 7) {
                break;
            }
        }
        assert_eq!(seen.len(), 35);
        assert!(seen.iter().all(|&r| r < 35));
    }
}
