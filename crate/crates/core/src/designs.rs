//! Incidence structures with k-point blocks.
//!
//! A [`Design`] keeps its blocks in canonical form: every block sorted
//! ascending, the block list sorted lexicographically, no repeats. Two designs
//! are equal exactly when their canonical block lists are equal.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::Deserialize;
use thiserror::Error;

use crate::perm::{binomial, next_combination, PermGroup, Permutation, SubsetRanker};

/// Largest v accepted by [`are_isomorphic`] for triple systems.
pub const ISO_MAX_V_TRIPLES: usize = 40;
/// Largest v accepted by [`are_isomorphic`] for other block sizes.
pub const ISO_MAX_V: usize = 32;

const NORMALIZE_HINT: &str =
    "sort each block ascending, sort the block list lexicographically and drop repeated blocks";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DesignError {
    #[error("block {index} {block:?}: {reason}")]
    BadBlock {
        index: usize,
        block: Vec<u64>,
        reason: String,
    },
    #[error("block {index} {block:?} is not in canonical position ({hint})")]
    NotCanonical {
        index: usize,
        block: Vec<u32>,
        hint: &'static str,
    },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("expected blocks of size {expected}, design has size {found}")]
    WrongBlockSize { expected: usize, found: usize },
    #[error("point {point} out of range for v = {v}")]
    PointOutOfRange { point: u32, v: usize },
    #[error("group degree {degree} does not match v = {v}")]
    DegreeMismatch { degree: usize, v: usize },
    #[error("the group does not preserve the block set")]
    NotAutomorphism,
    #[error("designs differ in v or k ({0:?} vs {1:?})")]
    ParameterMismatch((usize, usize), (usize, usize)),
    #[error("isomorphism search limited to v <= {limit} for k = {k}")]
    IsoGuard { limit: usize, k: usize },
    #[error("v = {0} admits no Steiner quadruple system count")]
    Inadmissible(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Design {
    v: usize,
    k: usize,
    blocks: Vec<Vec<u32>>,
}

/// An incident point–block pair; `block` indexes the canonical block list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    pub point: u32,
    pub block: usize,
}

/// Outcome of a Steiner-property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SteinerVerdict {
    Valid,
    /// The lexicographically first t-subset not covered exactly once.
    Violation {
        subset: Vec<u32>,
        count: usize,
    },
}

impl SteinerVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, SteinerVerdict::Valid)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDesign {
    v: u64,
    k: u64,
    blocks: Vec<Vec<u64>>,
}

impl Design {
    /// Normalizes `blocks` into canonical form. Blocks must have exactly `k`
    /// distinct points in `0..v`; repeated blocks are rejected.
    pub fn new(v: usize, k: usize, blocks: Vec<Vec<u32>>) -> Result<Self, DesignError> {
        let mut canon = Vec::with_capacity(blocks.len());
        for (index, mut block) in blocks.into_iter().enumerate() {
            block.sort_unstable();
            check_block(index, &block, v, k)?;
            canon.push(block);
        }
        canon.sort_unstable();
        if let Some(i) = (1..canon.len()).find(|&i| canon[i] == canon[i - 1]) {
            return Err(DesignError::BadBlock {
                index: i,
                block: canon[i].iter().map(|&x| x as u64).collect(),
                reason: "repeated block".to_string(),
            });
        }
        Ok(Design {
            v,
            k,
            blocks: canon,
        })
    }

    /// Accepts only blocks that are already in canonical form.
    pub fn from_canonical(v: usize, k: usize, blocks: Vec<Vec<u32>>) -> Result<Self, DesignError> {
        for (index, block) in blocks.iter().enumerate() {
            check_block(index, block, v, k)?;
            let unsorted = block.windows(2).any(|w| w[0] > w[1]);
            if unsorted || (index > 0 && blocks[index - 1] >= *block) {
                return Err(DesignError::NotCanonical {
                    index,
                    block: block.clone(),
                    hint: NORMALIZE_HINT,
                });
            }
        }
        Ok(Design { v, k, blocks })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Number of blocks through each point.
    pub fn point_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.v];
        for b in &self.blocks {
            for &x in b {
                deg[x as usize] += 1;
            }
        }
        deg
    }

    pub fn flags(&self) -> Vec<Flag> {
        let mut flags: Vec<Flag> = self
            .blocks
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.iter().map(move |&point| Flag { point, block: i }))
            .collect();
        flags.sort_unstable();
        flags
    }

    /// Index of a block given in any point order.
    pub fn block_index(&self, block: &[u32]) -> Option<usize> {
        let mut b = block.to_vec();
        b.sort_unstable();
        self.blocks.binary_search(&b).ok()
    }

    /// The design file text: `{"v": 8, "k": 4, "blocks": [[0,1,2,3], ...]}`.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("{{\"v\": {}, \"k\": {}, \"blocks\": [", self.v, self.k);
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push('[');
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                write!(out, "{x}").unwrap();
            }
            out.push(']');
        }
        out.push_str("]}\n");
        out
    }

    /// Reads the design file format; non-canonical input is rejected.
    pub fn parse_file(text: &str) -> Result<Self, DesignError> {
        let raw: RawDesign = serde_json::from_str(text).map_err(|e| DesignError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let (v, k) = (raw.v as usize, raw.k as usize);
        let mut blocks = Vec::with_capacity(raw.blocks.len());
        for (index, block) in raw.blocks.into_iter().enumerate() {
            if let Some(&x) = block.iter().find(|&&x| x >= v as u64) {
                return Err(DesignError::BadBlock {
                    index,
                    block,
                    reason: format!("point {x} out of range for v = {v}"),
                });
            }
            blocks.push(block.into_iter().map(|x| x as u32).collect());
        }
        Self::from_canonical(v, k, blocks)
    }

    /// Image of the block set under `g`, as a permutation of block indices;
    /// `None` if some block is not mapped onto a block.
    pub fn induced_block_permutation(&self, g: &Permutation) -> Option<Vec<usize>> {
        self.blocks
            .iter()
            .map(|b| self.block_index(&g.image_of_set(b)))
            .collect()
    }
}

fn check_block(index: usize, block: &[u32], v: usize, k: usize) -> Result<(), DesignError> {
    let bad = |reason: String| DesignError::BadBlock {
        index,
        block: block.iter().map(|&x| x as u64).collect(),
        reason,
    };
    if block.len() != k {
        return Err(bad(format!("has {} points, expected {k}", block.len())));
    }
    if let Some(&x) = block.iter().find(|&&x| x as usize >= v) {
        return Err(bad(format!("point {x} out of range for v = {v}")));
    }
    let mut sorted = block.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(bad("repeated point".to_string()));
    }
    Ok(())
}

/// Checks that every t-subset of points lies in exactly one block.
fn verify_steiner(d: &Design, t: usize) -> SteinerVerdict {
    let ranker = SubsetRanker::new(d.v, t);
    let total = binomial(d.v as u64, t as u64) as usize;
    let mut count = vec![0usize; total];
    let mut sub: Vec<u32> = Vec::with_capacity(t);
    for b in &d.blocks {
        let mut idx: Vec<u32> = (0..t as u32).collect();
        loop {
            sub.clear();
            sub.extend(idx.iter().map(|&i| b[i as usize]));
            count[ranker.rank(&sub)] += 1;
            if !next_combination(&mut idx, d.k) {
                break;
            }
        }
    }
    let mut c: Vec<u32> = (0..t as u32).collect();
    loop {
        let n = count[ranker.rank(&c)];
        if n != 1 {
            return SteinerVerdict::Violation {
                subset: c,
                count: n,
            };
        }
        if !next_combination(&mut c, d.v) {
            return SteinerVerdict::Valid;
        }
    }
}

/// SQS check: every 3-subset of points lies in exactly one block.
pub fn verify_sqs(d: &Design) -> Result<SteinerVerdict, DesignError> {
    if d.k != 4 {
        return Err(DesignError::WrongBlockSize {
            expected: 4,
            found: d.k,
        });
    }
    Ok(verify_steiner(d, 3))
}

/// Steiner triple system check: every pair of points lies in exactly one block.
pub fn verify_sts(d: &Design) -> Result<SteinerVerdict, DesignError> {
    if d.k != 3 {
        return Err(DesignError::WrongBlockSize {
            expected: 3,
            found: d.k,
        });
    }
    Ok(verify_steiner(d, 2))
}

/// Blocks through a point of an SQS(v): (v−1)(v−2)/6.
pub fn replication_number(v: u64) -> Result<u64, DesignError> {
    let num = v
        .checked_sub(1)
        .zip(v.checked_sub(2))
        .map(|(a, b)| a * b)
        .filter(|n| v >= 4 && n % 6 == 0)
        .ok_or(DesignError::Inadmissible(v))?;
    Ok(num / 6)
}

/// Blocks of an SQS(v): v·r/4.
pub fn block_count(v: u64) -> Result<u64, DesignError> {
    let r = replication_number(v)?;
    if !(v * r).is_multiple_of(4) {
        return Err(DesignError::Inadmissible(v));
    }
    Ok(v * r / 4)
}

/// Blocks through `x` with `x` removed; points above `x` shift down by one.
pub fn derived_design(d: &Design, x: u32) -> Result<Design, DesignError> {
    if x as usize >= d.v {
        return Err(DesignError::PointOutOfRange { point: x, v: d.v });
    }
    let blocks = d
        .blocks
        .iter()
        .filter(|b| b.contains(&x))
        .map(|b| {
            b.iter()
                .filter(|&&y| y != x)
                .map(|&y| if y > x { y - 1 } else { y })
                .collect()
        })
        .collect();
    Design::new(d.v - 1, d.k - 1, blocks)
}

fn check_degree(g: &PermGroup, d: &Design) -> Result<(), DesignError> {
    if g.degree() != d.v {
        return Err(DesignError::DegreeMismatch {
            degree: g.degree(),
            v: d.v,
        });
    }
    Ok(())
}

/// Every generator maps the block set onto itself.
pub fn preserves_design(g: &PermGroup, d: &Design) -> Result<bool, DesignError> {
    check_degree(g, d)?;
    Ok(g.generators()
        .iter()
        .all(|s| d.induced_block_permutation(s).is_some()))
}

fn induced_actions(d: &Design, g: &PermGroup) -> Result<Vec<Vec<usize>>, DesignError> {
    check_degree(g, d)?;
    g.generators()
        .iter()
        .map(|s| {
            d.induced_block_permutation(s)
                .ok_or(DesignError::NotAutomorphism)
        })
        .collect()
}

/// G is transitive on the blocks of D.
pub fn is_block_transitive(d: &Design, g: &PermGroup) -> Result<bool, DesignError> {
    let actions = induced_actions(d, g)?;
    let b = d.block_count();
    if b == 0 {
        return Ok(true);
    }
    let mut seen = vec![false; b];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut reached = 1;
    while let Some(i) = queue.pop_front() {
        for act in &actions {
            let j = act[i];
            if !seen[j] {
                seen[j] = true;
                reached += 1;
                queue.push_back(j);
            }
        }
    }
    Ok(reached == b)
}

/// G is transitive on the flags of D: the orbit of one flag has k·b members.
pub fn is_flag_transitive(d: &Design, g: &PermGroup) -> Result<bool, DesignError> {
    let actions = induced_actions(d, g)?;
    let b = d.block_count();
    let k = d.k;
    if b == 0 {
        return Ok(true);
    }
    // flag (block i, position j) is encoded as i*k + j
    let mut seen = vec![false; b * k];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut reached = 1;
    while let Some(f) = queue.pop_front() {
        let (i, j) = (f / k, f % k);
        let x = d.blocks[i][j];
        for (s, act) in g.generators().iter().zip(&actions) {
            let bi = act[i];
            let y = s.apply(x);
            let pos = d.blocks[bi]
                .iter()
                .position(|&z| z == y)
                .expect("image block");
            let code = bi * k + pos;
            if !seen[code] {
                seen[code] = true;
                reached += 1;
                queue.push_back(code);
            }
        }
    }
    Ok(reached == b * k)
}

/// `third[a][b]` = the point completing the pair to a triple, for an STS.
fn triple_completion(d: &Design) -> Vec<Vec<u32>> {
    let mut third = vec![vec![u32::MAX; d.v]; d.v];
    for b in &d.blocks {
        let [x, y, z] = [b[0] as usize, b[1] as usize, b[2] as usize];
        third[x][y] = z as u32;
        third[y][x] = z as u32;
        third[x][z] = y as u32;
        third[z][x] = y as u32;
        third[y][z] = x as u32;
        third[z][y] = x as u32;
    }
    third
}

/// Pasch configurations through each point of a Steiner triple system.
fn pasch_counts(d: &Design) -> Vec<u64> {
    let third = triple_completion(d);
    let mut through: Vec<Vec<(u32, u32)>> = vec![Vec::new(); d.v];
    for b in &d.blocks {
        through[b[0] as usize].push((b[1], b[2]));
        through[b[1] as usize].push((b[0], b[2]));
        through[b[2] as usize].push((b[0], b[1]));
    }
    let t = |a: u32, b: u32| third[a as usize][b as usize];
    through
        .iter()
        .map(|lines| {
            let mut n = 0;
            for (i, &(b, c)) in lines.iter().enumerate() {
                for &(dd, e) in &lines[i + 1..] {
                    if t(b, dd) == t(c, e) {
                        n += 1;
                    }
                    if t(b, e) == t(c, dd) {
                        n += 1;
                    }
                }
            }
            n
        })
        .collect()
}

/// Per-point isomorphism invariants: degree, plus Pasch counts for Steiner
/// triple systems, or the Pasch total of the derived design for SQS.
fn point_invariants(d: &Design, steiner: bool) -> Vec<(usize, u64)> {
    let deg = d.point_degrees();
    if !steiner {
        return deg.into_iter().map(|x| (x, 0)).collect();
    }
    match d.k {
        3 => deg.into_iter().zip(pasch_counts(d)).collect(),
        4 => (0..d.v as u32)
            .map(|x| {
                let der = derived_design(d, x).expect("point in range");
                (deg[x as usize], pasch_counts(&der).iter().sum::<u64>())
            })
            .collect(),
        _ => deg.into_iter().map(|x| (x, 0)).collect(),
    }
}

fn is_steiner(d: &Design) -> bool {
    match d.k {
        3 => verify_steiner(d, 2).is_valid(),
        4 => verify_steiner(d, 3).is_valid(),
        _ => false,
    }
}

struct IsoSearch<'a> {
    d1: &'a Design,
    d2: &'a Design,
    /// Steiner with t = k − 1: every (k−1)-subset lies in at most one block.
    steiner: bool,
    inv1: Vec<(usize, u64)>,
    inv2: Vec<(usize, u64)>,
    through1: Vec<Vec<usize>>,
    blocks2: HashSet<Vec<u32>>,
    /// (k−1)-subset of D2 → the point completing it to a block.
    completion2: HashMap<Vec<u32>, u32>,
    map: Vec<Option<u32>>,
    used: Vec<bool>,
}

impl IsoSearch<'_> {
    fn image(&self, pts: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = pts.iter().map(|&x| self.map[x as usize].unwrap()).collect();
        out.sort_unstable();
        out
    }

    /// A point whose image is determined by a block with all other points mapped.
    fn forced(&self) -> Option<(u32, Option<u32>)> {
        if !self.steiner {
            return None;
        }
        for b in self.d1.blocks() {
            let unmapped: Vec<u32> = b
                .iter()
                .copied()
                .filter(|&x| self.map[x as usize].is_none())
                .collect();
            if let [y] = unmapped[..] {
                let rest: Vec<u32> = b.iter().copied().filter(|&x| x != y).collect();
                let img = self.completion2.get(&self.image(&rest)).copied();
                return Some((y, img));
            }
        }
        None
    }

    fn consistent(&self, y: u32) -> bool {
        let k = self.d1.k();
        for &bi in &self.through1[y as usize] {
            let b = &self.d1.blocks()[bi];
            let mapped: Vec<u32> = b
                .iter()
                .copied()
                .filter(|&x| self.map[x as usize].is_some())
                .collect();
            if mapped.len() == k {
                if !self.blocks2.contains(&self.image(b)) {
                    return false;
                }
            } else if self.steiner && mapped.len() == k - 1 {
                let img = self.image(&mapped);
                match self.completion2.get(&img) {
                    Some(&z) if !self.used[z as usize] => {}
                    _ => return false,
                }
            }
        }
        true
    }

    fn assign(&mut self, y: u32, z: u32) {
        self.map[y as usize] = Some(z);
        self.used[z as usize] = true;
    }

    fn unassign(&mut self, y: u32, z: u32) {
        self.map[y as usize] = None;
        self.used[z as usize] = false;
    }

    fn extend(&mut self) -> bool {
        let candidates: Vec<(u32, u32)> = match self.forced() {
            Some((_, None)) => return false,
            Some((y, Some(z))) => {
                if self.used[z as usize] || self.inv1[y as usize] != self.inv2[z as usize] {
                    return false;
                }
                vec![(y, z)]
            }
            None => {
                let Some(y) = (0..self.d1.v() as u32).find(|&y| self.map[y as usize].is_none())
                else {
                    return self
                        .d1
                        .blocks()
                        .iter()
                        .all(|b| self.blocks2.contains(&self.image(b)));
                };
                (0..self.d2.v() as u32)
                    .filter(|&z| {
                        !self.used[z as usize] && self.inv1[y as usize] == self.inv2[z as usize]
                    })
                    .map(|z| (y, z))
                    .collect()
            }
        };
        for (y, z) in candidates {
            self.assign(y, z);
            if self.consistent(y) && self.extend() {
                return true;
            }
            self.unassign(y, z);
        }
        false
    }
}

/// Searches for a point bijection mapping the blocks of `d1` onto those of
/// `d2`. Returns `map` with `map[x]` the image of point `x`.
pub fn are_isomorphic(d1: &Design, d2: &Design) -> Result<Option<Vec<u32>>, DesignError> {
    if (d1.v, d1.k) != (d2.v, d2.k) {
        return Err(DesignError::ParameterMismatch((d1.v, d1.k), (d2.v, d2.k)));
    }
    let limit = if d1.k == 3 {
        ISO_MAX_V_TRIPLES
    } else {
        ISO_MAX_V
    };
    if d1.v > limit {
        return Err(DesignError::IsoGuard { limit, k: d1.k });
    }
    if d1.block_count() != d2.block_count() {
        return Ok(None);
    }
    let s1 = is_steiner(d1);
    if s1 != is_steiner(d2) {
        return Ok(None);
    }
    let inv1 = point_invariants(d1, s1);
    let inv2 = point_invariants(d2, s1);
    let mut sorted1 = inv1.clone();
    let mut sorted2 = inv2.clone();
    sorted1.sort_unstable();
    sorted2.sort_unstable();
    if sorted1 != sorted2 {
        return Ok(None);
    }
    let mut through1 = vec![Vec::new(); d1.v];
    for (i, b) in d1.blocks.iter().enumerate() {
        for &x in b {
            through1[x as usize].push(i);
        }
    }
    let mut completion2 = HashMap::new();
    if s1 {
        for b in &d2.blocks {
            for &x in b {
                let rest: Vec<u32> = b.iter().copied().filter(|&y| y != x).collect();
                completion2.insert(rest, x);
            }
        }
    }
    let mut search = IsoSearch {
        d1,
        d2,
        steiner: s1,
        inv1,
        inv2,
        through1,
        blocks2: d2.blocks.iter().cloned().collect(),
        completion2,
        map: vec![None; d1.v],
        used: vec![false; d1.v],
    };
    if search.extend() {
        Ok(Some(search.map.into_iter().map(Option::unwrap).collect()))
    } else {
        Ok(None)
    }
}

/// Applies a point relabeling to every block.
pub fn relabel(d: &Design, map: &[u32]) -> Result<Design, DesignError> {
    let blocks = d
        .blocks
        .iter()
        .map(|b| b.iter().map(|&x| map[x as usize]).collect())
        .collect();
    Design::new(d.v, d.k, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> Design {
        Design::new(
            7,
            3,
            vec![
                vec![0, 1, 2],
                vec![0, 3, 4],
                vec![0, 5, 6],
                vec![1, 3, 5],
                vec![1, 4, 6],
                vec![2, 3, 6],
                vec![2, 4, 5],
            ],
        )
        .unwrap()
    }

    /// The 14 zero-XOR 4-subsets of 0..8, written out by hand.
    fn sqs8() -> Design {
        let blocks = [
            [0, 1, 2, 3],
            [0, 1, 4, 5],
            [0, 1, 6, 7],
            [0, 2, 4, 6],
            [0, 2, 5, 7],
            [0, 3, 4, 7],
            [0, 3, 5, 6],
            [1, 2, 4, 7],
            [1, 2, 5, 6],
            [1, 3, 4, 6],
            [1, 3, 5, 7],
            [2, 3, 4, 5],
            [2, 3, 6, 7],
            [4, 5, 6, 7],
        ];
        Design::new(8, 4, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn canonicalization() {
        let d = Design::new(4, 2, vec![vec![3, 1], vec![0, 2]]).unwrap();
        assert_eq!(d.blocks(), &[vec![0, 2], vec![1, 3]]);
        assert!(Design::new(4, 2, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(Design::new(4, 2, vec![vec![0, 4]]).is_err());
        assert!(Design::new(4, 2, vec![vec![1, 1]]).is_err());
        assert!(Design::new(4, 2, vec![vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn sqs_verification() {
        assert_eq!(verify_sqs(&sqs8()).unwrap(), SteinerVerdict::Valid);
        let trivial = Design::new(4, 4, vec![vec![0, 1, 2, 3]]).unwrap();
        assert!(verify_sqs(&trivial).unwrap().is_valid());

        let mut blocks = sqs8().blocks().to_vec();
        let removed = blocks.remove(5);
        let broken = Design::new(8, 4, blocks).unwrap();
        match verify_sqs(&broken).unwrap() {
            SteinerVerdict::Violation { subset, count } => {
                assert_eq!(count, 0);
                assert!(subset.iter().all(|x| removed.contains(x)));
            }
            SteinerVerdict::Valid => panic!("deleted block went unnoticed"),
        }
        assert!(verify_sqs(&fano()).is_err());
        assert!(verify_sts(&fano()).unwrap().is_valid());
    }

    #[test]
    fn counting_formulas() {
        assert_eq!(replication_number(8).unwrap(), 7);
        assert_eq!(replication_number(32).unwrap(), 155);
        assert_eq!(replication_number(4).unwrap(), 1);
        assert_eq!(block_count(4).unwrap(), 1);
        assert_eq!(block_count(8).unwrap(), 14);
        assert_eq!(block_count(10).unwrap(), 30);
        assert!(replication_number(9).is_err());
        assert!(replication_number(2).is_err());
    }

    #[test]
    fn derived_of_sqs8_is_fano() {
        let der = derived_design(&sqs8(), 0).unwrap();
        assert_eq!((der.v(), der.k(), der.block_count()), (7, 3, 7));
        assert!(verify_sts(&der).unwrap().is_valid());
        assert!(are_isomorphic(&der, &fano()).unwrap().is_some());
        assert!(derived_design(&sqs8(), 8).is_err());
    }

    #[test]
    fn relabeled_fano_is_isomorphic() {
        let f = fano();
        let perm = [3u32, 6, 0, 5, 1, 2, 4];
        let g = relabel(&f, &perm).unwrap();
        let map = are_isomorphic(&f, &g).unwrap().expect("relabeling exists");
        assert_eq!(relabel(&f, &map).unwrap(), g);
    }

    #[test]
    fn non_isomorphic_designs() {
        let a = Design::new(4, 2, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let b = Design::new(4, 2, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(are_isomorphic(&a, &b).unwrap(), None);
        let c = Design::new(4, 2, vec![vec![0, 1]]).unwrap();
        assert_eq!(are_isomorphic(&a, &c).unwrap(), None);
        let too_big = Design::new(41, 3, vec![]).unwrap();
        assert!(matches!(
            are_isomorphic(&too_big, &too_big),
            Err(DesignError::IsoGuard { .. })
        ));
        assert!(are_isomorphic(&a, &fano()).is_err());
    }

    #[test]
    fn automorphism_tests() {
        let d = sqs8();
        // x ↦ x ⊕ 1 preserves zero-XOR sets
        let t = Permutation::from_fn(8, |x| x ^ 1);
        let g = PermGroup::new(8, vec![t]).unwrap();
        assert!(preserves_design(&g, &d).unwrap());
        let swap = Permutation::from_cycles(8, "(2 4)(3 5)").unwrap();
        let bad = Permutation::from_cycles(8, "(0 1)").unwrap();
        let h = PermGroup::new(8, vec![swap]).unwrap();
        assert!(preserves_design(&h, &d).unwrap());
        let k = PermGroup::new(8, vec![bad]).unwrap();
        assert!(!preserves_design(&k, &d).unwrap());
        assert!(matches!(
            is_flag_transitive(&d, &k),
            Err(DesignError::NotAutomorphism)
        ));
        let id = PermGroup::trivial(8);
        assert!(preserves_design(&id, &d).unwrap());
        assert!(!is_flag_transitive(&d, &id).unwrap());
        assert!(!is_block_transitive(&d, &id).unwrap());
        assert!(matches!(
            preserves_design(&PermGroup::trivial(7), &d),
            Err(DesignError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn file_format() {
        let d = sqs8();
        let text = d.to_file_string();
        assert!(text.starts_with("{\"v\": 8, \"k\": 4, \"blocks\": [[0,1,2,3], [0,1,4,5], "));
        assert!(text.ends_with("[4,5,6,7]]}\n"));
        assert_eq!(Design::parse_file(&text).unwrap(), d);
        // whitespace-tolerant
        let spaced = "{ \"v\" : 4 , \"k\":4,\n \"blocks\": [ [0, 1, 2, 3] ] }";
        assert_eq!(Design::parse_file(spaced).unwrap().block_count(), 1);
    }

    #[test]
    fn file_reader_rejects_non_canonical_input() {
        let dup = "{\"v\": 4, \"k\": 2, \"blocks\": [[0,1], [0,1]]}";
        assert!(matches!(
            Design::parse_file(dup),
            Err(DesignError::NotCanonical { index: 1, .. })
        ));
        let unsorted = "{\"v\": 4, \"k\": 2, \"blocks\": [[1,0]]}";
        assert!(matches!(
            Design::parse_file(unsorted),
            Err(DesignError::NotCanonical { index: 0, .. })
        ));
        let out_of_order = "{\"v\": 4, \"k\": 2, \"blocks\": [[0,2], [0,1]]}";
        assert!(matches!(
            Design::parse_file(out_of_order),
            Err(DesignError::NotCanonical { index: 1, .. })
        ));
        let range = "{\"v\": 4, \"k\": 2, \"blocks\": [[0,9]]}";
        assert!(matches!(
            Design::parse_file(range),
            Err(DesignError::BadBlock { index: 0, .. })
        ));
        let garbage = "{\"v\": 4,\n \"k\": }";
        assert!(matches!(
            Design::parse_file(garbage),
            Err(DesignError::Parse { line: 2, .. })
        ));
    }
}
