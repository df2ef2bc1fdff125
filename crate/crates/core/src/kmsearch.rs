//! Kramer–Mesner search for SQS invariant under a prescribed group.
//!
//! Rows of the matrix are G-orbits on 3-subsets, columns are G-orbits on
//! 4-subsets. Entry `(T, K)` counts the blocks of orbit `K` containing the
//! representative triple of `T`. A set of columns whose rows all sum to one
//! is exactly a G-invariant SQS.

use thiserror::Error;

use crate::designs::{are_isomorphic, is_flag_transitive, verify_sqs, Design, DesignError};
use crate::perm::{binomial, PermError, PermGroup, SubsetOrbits};

pub const KM_MAX_QUADRUPLES: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KmError {
    #[error("C({v},4) = {count} exceeds the search guard {KM_MAX_QUADRUPLES}")]
    Guard { v: usize, count: u64 },
    #[error("group has degree {group} but v = {v}")]
    DegreeMismatch { group: usize, v: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Design(#[from] DesignError),
}

#[derive(Clone, Debug)]
pub struct OrbitIncidenceMatrix {
    pub v: usize,
    pub row_reps: Vec<Vec<u32>>,
    pub row_lengths: Vec<u64>,
    pub col_reps: Vec<Vec<u32>>,
    pub col_lengths: Vec<u64>,
    /// `entries[row][col]`
    pub entries: Vec<Vec<u32>>,
    quads: SubsetOrbits,
}

impl OrbitIncidenceMatrix {
    pub fn rows(&self) -> usize {
        self.row_reps.len()
    }

    pub fn cols(&self) -> usize {
        self.col_reps.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> u32 {
        self.entries[row][col]
    }

    /// Entries of the row containing `triple`, computed from that triple
    /// rather than from the stored representative.
    pub fn row_from_triple(&self, triple: &[u32]) -> Vec<u32> {
        count_row(&self.quads, self.v, triple, self.cols())
    }

    /// Column index of the orbit containing a 4-subset.
    pub fn column_of(&self, quad: &[u32]) -> usize {
        self.quads.orbit_of(quad)
    }
}

fn count_row(quads: &SubsetOrbits, v: usize, triple: &[u32], cols: usize) -> Vec<u32> {
    let mut row = vec![0u32; cols];
    for x in 0..v as u32 {
        if !triple.contains(&x) {
            let mut q = triple.to_vec();
            q.push(x);
            row[quads.orbit_of(&q)] += 1;
        }
    }
    row
}

pub fn build_km_matrix(g: &PermGroup, v: usize) -> Result<OrbitIncidenceMatrix, KmError> {
    if g.degree() != v {
        return Err(KmError::DegreeMismatch {
            group: g.degree(),
            v,
        });
    }
    let count = binomial(v as u64, 4);
    if count > KM_MAX_QUADRUPLES {
        return Err(KmError::Guard { v, count });
    }
    let triples = g.subset_orbits(3)?;
    let quads = g.subset_orbits(4)?;
    let cols = quads.len();
    let entries = triples
        .representatives
        .iter()
        .map(|t| count_row(&quads, v, t, cols))
        .collect();
    Ok(OrbitIncidenceMatrix {
        v,
        row_reps: triples.representatives,
        row_lengths: triples.lengths,
        col_reps: quads.representatives.clone(),
        col_lengths: quads.lengths.clone(),
        entries,
        quads,
    })
}

/// Every set of columns covering each row exactly once, each selection
/// sorted ascending, selections in lexicographic order.
pub fn solve_exact_cover(m: &OrbitIncidenceMatrix) -> Vec<Vec<usize>> {
    let usable: Vec<usize> = (0..m.cols())
        .filter(|&c| (0..m.rows()).all(|r| m.entries[r][c] <= 1))
        .collect();
    let mut covered = vec![false; m.rows()];
    let mut chosen = Vec::new();
    let mut out = Vec::new();
    cover(m, &usable, &mut covered, &mut chosen, &mut out);
    for sel in &mut out {
        sel.sort_unstable();
    }
    out.sort();
    out
}

fn cover(
    m: &OrbitIncidenceMatrix,
    usable: &[usize],
    covered: &mut [bool],
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let Some(row) = covered.iter().position(|&c| !c) else {
        out.push(chosen.clone());
        return;
    };
    for &c in usable {
        if m.entries[row][c] != 1 {
            continue;
        }
        let hits: Vec<usize> = (0..m.rows()).filter(|&r| m.entries[r][c] == 1).collect();
        if hits.iter().any(|&r| covered[r]) {
            continue;
        }
        for &r in &hits {
            covered[r] = true;
        }
        chosen.push(c);
        cover(m, usable, covered, chosen, out);
        chosen.pop();
        for &r in &hits {
            covered[r] = false;
        }
    }
}

/// The block set formed by the union of the selected column orbits.
pub fn design_from_selection(
    g: &PermGroup,
    m: &OrbitIncidenceMatrix,
    selection: &[usize],
) -> Result<Design, KmError> {
    let mut blocks = Vec::new();
    for &c in selection {
        blocks.extend(g.orbit_of_set(&m.col_reps[c])?);
    }
    Ok(Design::new(m.v, 4, blocks)?)
}

/// All G-invariant SQS on the points of G.
pub fn find_invariant_sqs(g: &PermGroup) -> Result<Vec<Design>, KmError> {
    let m = build_km_matrix(g, g.degree())?;
    solve_exact_cover(&m)
        .iter()
        .map(|sel| design_from_selection(g, &m, sel))
        .collect()
}

fn stabilizer_transitive_on_block(g: &PermGroup, block: &[u32]) -> Result<bool, KmError> {
    let gens = g.setwise_stabilizer_generators(block)?;
    let mut reached = vec![block[0]];
    let mut head = 0;
    while head < reached.len() {
        let x = reached[head];
        for h in &gens {
            let y = h.apply(x);
            if !reached.contains(&y) {
                reached.push(y);
            }
        }
        head += 1;
    }
    Ok(reached.len() == block.len())
}

/// Every labeled SQS on which G acts flag-transitively: single-column
/// selections whose block stabilizer is transitive on the block.
pub fn find_flag_transitive_sqs_labeled(g: &PermGroup) -> Result<Vec<Design>, KmError> {
    let m = build_km_matrix(g, g.degree())?;
    let mut found = Vec::new();
    for c in 0..m.cols() {
        if !(0..m.rows()).all(|r| m.entries[r][c] == 1) {
            continue;
        }
        if !stabilizer_transitive_on_block(g, &m.col_reps[c])? {
            continue;
        }
        let design = design_from_selection(g, &m, &[c])?;
        if verify_sqs(&design)?.is_valid() && is_flag_transitive(&design, g)? {
            found.push(design);
        }
    }
    Ok(found)
}

/// Flag-transitive SQS for G, one per isomorphism class (the first found in
/// column order). Classes are merged only when the isomorphism test runs
/// within its guard.
pub fn find_flag_transitive_sqs(g: &PermGroup) -> Result<Vec<Design>, KmError> {
    let mut classes: Vec<Design> = Vec::new();
    for d in find_flag_transitive_sqs_labeled(g)? {
        let mut new_class = true;
        for c in &classes {
            match are_isomorphic(c, &d) {
                Ok(Some(_)) => {
                    new_class = false;
                    break;
                }
                Ok(None) | Err(DesignError::IsoGuard { .. }) => {}
                Err(e) => return Err(e.into()),
            }
        }
        if new_class {
            classes.push(d);
        }
    }
    Ok(classes)
}
