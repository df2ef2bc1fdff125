//! The concrete designs: Boolean, PGL and Netto quadruple systems, and the
//! triple systems that appear as their derived designs.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::designs::{Design, DesignError};
use crate::field::{FieldError, FiniteField};
use crate::groups::{self, GroupError, ProjectiveLine};
use crate::perm::{PermError, PermGroup};

pub const BOOLEAN_MAX_D: u32 = 6;
pub const PGL_MAX_D: u32 = 5;
pub const AG3_MAX_D: u32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(
        "unknown construction {0:?}; expected boolean:d, pgl:d, netto:q, netto3:q or ag3lines:d"
    )]
    UnknownName(String),
}

/// A named construction, written `boolean:3`, `pgl:2`, `netto:19`,
/// `netto3:19` or `ag3lines:2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstructionTag {
    BooleanSqs(u32),
    PglSqs(u32),
    NettoSqs(u64),
    NettoTriples(u64),
    Ag3Lines(u32),
}

impl ConstructionTag {
    pub fn build(&self) -> Result<Design, ConstructError> {
        match *self {
            ConstructionTag::BooleanSqs(d) => boolean_sqs(d),
            ConstructionTag::PglSqs(d) => pgl_sqs(d),
            ConstructionTag::NettoSqs(q) => netto_sqs(q),
            ConstructionTag::NettoTriples(q) => netto_triples(q),
            ConstructionTag::Ag3Lines(d) => ag3_lines(d),
        }
    }
}

impl fmt::Display for ConstructionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionTag::BooleanSqs(d) => write!(f, "boolean:{d}"),
            ConstructionTag::PglSqs(d) => write!(f, "pgl:{d}"),
            ConstructionTag::NettoSqs(q) => write!(f, "netto:{q}"),
            ConstructionTag::NettoTriples(q) => write!(f, "netto3:{q}"),
            ConstructionTag::Ag3Lines(d) => write!(f, "ag3lines:{d}"),
        }
    }
}

impl FromStr for ConstructionTag {
    type Err = ConstructError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || ConstructError::UnknownName(s.to_string());
        let (name, arg) = s.trim().split_once(':').ok_or_else(unknown)?;
        let n: u64 = arg.parse().map_err(|_| unknown())?;
        let small = || u32::try_from(n).map_err(|_| unknown());
        Ok(match name {
            "boolean" => ConstructionTag::BooleanSqs(small()?),
            "pgl" => ConstructionTag::PglSqs(small()?),
            "netto" => ConstructionTag::NettoSqs(n),
            "netto3" => ConstructionTag::NettoTriples(n),
            "ag3lines" => ConstructionTag::Ag3Lines(small()?),
            _ => return Err(unknown()),
        })
    }
}

/// The design formed by the G-orbit of one base block.
pub fn orbit_design(g: &PermGroup, base: &[u32]) -> Result<Design, ConstructError> {
    let blocks = g.orbit_of_set(base)?;
    Ok(Design::new(g.degree(), base.len(), blocks)?)
}

/// Points and planes of AG(d,2): the 4-subsets of GF(2)^d with zero sum.
pub fn boolean_sqs(d: u32) -> Result<Design, ConstructError> {
    if !(3..=BOOLEAN_MAX_D).contains(&d) {
        return Err(ConstructError::Precondition(format!(
            "boolean_sqs needs 3 <= d <= {BOOLEAN_MAX_D}, got {d}"
        )));
    }
    let n = 1u32 << d;
    let mut blocks = Vec::new();
    for w in 0..n {
        for x in w + 1..n {
            for y in x + 1..n {
                let z = w ^ x ^ y;
                if z > y {
                    blocks.push(vec![w, x, y, z]);
                }
            }
        }
    }
    Ok(Design::new(n as usize, 4, blocks)?)
}

/// The PGL(2,3^d)-orbit of GF(3) ∪ {∞}.
pub fn pgl_sqs(d: u32) -> Result<Design, ConstructError> {
    if !(1..=PGL_MAX_D).contains(&d) {
        return Err(ConstructError::Precondition(format!(
            "pgl_sqs needs 1 <= d <= {PGL_MAX_D}, got {d}"
        )));
    }
    let q = 3u64.pow(d);
    let g = groups::pgl2_any(q)?;
    // ∞ and the field elements 0, 1, 2 (indices 0..3)
    orbit_design(&g, &[ProjectiveLine::INFINITY, 1, 2, 3])
}

fn require_netto_order(q: u64) -> Result<(), ConstructError> {
    if q % 12 != 7 {
        return Err(ConstructError::Precondition(format!(
            "Netto systems need q ≡ 7 (mod 12), got {q}"
        )));
    }
    Ok(())
}

/// The PSL(2,q)-orbit of {∞, 0, 1, ε} with ε the canonical primitive sixth
/// root of unity, q ≡ 7 (mod 12).
pub fn netto_sqs(q: u64) -> Result<Design, ConstructError> {
    require_netto_order(q)?;
    let line = ProjectiveLine::new(FiniteField::with_order(q)?);
    let eps = line.field().primitive_sixth_root()?;
    let base = [
        ProjectiveLine::INFINITY,
        line.point_of(&line.field().zero()),
        line.point_of(&line.field().one()),
        line.point_of(&eps),
    ];
    orbit_design(&groups::psl2(q)?, &base)
}

/// The Netto triple system: orbit of {0, 1, ε} under x ↦ a²x + b.
pub fn netto_triples(q: u64) -> Result<Design, ConstructError> {
    require_netto_order(q)?;
    let f = FiniteField::with_order(q)?;
    let eps = f.index_of(&f.primitive_sixth_root()?) as u32;
    orbit_design(&groups::netto_group(q)?, &[0, 1, eps])
}

/// Points and lines of AG(d,3), points labeled by base-3 coordinate integers.
pub fn ag3_lines(d: u32) -> Result<Design, ConstructError> {
    if !(1..=AG3_MAX_D).contains(&d) {
        return Err(ConstructError::Precondition(format!(
            "ag3_lines needs 1 <= d <= {AG3_MAX_D}, got {d}"
        )));
    }
    let n = 3usize.pow(d);
    let add = |a: usize, b: usize| {
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..d {
            out += ((a % 3 + b % 3) % 3) * place;
            a /= 3;
            b /= 3;
            place *= 3;
        }
        out
    };
    let mut blocks = Vec::new();
    for base in 0..n {
        for dir in 1..n {
            let second = add(base, dir);
            let third = add(second, dir);
            let mut line = vec![base as u32, second as u32, third as u32];
            line.sort_unstable();
            if line[0] == base as u32 && !blocks.contains(&line) {
                blocks.push(line);
            }
        }
    }
    Ok(Design::new(n, 3, blocks)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{derived_design, verify_sqs, verify_sts};

    #[test]
    fn boolean_counts() {
        assert_eq!(boolean_sqs(3).unwrap().block_count(), 14);
        assert_eq!(boolean_sqs(4).unwrap().block_count(), 140);
        assert!(boolean_sqs(2).is_err());
        assert!(boolean_sqs(7).is_err());
    }

    #[test]
    fn boolean_blocks_have_zero_xor() {
        for d in 3..=5 {
            let design = boolean_sqs(d).unwrap();
            assert!(design
                .blocks()
                .iter()
                .all(|b| b[0] ^ b[1] ^ b[2] ^ b[3] == 0));
            let expected = (1u64 << (d - 2)) * ((1 << d) - 1) * ((1 << (d - 1)) - 1) / 3;
            assert_eq!(design.block_count() as u64, expected);
        }
    }

    #[test]
    fn pgl_designs() {
        let trivial = pgl_sqs(1).unwrap();
        assert_eq!(trivial.blocks(), &[vec![0, 1, 2, 3]]);
        let d2 = pgl_sqs(2).unwrap();
        assert_eq!(d2.block_count(), 30);
        assert!(verify_sqs(&d2).unwrap().is_valid());
        assert!(pgl_sqs(0).is_err());
    }

    #[test]
    fn netto_designs() {
        let n7 = netto_sqs(7).unwrap();
        assert_eq!(n7.block_count(), 14);
        assert!(verify_sqs(&n7).unwrap().is_valid());
        assert!(netto_sqs(13).is_err());
        assert!(netto_triples(13).is_err());
        assert_eq!(netto_triples(7).unwrap().block_count(), 7);
        assert_eq!(netto_triples(19).unwrap().block_count(), 57);
        assert_eq!(netto_triples(31).unwrap().block_count(), 155);
        for q in [7, 19, 31] {
            assert!(verify_sts(&netto_triples(q).unwrap()).unwrap().is_valid());
        }
    }

    #[test]
    fn affine_lines() {
        assert_eq!(ag3_lines(1).unwrap().block_count(), 1);
        assert_eq!(ag3_lines(2).unwrap().block_count(), 12);
        assert_eq!(ag3_lines(3).unwrap().block_count(), 117);
        for d in 1..=3 {
            assert!(verify_sts(&ag3_lines(d).unwrap()).unwrap().is_valid());
        }
    }

    #[test]
    fn affine_lines_are_an_agl1_orbit() {
        for d in 1..=3 {
            let g = groups::agl1(3u64.pow(d)).unwrap();
            assert_eq!(orbit_design(&g, &[0, 1, 2]).unwrap(), ag3_lines(d).unwrap());
        }
    }

    #[test]
    fn derived_at_infinity_literally() {
        for d in 1..=3 {
            let der = derived_design(&pgl_sqs(d).unwrap(), 0).unwrap();
            assert_eq!(der, ag3_lines(d).unwrap(), "d = {d}");
        }
        for q in [7, 19, 31] {
            let der = derived_design(&netto_sqs(q).unwrap(), 0).unwrap();
            assert_eq!(der, netto_triples(q).unwrap(), "q = {q}");
        }
    }

    #[test]
    fn tags() {
        for s in ["boolean:3", "pgl:2", "netto:19", "netto3:7", "ag3lines:2"] {
            let tag: ConstructionTag = s.parse().unwrap();
            assert_eq!(tag.to_string(), s);
        }
        for bad in ["boolean", "cube:3", "netto:x", ""] {
            assert!(matches!(
                bad.parse::<ConstructionTag>(),
                Err(ConstructError::UnknownName(_))
            ));
        }
        assert_eq!(
            "netto3:19"
                .parse::<ConstructionTag>()
                .unwrap()
                .build()
                .unwrap()
                .block_count(),
            57
        );
    }
}
