//! Explicit generator sets for the groups that act on the designs.
//!
//! Projective-line groups act on `q + 1` points labeled with ∞ = 0 and the
//! field element of enumeration index `i` at point `i + 1`. Affine groups act
//! on `p^d` points labeled by the base-p integer of the coordinate vector,
//! which for the one-dimensional groups is the field-element index.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::field::{prime_power, FieldElement, FieldError, FiniteField};
use crate::perm::{PermError, PermGroup, Permutation, MAX_DEGREE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("{0}")]
    Precondition(String),
    #[error("unknown group spec {0:?}; expected e.g. AGL(3,2), AGammaL(1,32), PSL(2,7), PGL(2,9), PSigmaL(2,9), PGammaL(2,9), A7_16, Netto(19)")]
    UnknownSpec(String),
}

/// Labels of the projective line GF(q) ∪ {∞}: ∞ is point 0, field element
/// `i` is point `i + 1`.
#[derive(Clone, Debug)]
pub struct ProjectiveLine {
    field: FiniteField,
    elements: Vec<FieldElement>,
}

impl ProjectiveLine {
    pub const INFINITY: u32 = 0;

    pub fn new(field: FiniteField) -> Self {
        let elements = field.elements().collect();
        ProjectiveLine { field, elements }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.field.order() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point_of(&self, a: &FieldElement) -> u32 {
        self.field.index_of(a) as u32 + 1
    }

    /// `None` is ∞.
    pub fn element_at(&self, point: u32) -> Option<&FieldElement> {
        (point != Self::INFINITY).then(|| &self.elements[point as usize - 1])
    }

    /// The map x ↦ (ax + b)/(cx + d).
    pub fn mobius(
        &self,
        a: &FieldElement,
        b: &FieldElement,
        c: &FieldElement,
        d: &FieldElement,
    ) -> Permutation {
        let f = &self.field;
        let det = f.sub_unchecked(&f.mul_unchecked(a, d), &f.mul_unchecked(b, c));
        assert!(!det.is_zero(), "singular fractional-linear map");
        Permutation::from_fn(self.len(), |pt| match self.element_at(pt as u32) {
            None if c.is_zero() => Self::INFINITY as usize,
            None => self.point_of(&f.mul_unchecked(a, &f.inv_unchecked(c))) as usize,
            Some(x) => {
                let den = f.add_unchecked(&f.mul_unchecked(c, x), d);
                if den.is_zero() {
                    Self::INFINITY as usize
                } else {
                    let num = f.add_unchecked(&f.mul_unchecked(a, x), b);
                    self.point_of(&f.mul_unchecked(&num, &f.inv_unchecked(&den))) as usize
                }
            }
        })
    }

    /// x ↦ x^p with ∞ fixed.
    pub fn frobenius(&self) -> Permutation {
        let p = self.field.characteristic();
        Permutation::from_fn(self.len(), |pt| match self.element_at(pt as u32) {
            None => 0,
            Some(x) => self.point_of(&self.field.pow_unchecked(x, p)) as usize,
        })
    }
}

impl FiniteField {
    pub(crate) fn sub_unchecked(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add_unchecked(a, &self.neg_unchecked(b))
    }

    pub(crate) fn inv_unchecked(&self, a: &FieldElement) -> FieldElement {
        self.pow_unchecked(a, self.order() as u64 - 2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum LineGroup {
    Psl,
    Pgl,
    PSigmaL,
    PGammaL,
}

fn line_group(q: u64, kind: LineGroup) -> Result<PermGroup, GroupError> {
    let line = ProjectiveLine::new(FiniteField::with_order(q)?);
    let f = line.field();
    let (zero, one) = (f.zero(), f.one());
    let g = f.primitive_element();
    let translate = line.mobius(&one, &one, &zero, &one);
    let mut gens = vec![translate];
    match kind {
        LineGroup::Pgl | LineGroup::PGammaL => {
            gens.push(line.mobius(&g, &zero, &zero, &one));
            gens.push(line.mobius(&zero, &one, &one, &zero));
        }
        LineGroup::Psl | LineGroup::PSigmaL => {
            let g2 = f.mul_unchecked(&g, &g);
            if g2 != one {
                gens.push(line.mobius(&g2, &zero, &zero, &one));
            }
            gens.push(line.mobius(&zero, &f.neg_unchecked(&one), &one, &zero));
        }
    }
    if matches!(kind, LineGroup::PSigmaL | LineGroup::PGammaL) && f.degree() > 1 {
        gens.push(line.frobenius());
    }
    Ok(PermGroup::new(line.len(), gens)?)
}

fn require_line_order(q: u64) -> Result<(), GroupError> {
    if q < 4 {
        return Err(GroupError::Precondition(format!(
            "projective line groups need q >= 4, got {q}"
        )));
    }
    Ok(())
}

/// PSL(2,q) on the projective line: x ↦ x+1, x ↦ g²x, x ↦ −1/x.
pub fn psl2(q: u64) -> Result<PermGroup, GroupError> {
    require_line_order(q)?;
    line_group(q, LineGroup::Psl)
}

/// PGL(2,q): x ↦ x+1, x ↦ gx, x ↦ 1/x.
pub fn pgl2(q: u64) -> Result<PermGroup, GroupError> {
    require_line_order(q)?;
    line_group(q, LineGroup::Pgl)
}

/// PSL(2,q) extended by the Frobenius map.
pub fn psigmal2(q: u64) -> Result<PermGroup, GroupError> {
    require_line_order(q)?;
    line_group(q, LineGroup::PSigmaL)
}

/// PGL(2,q) extended by the Frobenius map.
pub fn pgammal2(q: u64) -> Result<PermGroup, GroupError> {
    require_line_order(q)?;
    line_group(q, LineGroup::PGammaL)
}

/// PGL(2,q) without the q >= 4 restriction, for the trivial SQS(4).
pub(crate) fn pgl2_any(q: u64) -> Result<PermGroup, GroupError> {
    line_group(q, LineGroup::Pgl)
}

fn affine_line(q: u64, frobenius: bool) -> Result<PermGroup, GroupError> {
    let f = FiniteField::with_order(q)?;
    if f.order() > MAX_DEGREE {
        return Err(PermError::DegreeTooLarge(f.order()).into());
    }
    let els: Vec<FieldElement> = f.elements().collect();
    let g = f.primitive_element();
    let one = f.one();
    let map = |h: &dyn Fn(&FieldElement) -> FieldElement| {
        Permutation::from_fn(els.len(), |i| f.index_of(&h(&els[i])))
    };
    let mut gens = vec![map(&|x| f.add_unchecked(x, &one))];
    if g != one {
        gens.push(map(&|x| f.mul_unchecked(x, &g)));
    }
    if frobenius && f.degree() > 1 {
        let p = f.characteristic();
        gens.push(map(&|x| f.pow_unchecked(x, p)));
    }
    Ok(PermGroup::new(els.len(), gens)?)
}

/// AGL(1,q): x ↦ ax + b.
pub fn agl1(q: u64) -> Result<PermGroup, GroupError> {
    affine_line(q, false)
}

/// AΓL(1,q): AGL(1,q) extended by the Frobenius map.
pub fn a_gamma_l1(q: u64) -> Result<PermGroup, GroupError> {
    affine_line(q, true)
}

/// x ↦ a²x + b on GF(q), q odd.
pub fn netto_group(q: u64) -> Result<PermGroup, GroupError> {
    if q.is_multiple_of(2) {
        return Err(GroupError::Precondition(format!(
            "the Netto group needs odd q, got {q}"
        )));
    }
    let f = FiniteField::with_order(q)?;
    let els: Vec<FieldElement> = f.elements().collect();
    let one = f.one();
    let g = f.primitive_element();
    let g2 = f.mul_unchecked(&g, &g);
    let mut gens = vec![Permutation::from_fn(els.len(), |i| {
        f.index_of(&f.add_unchecked(&els[i], &one))
    })];
    if g2 != one {
        gens.push(Permutation::from_fn(els.len(), |i| {
            f.index_of(&f.mul_unchecked(&els[i], &g2))
        }));
    }
    Ok(PermGroup::new(els.len(), gens)?)
}

/// Coordinates of point `x` in GF(p)^d, least significant first.
fn coords(mut x: usize, p: usize, d: usize) -> Vec<usize> {
    (0..d)
        .map(|_| {
            let c = x % p;
            x /= p;
            c
        })
        .collect()
}

fn point(v: &[usize], p: usize) -> usize {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// AGL(d,p) on GF(p)^d: translations by the basis vectors, adjacent
/// elementary transvections and diag(ω, 1, .., 1) for a primitive root ω.
pub fn agl(d: u32, p: u64) -> Result<PermGroup, GroupError> {
    let f = FiniteField::new(p, 1)?;
    let p = p as usize;
    let d = d as usize;
    if d == 0 {
        return Err(FieldError::ZeroDegree.into());
    }
    let n = p
        .checked_pow(d as u32)
        .filter(|&n| n <= MAX_DEGREE)
        .ok_or(PermError::DegreeTooLarge(usize::MAX))?;
    let linear = |m: &dyn Fn(&mut Vec<usize>)| {
        Permutation::from_fn(n, |x| {
            let mut v = coords(x, p, d);
            m(&mut v);
            point(&v, p)
        })
    };
    let mut gens = Vec::new();
    for i in 0..d {
        gens.push(linear(&|v| v[i] = (v[i] + 1) % p));
    }
    for i in 0..d.saturating_sub(1) {
        gens.push(linear(&|v| v[i] = (v[i] + v[i + 1]) % p));
        gens.push(linear(&|v| v[i + 1] = (v[i + 1] + v[i]) % p));
    }
    let omega = f.index_of(&f.primitive_element());
    if omega != 1 {
        gens.push(linear(&|v| v[0] = v[0] * omega % p));
    }
    Ok(PermGroup::new(n, gens)?)
}

/// 4×4 matrix over GF(2); row `i` is bits `4i..4i+4`, and the image of a
/// column vector `v` has bit `i` equal to the parity of `row_i & v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Matrix4(pub u16);

impl Gf2Matrix4 {
    pub const IDENTITY: Gf2Matrix4 = Gf2Matrix4(0b1000_0100_0010_0001);

    fn row(self, i: usize) -> u16 {
        (self.0 >> (4 * i)) & 0xF
    }

    pub fn apply(self, v: u16) -> u16 {
        (0..4).fold(0, |acc, i| {
            acc | ((((self.row(i) & v).count_ones() & 1) as u16) << i)
        })
    }

    /// First `self`, then `other`.
    pub fn then(self, other: Gf2Matrix4) -> Gf2Matrix4 {
        // column j of the product is other(self(e_j))
        let mut out = 0u16;
        for j in 0..4 {
            let col = other.apply(self.apply(1 << j));
            for i in 0..4 {
                if col >> i & 1 == 1 {
                    out |= 1 << (4 * i + j);
                }
            }
        }
        Gf2Matrix4(out)
    }

    pub fn is_invertible(self) -> bool {
        let images: HashSet<u16> = (0..16).map(|v| self.apply(v)).collect();
        images.len() == 16
    }

    /// Multiplicative order; `None` for singular matrices.
    pub fn order(self) -> Option<u32> {
        if !self.is_invertible() {
            return None;
        }
        let mut m = self;
        let mut n = 1;
        while m != Self::IDENTITY {
            m = m.then(self);
            n += 1;
        }
        Some(n)
    }

    /// Action on the 16 vectors of GF(2)^4.
    pub fn to_permutation(self) -> Permutation {
        Permutation::from_fn(16, |v| self.apply(v as u16) as usize)
    }
}

/// Generators of the A₇ subgroup of GL(4,2) used by [`a7_16`], as found by
/// [`search_a7_in_gl42`].
pub const A7_GENERATORS: [Gf2Matrix4; 2] = [Gf2Matrix4(0x125e), Gf2Matrix4(0x157b)];

/// Element orders occurring in A₇.
pub const A7_ORDER_SPECTRUM: [u32; 7] = [1, 2, 3, 4, 5, 6, 7];

fn element_order_spectrum(gens: &[Gf2Matrix4]) -> Vec<u32> {
    let mut seen = HashSet::from([Gf2Matrix4::IDENTITY]);
    let mut queue = VecDeque::from([Gf2Matrix4::IDENTITY]);
    while let Some(m) = queue.pop_front() {
        for &g in gens {
            let h = m.then(g);
            if seen.insert(h) {
                queue.push_back(h);
            }
        }
    }
    let mut orders: Vec<u32> = seen.iter().filter_map(|m| m.order()).collect();
    orders.sort_unstable();
    orders.dedup();
    orders
}

/// Scans GL(4,2) in ascending encoding for the first element of order 7
/// that, paired with an element of order 5 (also ascending), generates a
/// group of order 2520 with the element orders of A₇.
pub fn search_a7_in_gl42() -> [Gf2Matrix4; 2] {
    let by_order = |k: u32| -> Vec<Gf2Matrix4> {
        (0..=u16::MAX)
            .map(Gf2Matrix4)
            .filter(|m| m.order() == Some(k))
            .collect()
    };
    let sevens = by_order(7);
    let fives = by_order(5);
    for &a in &sevens {
        for &b in &fives {
            let group = PermGroup::new(16, vec![a.to_permutation(), b.to_permutation()])
                .expect("degree 16");
            if group.order() == 2520 && element_order_spectrum(&[a, b]) == A7_ORDER_SPECTRUM {
                return [a, b];
            }
        }
    }
    unreachable!("GL(4,2) ≅ A8 contains A7")
}

/// The affine group 2⁴:A₇ on 16 points.
pub fn a7_16() -> PermGroup {
    let mut gens: Vec<Permutation> = (0..4)
        .map(|i| Permutation::from_fn(16, |v| v ^ (1 << i)))
        .collect();
    gens.extend(A7_GENERATORS.iter().map(|m| m.to_permutation()));
    PermGroup::new(16, gens).expect("degree 16")
}

/// A named group from the catalog, parsed from strings such as `PSL(2,7)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// AGL(d,p); `AGL(1,q)` with q a prime power parses as [`GroupSpec::Agl1`].
    Agl {
        d: u32,
        p: u64,
    },
    Agl1 {
        q: u64,
    },
    AGammaL1 {
        q: u64,
    },
    Psl2 {
        q: u64,
    },
    Pgl2 {
        q: u64,
    },
    PSigmaL2 {
        q: u64,
    },
    PGammaL2 {
        q: u64,
    },
    A7_16,
    Netto {
        q: u64,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<PermGroup, GroupError> {
        match *self {
            GroupSpec::Agl { d, p } => agl(d, p),
            GroupSpec::Agl1 { q } => agl1(q),
            GroupSpec::AGammaL1 { q } => a_gamma_l1(q),
            GroupSpec::Psl2 { q } => psl2(q),
            GroupSpec::Pgl2 { q } => pgl2(q),
            GroupSpec::PSigmaL2 { q } => psigmal2(q),
            GroupSpec::PGammaL2 { q } => pgammal2(q),
            GroupSpec::A7_16 => Ok(a7_16()),
            GroupSpec::Netto { q } => netto_group(q),
        }
    }

    pub fn degree(&self) -> u64 {
        match *self {
            GroupSpec::Agl { d, p } => p.pow(d),
            GroupSpec::Agl1 { q } | GroupSpec::AGammaL1 { q } | GroupSpec::Netto { q } => q,
            GroupSpec::Psl2 { q }
            | GroupSpec::Pgl2 { q }
            | GroupSpec::PSigmaL2 { q }
            | GroupSpec::PGammaL2 { q } => q + 1,
            GroupSpec::A7_16 => 16,
        }
    }

    /// Closed-form group order.
    pub fn formula_order(&self) -> u128 {
        let pgl = |q: u64| (q as u128) * (q as u128 * q as u128 - 1);
        let psl = |q: u64| pgl(q) / if q.is_multiple_of(2) { 1 } else { 2 };
        let ext = |q: u64| prime_power(q).map_or(1, |(_, e)| e as u128);
        match *self {
            GroupSpec::Agl { d, p } => {
                let n = (p as u128).pow(d);
                n * (0..d).map(|i| n - (p as u128).pow(i)).product::<u128>()
            }
            GroupSpec::Agl1 { q } => q as u128 * (q as u128 - 1),
            GroupSpec::AGammaL1 { q } => q as u128 * (q as u128 - 1) * ext(q),
            GroupSpec::Psl2 { q } => psl(q),
            GroupSpec::Pgl2 { q } => pgl(q),
            GroupSpec::PSigmaL2 { q } => psl(q) * ext(q),
            GroupSpec::PGammaL2 { q } => pgl(q) * ext(q),
            GroupSpec::A7_16 => 16 * 2520,
            GroupSpec::Netto { q } => q as u128 * (q as u128 - 1) / 2,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Agl { d, p } => write!(f, "AGL({d},{p})"),
            GroupSpec::Agl1 { q } => write!(f, "AGL(1,{q})"),
            GroupSpec::AGammaL1 { q } => write!(f, "AGammaL(1,{q})"),
            GroupSpec::Psl2 { q } => write!(f, "PSL(2,{q})"),
            GroupSpec::Pgl2 { q } => write!(f, "PGL(2,{q})"),
            GroupSpec::PSigmaL2 { q } => write!(f, "PSigmaL(2,{q})"),
            GroupSpec::PGammaL2 { q } => write!(f, "PGammaL(2,{q})"),
            GroupSpec::A7_16 => write!(f, "A7_16"),
            GroupSpec::Netto { q } => write!(f, "Netto({q})"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || GroupError::UnknownSpec(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "A7_16" {
            return Ok(GroupSpec::A7_16);
        }
        let (name, args) = compact
            .strip_suffix(')')
            .and_then(|t| t.split_once('('))
            .ok_or_else(unknown)?;
        let args: Vec<u64> = args
            .split(',')
            .map(|a| a.parse().map_err(|_| unknown()))
            .collect::<Result<_, _>>()?;
        let prime_power_q = |q: u64| prime_power(q).map(|_| q).ok_or_else(unknown);
        let spec = match (name, args.as_slice()) {
            ("AGL", &[1, q]) => GroupSpec::Agl1 {
                q: prime_power_q(q)?,
            },
            ("AGL", &[d, p]) if d >= 1 && crate::field::is_prime(p) => {
                GroupSpec::Agl { d: d as u32, p }
            }
            ("AGammaL" | "AΓL", &[1, q]) => GroupSpec::AGammaL1 {
                q: prime_power_q(q)?,
            },
            ("PSL", &[2, q]) => GroupSpec::Psl2 {
                q: prime_power_q(q)?,
            },
            ("PGL", &[2, q]) => GroupSpec::Pgl2 {
                q: prime_power_q(q)?,
            },
            ("PSigmaL" | "PΣL", &[2, q]) => GroupSpec::PSigmaL2 {
                q: prime_power_q(q)?,
            },
            ("PGammaL" | "PΓL", &[2, q]) => GroupSpec::PGammaL2 {
                q: prime_power_q(q)?,
            },
            ("Netto", &[q]) => GroupSpec::Netto {
                q: prime_power_q(q)?,
            },
            _ => return Err(unknown()),
        };
        Ok(spec)
    }
}
