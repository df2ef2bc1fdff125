//! Exact arithmetic in GF(p^d).
//!
//! Elements are coefficient vectors over Z_p in powers of the adjoined root,
//! little-endian. The canonical enumeration reads a coefficient vector as a
//! base-p integer (constant term least significant), so index 0 is zero,
//! index 1 is one and index p is the adjoined root whenever d > 1.

use std::fmt;

use thiserror::Error;

/// Largest field order that may be constructed.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{d} exceeds the limit of {MAX_FIELD_ORDER}")]
    TooLarge { p: u64, d: u32 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("GF({q}) has no primitive sixth root of unity (6 does not divide {q}-1)")]
    NoSixthRoot { q: u64 },
    #[error("malformed field spec {0:?}; expected GF(p^d) or GF(q)")]
    BadSpec(String),
}

pub(crate) use num_prime::nt_funcs::is_prime64 as is_prime;

/// Splits `q` as `p^d` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|&c| q.is_multiple_of(c))?;
    let mut rest = q;
    let mut d = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        d += 1;
    }
    (rest == 1).then_some((p, d))
}

/// An element of some GF(p^d). Carries its characteristic and degree so that
/// mixing elements of different fields is detected.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    p: u32,
    coeffs: Vec<u32>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

/// GF(p^d) with a fixed canonical modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    d: u32,
    order: usize,
    /// Monic modulus, little-endian, length d + 1.
    modulus: Vec<u32>,
}

impl FiniteField {
    /// Builds GF(p^d) using the monic irreducible of degree d whose
    /// coefficient vector is the smallest base-p integer (constant term least
    /// significant).
    pub fn new(p: u64, d: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if d == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order = p
            .checked_pow(d)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(FieldError::TooLarge { p, d })?;
        let p32 = p as u32;
        let modulus = (0..order)
            .map(|idx| {
                let mut m = digits(idx as usize, p32, d as usize);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p32))
            .expect("an irreducible polynomial of every degree exists");
        Ok(FiniteField {
            p: p32,
            d,
            order: order as usize,
            modulus,
        })
    }

    /// Field of order `q`, which must be a prime power.
    pub fn with_order(q: u64) -> Result<Self, FieldError> {
        let (p, d) = prime_power(q).ok_or(FieldError::NotPrime(q))?;
        Self::new(p, d)
    }

    /// Parses `GF(p^d)` or `GF(q)`.
    pub fn parse(spec: &str) -> Result<Self, FieldError> {
        let bad = || FieldError::BadSpec(spec.to_string());
        let inner = spec
            .trim()
            .strip_prefix("GF(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(bad)?;
        match inner.split_once('^') {
            Some((p, d)) => {
                let p = p.trim().parse().map_err(|_| bad())?;
                let d = d.trim().parse().map_err(|_| bad())?;
                Self::new(p, d)
            }
            None => Self::with_order(inner.trim().parse().map_err(|_| bad())?),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p as u64
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Modulus coefficients, constant term first, leading 1 last.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn element(&self, index: usize) -> FieldElement {
        assert!(index < self.order, "element index {index} out of range");
        FieldElement {
            p: self.p,
            coeffs: digits(index, self.p, self.d as usize),
        }
    }

    pub fn index_of(&self, a: &FieldElement) -> usize {
        a.coeffs
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(|i| self.element(i))
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// The integer `n` reduced into the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        let c = n.rem_euclid(self.p as i64) as usize;
        self.element(c)
    }

    fn check(&self, a: &FieldElement) -> Result<(), FieldError> {
        if a.p == self.p && a.coeffs.len() == self.d as usize {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, &self.neg_unchecked(b)))
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(self.neg_unchecked(a))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub fn pow(&self, a: &FieldElement, e: u64) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(self.pow_unchecked(a, e))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow_unchecked(a, self.order as u64 - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: &FieldElement) -> Result<u64, FieldError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let group = self.order as u64 - 1;
        // smallest divisor n of q-1 with a^n = 1
        let one = self.one();
        Ok((1..=group)
            .filter(|n| group.is_multiple_of(*n))
            .find(|&n| self.pow_unchecked(a, n) == one)
            .expect("a^(q-1) = 1"))
    }

    /// Generator of the multiplicative group with the smallest index.
    pub fn primitive_element(&self) -> FieldElement {
        let group = self.order as u64 - 1;
        (1..self.order)
            .map(|i| self.element(i))
            .find(|a| self.element_order(a) == Ok(group))
            .expect("multiplicative group is cyclic")
    }

    /// The element of multiplicative order 6 with the smallest index.
    pub fn primitive_sixth_root(&self) -> Result<FieldElement, FieldError> {
        let q = self.order as u64;
        if !(q - 1).is_multiple_of(6) {
            return Err(FieldError::NoSixthRoot { q });
        }
        Ok((1..self.order)
            .map(|i| self.element(i))
            .find(|a| self.element_order(a) == Ok(6))
            .expect("cyclic group of order divisible by 6"))
    }

    /// a ↦ a^p.
    pub fn frobenius(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        self.pow(a, self.p as u64)
    }

    /// Zero counts as a square.
    pub fn is_square(&self, a: &FieldElement) -> Result<bool, FieldError> {
        self.check(a)?;
        if a.is_zero() || self.p == 2 {
            return Ok(true);
        }
        Ok(self.pow_unchecked(a, (self.order as u64 - 1) / 2) == self.one())
    }

    pub(crate) fn add_unchecked(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            p: self.p,
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| (x + y) % self.p)
                .collect(),
        }
    }

    pub(crate) fn neg_unchecked(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            p: self.p,
            coeffs: a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect(),
        }
    }

    pub(crate) fn mul_unchecked(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let d = self.d as usize;
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce from the top using the monic modulus
        for top in (d..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (k, &m) in self.modulus[..d].iter().enumerate() {
                let idx = top - d + k;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        prod.truncate(d);
        FieldElement {
            p: self.p,
            coeffs: prod.into_iter().map(|c| c as u32).collect(),
        }
    }

    pub(crate) fn pow_unchecked(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_unchecked(&acc, &base);
            }
            base = self.mul_unchecked(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.d, self.modulus)
    }
}

/// Base-p digits of `n`, least significant first, padded to `len`.
fn digits(mut n: usize, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((n % p as usize) as u32);
        n /= p as usize;
    }
    out
}

/// Irreducibility by trial division with every monic polynomial of degree
/// 1..=deg/2.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    for div_deg in 1..=deg / 2 {
        let count = (p as usize).pow(div_deg as u32);
        for idx in 0..count {
            let mut divisor = digits(idx, p, div_deg);
            divisor.push(1);
            if poly_rem_is_zero(poly, &divisor, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(poly: &[u32], monic: &[u32], p: u32) -> bool {
    let mut rem: Vec<u64> = poly.iter().map(|&c| c as u64).collect();
    let dd = monic.len() - 1;
    let p = p as u64;
    for top in (dd..rem.len()).rev() {
        let c = rem[top] % p;
        if c == 0 {
            continue;
        }
        for (k, &m) in monic.iter().enumerate() {
            let idx = top - dd + k;
            rem[idx] = (rem[idx] + (p - c) * m as u64) % p;
        }
    }
    rem[..dd].iter().all(|&c| c % p == 0)
}
