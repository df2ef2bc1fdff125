//! Arithmetic screening of the finite 2-transitive groups: which of them could
//! act flag-transitively on an SQS(v).
//!
//! Each catalog case carries its degree `v` and the largest point stabilizer
//! `|G_x|` admitted inside `Aut(N)`. Cases run through Hanani's condition, the
//! division property `r | |G_x|`, and primitive-prime-divisor filters, in that
//! order. What survives is either realized by a construction, settled by a
//! citation, or flagged as needing a structural argument.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_prime::nt_funcs::{factorize128, factorize64};
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::field::{is_prime, prime_power};

pub const SCREEN_MAX_D: u32 = 12;
pub const SCREEN_MAX_Q: u64 = 1024;
pub const AFFINE_SL_MAX_D: u32 = 40;
/// `zsigmondy(q, n)` accepts `q^n` below this power of two.
pub const ZSIGMONDY_MAX_BITS: u32 = 96;
const GX_DISPLAY_DIGITS: usize = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScreenError {
    #[error("v = {0} is not admissible (need v >= 4 and v ≡ 2, 4 mod 6)")]
    Inadmissible(u64),
    #[error("q^n = {q}^{n} exceeds 2^{ZSIGMONDY_MAX_BITS}")]
    Overflow { q: u64, n: u32 },
    #[error("zsigmondy needs q >= 2 and n >= 1, got q = {q}, n = {n}")]
    BadZsigmondy { q: u64, n: u32 },
    #[error("a = {a} must be a proper divisor of d = {d} with d <= {AFFINE_SL_MAX_D}")]
    BadDivisor { d: u32, a: u32 },
    #[error("screen bounds need 1 <= max_d <= {SCREEN_MAX_D} and 2 <= max_q <= {SCREEN_MAX_Q}, got {max_d}, {max_q}")]
    Bounds { max_d: u32, max_q: u64 },
    #[error("r = (v-1)(v-2)/6 exceeds u64 for v = {0}")]
    ReplicationOverflow(u64),
}

/// True iff an SQS(v) exists.
pub fn hanani_admissible(v: u64) -> bool {
    v >= 4 && matches!(v % 6, 2 | 4)
}

/// Replication number `(v-1)(v-2)/6` of an SQS(v).
pub fn replication(v: u64) -> Result<u64, ScreenError> {
    if !hanani_admissible(v) {
        return Err(ScreenError::Inadmissible(v));
    }
    let r = (v as u128 - 1) * (v as u128 - 2) / 6;
    u64::try_from(r).map_err(|_| ScreenError::ReplicationOverflow(v))
}

/// Whether `r | |G_x|`; `false` means the case is eliminated.
pub fn divisibility_filter(v: u64, gx_order: &BigUint) -> Result<bool, ScreenError> {
    if !hanani_admissible(v) {
        return Err(ScreenError::Inadmissible(v));
    }
    let r = (BigUint::from(v) - 1u32) * (BigUint::from(v) - 2u32) / 6u32;
    Ok((gx_order % r).is_zero())
}

/// A prime power `p^e` exactly dividing `r` that does not divide `gx`.
pub fn divisibility_witness(r: u64, gx: &BigUint) -> Option<(u64, u32)> {
    factorize64(r).into_iter().find_map(|(p, e)| {
        let pe = BigUint::from(p).pow(e as u32);
        (!(gx % pe).is_zero()).then_some((p, e as u32))
    })
}

fn checked_pow(q: u64, n: u32) -> Option<u128> {
    let qn = (q as u128).checked_pow(n)?;
    (qn < 1u128 << ZSIGMONDY_MAX_BITS).then_some(qn)
}

/// Primes dividing `q^n - 1` but no `q^k - 1` with `k < n`, ascending.
pub fn zsigmondy(q: u64, n: u32) -> Result<Vec<u128>, ScreenError> {
    if q < 2 || n == 0 {
        return Err(ScreenError::BadZsigmondy { q, n });
    }
    let qn = checked_pow(q, n).ok_or(ScreenError::Overflow { q, n })?;
    let q = q as u128;
    let mut rest = qn - 1;
    for k in (1..n).filter(|k| n.is_multiple_of(*k)) {
        let qk = q.pow(k) - 1;
        loop {
            let g = rest.gcd(&qk);
            if g == 1 {
                break;
            }
            rest /= g;
        }
    }
    if rest <= 1 {
        return Ok(Vec::new());
    }
    let primes = factorize128(rest)
        .into_keys()
        .filter(|&p| (1..n).all(|k| (q.pow(k) - 1) % p != 0))
        .collect();
    Ok(primes)
}

/// Why a case was ruled out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "filter", rename_all = "snake_case")]
pub enum Elimination {
    Hanani {
        residue: u64,
    },
    Divisibility {
        prime: u64,
        power: u32,
    },
    Zsigmondy {
        prime: u128,
        base: u64,
        exponent: u32,
    },
}

impl fmt::Display for Elimination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elimination::Hanani { residue } => write!(f, "Hanani: v ≡ {residue} (mod 6)"),
            Elimination::Divisibility { prime, power } => {
                let pe = if *power == 1 {
                    prime.to_string()
                } else {
                    format!("{prime}^{power}")
                };
                write!(f, "divisibility: {pe} | r, {pe} ∤ |G_x|")
            }
            Elimination::Zsigmondy {
                prime,
                base,
                exponent,
            } => write!(
                f,
                "Zsigmondy: primitive {prime} of {base}^{exponent}-1 ∤ |G_x|"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineVerdict {
    Eliminated(Elimination),
    Survives,
}

/// The elimination for `G_0 ⊵ SL(d/a, 2^a)` on `2^d` points: a primitive
/// prime of `2^(d-1) - 1` must divide `a(2^a - 1)|SL(d/a, 2^a)|`, and then
/// `r` itself must divide it.
pub fn affine_sl_filter(d: u32, a: u32) -> Result<AffineVerdict, ScreenError> {
    if a == 0 || a >= d || !d.is_multiple_of(a) || d > AFFINE_SL_MAX_D {
        return Err(ScreenError::BadDivisor { d, a });
    }
    let q = 1u64 << a;
    let bound = BigUint::from(a) * (q - 1) * sl_order(d / a, q);
    for p in zsigmondy(2, d - 1)? {
        if !(&bound % p).is_zero() {
            return Ok(AffineVerdict::Eliminated(Elimination::Zsigmondy {
                prime: p,
                base: 2,
                exponent: d - 1,
            }));
        }
    }
    let v = 1u64 << d;
    let r = replication(v)?;
    Ok(match divisibility_witness(r, &bound) {
        Some((prime, power)) => {
            AffineVerdict::Eliminated(Elimination::Divisibility { prime, power })
        }
        None => AffineVerdict::Survives,
    })
}

/// Degrees `3 <= d <= max_d` for which `AΓL(1, 2^d)` passes the division
/// property.
pub fn agammal1_passing_degrees(max_d: u32) -> Vec<u32> {
    (3..=max_d)
        .filter(|&d| {
            let v = 1u64 << d;
            let gx = BigUint::from(d) * (v - 1);
            divisibility_filter(v, &gx).unwrap_or(false)
        })
        .collect()
}

// ---- group orders ----

fn big_pow(q: u64, e: u64) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

pub fn gl_order(n: u32, q: u64) -> BigUint {
    let n = n as u64;
    (1..=n).fold(big_pow(q, n * (n - 1) / 2), |acc, i| {
        acc * (big_pow(q, i) - 1u32)
    })
}

pub fn sl_order(n: u32, q: u64) -> BigUint {
    gl_order(n, q) / (q - 1)
}

/// `|Sp(n, q)|` for even `n`.
pub fn sp_order(n: u32, q: u64) -> BigUint {
    let m = (n / 2) as u64;
    (1..=m).fold(big_pow(q, m * m), |acc, i| acc * (big_pow(q, 2 * i) - 1u32))
}

pub fn g2_order(q: u64) -> BigUint {
    big_pow(q, 6) * (big_pow(q, 6) - 1u32) * (big_pow(q, 2) - 1u32)
}

/// # Panics
/// If `q` is not a prime power.
pub fn pgammal_order(n: u32, q: u64) -> BigUint {
    let (_, e) = prime_power(q).expect("prime power");
    gl_order(n, q) / (q - 1) * e
}

pub fn psu3_order(q: u64) -> BigUint {
    big_pow(q, 3) * (big_pow(q, 3) + 1u32) * (big_pow(q, 2) - 1u32) / (q + 1).gcd(&3)
}

pub fn sz_order(q: u64) -> BigUint {
    big_pow(q, 2) * (big_pow(q, 2) + 1u32) * (q - 1)
}

pub fn ree_order(q: u64) -> BigUint {
    big_pow(q, 3) * (big_pow(q, 3) + 1u32) * (q - 1)
}

pub const M11_ORDER: u64 = 7_920;
pub const M12_ORDER: u64 = 95_040;
pub const M22_ORDER: u64 = 443_520;
pub const M23_ORDER: u64 = 10_200_960;
pub const M24_ORDER: u64 = 244_823_040;
pub const HS_ORDER: u64 = 44_352_000;
pub const CO3_ORDER: u64 = 495_766_656_000;

// ---- catalog ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    A1,
    A2,
    A3,
    A4,
    A5,
    A6,
    A7,
    A8,
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B7,
    B8,
    B9,
    B10,
    B11,
    B12,
    B13,
}

impl Family {
    pub const ALL: [Family; 21] = [
        Family::A1,
        Family::A2,
        Family::A3,
        Family::A4,
        Family::A5,
        Family::A6,
        Family::A7,
        Family::A8,
        Family::B1,
        Family::B2,
        Family::B3,
        Family::B4,
        Family::B5,
        Family::B6,
        Family::B7,
        Family::B8,
        Family::B9,
        Family::B10,
        Family::B11,
        Family::B12,
        Family::B13,
    ];

    pub fn description(self) -> &'static str {
        match self {
            Family::A1 => "G ≤ AΓL(1,p^d), v = p^d",
            Family::A2 => "G_0 ⊵ SL(d/a,p^a), v = p^d",
            Family::A3 => "G_0 ⊵ Sp(d/a,p^a), d/a ≥ 4 even, v = p^d",
            Family::A4 => "G_0 ⊵ G2(2^a)', v = 2^(6a)",
            Family::A5 => "G_0 ≅ A6 or A7, v = 16",
            Family::A6 => "G_0 ⊵ SL(2,3) or SL(2,5), v = p^2 or 3^4",
            Family::A7 => "G_0 ⊵ 2^(1+4), v = 3^4",
            Family::A8 => "G_0 ≅ SL(2,13), v = 3^6",
            Family::B1 => "A_v ≤ G ≤ S_v",
            Family::B2 => "PSL(d,q) ≤ G ≤ PΓL(d,q), v = (q^d-1)/(q-1)",
            Family::B3 => "PSU(3,q) ≤ G ≤ PΓU(3,q), v = q^3+1",
            Family::B4 => "Sz(q) ≤ G ≤ Aut Sz(q), v = q^2+1",
            Family::B5 => "Ree(q) ≤ G ≤ Aut Ree(q), v = q^3+1",
            Family::B6 => "Sp(2d,2), v = 2^(2d-1) ± 2^(d-1)",
            Family::B7 => "PSL(2,11), v = 11",
            Family::B8 => "PSL(2,8) ≤ G ≤ PΓL(2,8), v = 28",
            Family::B9 => "M_v, v = 11, 12, 22, 23, 24",
            Family::B10 => "M11, v = 12",
            Family::B11 => "A7, v = 15",
            Family::B12 => "HS ≤ G ≤ Aut HS, v = 176",
            Family::B13 => "Co3, v = 276",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Eliminated(Elimination),
    Realized(String),
    External(String),
    NeedsDeep(String),
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Eliminated(_) => "ELIMINATED",
            Status::Realized(_) => "REALIZED",
            Status::External(_) => "EXTERNAL",
            Status::NeedsDeep(_) => "NEEDS_DEEP",
        }
    }

    pub fn reason(&self) -> String {
        match self {
            Status::Eliminated(e) => e.to_string(),
            Status::Realized(s) | Status::External(s) | Status::NeedsDeep(s) => s.clone(),
        }
    }

    pub fn is_survivor(&self) -> bool {
        !matches!(self, Status::Eliminated(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogCase {
    pub family: Family,
    pub parameters: String,
    pub v: u64,
    /// `None` when `v` fails Hanani's condition.
    pub r: Option<u64>,
    pub gx: BigUint,
    pub status: Status,
}

/// What a case becomes if no filter removes it.
enum Fate {
    Realized(String),
    External(&'static str),
    NeedsDeep(String),
}

const KANTOR_ALTERNATING: &str = "Kantor: A_v, S_v preserve no nontrivial 3-(v,k,1) design";
const KANTOR_M22: &str = "Kantor: M22, Aut M22 preserve only the 3-(22,6,1) design";
const HYPERPLANE: &str = "hyperplane induction down to PSL(3,q), v odd";
const UNRESOLVED: &str = "survives the arithmetic filters";

struct Builder {
    cases: Vec<CatalogCase>,
}

impl Builder {
    /// `zsig` is the exponent `n` for a primitive prime test on `2^n - 1`.
    fn push(
        &mut self,
        family: Family,
        parameters: String,
        v: u64,
        gx: BigUint,
        zsig: Option<u32>,
        fate: Fate,
    ) {
        let (r, status) = if !hanani_admissible(v) {
            (
                None,
                Status::Eliminated(Elimination::Hanani { residue: v % 6 }),
            )
        } else {
            let r = (v - 1) * (v - 2) / 6;
            let status = if let Some((prime, power)) = divisibility_witness(r, &gx) {
                Status::Eliminated(Elimination::Divisibility { prime, power })
            } else if let Some(p) = zsig.and_then(|n| zsigmondy_miss(n, &gx)) {
                Status::Eliminated(Elimination::Zsigmondy {
                    prime: p,
                    base: 2,
                    exponent: zsig.unwrap_or_default(),
                })
            } else {
                match fate {
                    Fate::Realized(tag) => Status::Realized(tag),
                    Fate::External(cite) => Status::External(cite.to_string()),
                    Fate::NeedsDeep(ptr) => Status::NeedsDeep(ptr),
                }
            };
            (Some(r), status)
        };
        self.cases.push(CatalogCase {
            family,
            parameters,
            v,
            r,
            gx,
            status,
        });
    }
}

fn zsigmondy_miss(n: u32, gx: &BigUint) -> Option<u128> {
    zsigmondy(2, n)
        .ok()?
        .into_iter()
        .find(|&p| !(gx % p).is_zero())
}

fn prime_powers_upto(limit: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in (2..=limit).filter(|&p| is_prime(p)) {
        let mut q = p;
        let mut d = 1;
        while q <= limit {
            out.push((p, d));
            d += 1;
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
        }
    }
    out
}

fn affine_cases(b: &mut Builder, vmax: u64) {
    let pds: Vec<(u64, u32)> = prime_powers_upto(vmax)
        .into_iter()
        .filter(|&(p, d)| p.pow(d) >= 5)
        .collect();
    for &(p, d) in &pds {
        let v = p.pow(d);
        let gx = BigUint::from(d) * (v - 1);
        let fate = if p == 2 && (d == 3 || d == 5) {
            Fate::Realized(format!("boolean:{d}"))
        } else {
            Fate::NeedsDeep(UNRESOLVED.to_string())
        };
        b.push(Family::A1, format!("p={p} d={d}"), v, gx, None, fate);
    }
    for &(p, d) in &pds {
        for a in (1..d).filter(|a| d % a == 0) {
            let q = p.pow(a);
            let gx = BigUint::from(a) * (q - 1) * sl_order(d / a, q);
            let (zsig, fate) = if p == 2 && a == 1 {
                (None, Fate::Realized(format!("boolean:{d}")))
            } else {
                (
                    (p == 2).then_some(d - 1),
                    Fate::NeedsDeep(UNRESOLVED.to_string()),
                )
            };
            b.push(
                Family::A2,
                format!("p={p} d={d} a={a}"),
                p.pow(d),
                gx,
                zsig,
                fate,
            );
        }
    }
    for &(p, d) in &pds {
        for a in (1..d).filter(|a| d % a == 0 && (d / a) % 2 == 0 && d / a >= 4) {
            let q = p.pow(a);
            let gx = BigUint::from(a) * (q - 1) * sp_order(d / a, q);
            let zsig = (p == 2).then_some(d - 1);
            b.push(
                Family::A3,
                format!("p={p} d={d} a={a}"),
                p.pow(d),
                gx,
                zsig,
                Fate::NeedsDeep(UNRESOLVED.to_string()),
            );
        }
    }
    let mut a = 1;
    while 6 * a < 64 && (1u64 << (6 * a)) <= vmax {
        let q = 1u64 << a;
        let gx = BigUint::from(a) * (q - 1) * g2_order(q);
        b.push(
            Family::A4,
            format!("a={a}"),
            1 << (6 * a),
            gx,
            Some(6 * a - 1),
            Fate::NeedsDeep(UNRESOLVED.to_string()),
        );
        a += 1;
    }
    if vmax >= 16 {
        b.push(
            Family::A5,
            "G0=A6".into(),
            16,
            BigUint::from(360u32),
            None,
            Fate::NeedsDeep(UNRESOLVED.to_string()),
        );
        b.push(
            Family::A5,
            "G0=A7".into(),
            16,
            BigUint::from(2520u32),
            None,
            Fate::Realized("boolean:4".into()),
        );
    }
    for p in [5u64, 7, 11, 19, 23, 29, 59] {
        if p * p <= vmax {
            b.push(
                Family::A6,
                format!("p={p}"),
                p * p,
                gl_order(2, p),
                None,
                Fate::NeedsDeep(UNRESOLVED.to_string()),
            );
        }
    }
    if vmax >= 81 {
        b.push(
            Family::A6,
            "v=3^4".into(),
            81,
            gl_order(2, 9) * 2u32,
            None,
            Fate::NeedsDeep(UNRESOLVED.to_string()),
        );
        b.push(
            Family::A7,
            "v=3^4".into(),
            81,
            BigUint::from(3840u32),
            None,
            Fate::NeedsDeep(UNRESOLVED.to_string()),
        );
    }
    if vmax >= 729 {
        b.push(
            Family::A8,
            "v=3^6".into(),
            729,
            BigUint::from(2184u32),
            None,
            Fate::NeedsDeep(UNRESOLVED.to_string()),
        );
    }
}

fn psl2_fate(q: u64) -> Fate {
    let (p, e) = prime_power(q).expect("prime power");
    if p == 3 {
        Fate::Realized(format!("pgl:{e}"))
    } else if q % 12 == 7 {
        Fate::Realized(format!("netto:{q}"))
    } else if q % 4 == 1 {
        let note = if q == 13 || q == 25 {
            "kmsearch finds none"
        } else {
            "beyond search scale"
        };
        Fate::NeedsDeep(format!("q ≡ 1 (mod 4): S3 stabilizer obstruction; {note}"))
    } else {
        Fate::NeedsDeep(UNRESOLVED.to_string())
    }
}

fn semisimple_cases(b: &mut Builder, vmax: u64, max_q: u64, bound: u64) {
    let mut gx = BigUint::from(24u32);
    for v in 5..=vmax {
        if v > 5 {
            gx *= v - 1;
        }
        b.push(
            Family::B1,
            format!("v={v}"),
            v,
            gx.clone(),
            None,
            Fate::External(KANTOR_ALTERNATING),
        );
    }

    let qs: Vec<u64> = (2..=max_q).filter(|&q| prime_power(q).is_some()).collect();
    let mut d = 2u32;
    while (1u64 << d) - 1 <= bound {
        for &q in &qs {
            if d == 2 && q <= 3 {
                continue;
            }
            let Some(qd) = q.checked_pow(d) else { break };
            let v = (qd - 1) / (q - 1);
            if v > bound {
                break;
            }
            let gx = pgammal_order(d, q) / v;
            let fate = if d == 2 {
                psl2_fate(q)
            } else {
                Fate::NeedsDeep(HYPERPLANE.to_string())
            };
            b.push(Family::B2, format!("d={d} q={q}"), v, gx, None, fate);
        }
        d += 1;
    }

    for &q in qs.iter().filter(|&&q| q > 2) {
        let (_, e) = prime_power(q).expect("prime power");
        let gx = BigUint::from(2 * e) * big_pow(q, 3) * (big_pow(q, 2) - 1u32);
        b.push(
            Family::B3,
            format!("q={q}"),
            q.pow(3) + 1,
            gx,
            None,
            Fate::NeedsDeep(UNRESOLVED.to_string()),
        );
    }
    let mut f = 3u32;
    while (1u64 << f) <= max_q {
        let q = 1u64 << f;
        let gx = BigUint::from(f) * big_pow(q, 2) * (q - 1);
        b.push(
            Family::B4,
            format!("q={q}"),
            q * q + 1,
            gx,
            None,
            Fate::NeedsDeep(UNRESOLVED.to_string()),
        );
        f += 2;
    }
    let mut f = 3u32;
    while 3u64.pow(f) <= max_q {
        let q = 3u64.pow(f);
        let gx = BigUint::from(f) * big_pow(q, 3) * (q - 1);
        b.push(
            Family::B5,
            format!("q={q}"),
            q.pow(3) + 1,
            gx,
            None,
            Fate::NeedsDeep(UNRESOLVED.to_string()),
        );
        f += 2;
    }
    let mut d = 3u32;
    while (1u64 << (2 * d - 1)) - (1u64 << (d - 1)) <= vmax {
        let order = sp_order(2 * d, 2);
        for (sign, v) in [
            ('+', (1u64 << (2 * d - 1)) + (1u64 << (d - 1))),
            ('-', (1u64 << (2 * d - 1)) - (1u64 << (d - 1))),
        ] {
            if v <= vmax {
                b.push(
                    Family::B6,
                    format!("d={d} {sign}"),
                    v,
                    &order / v,
                    None,
                    Fate::NeedsDeep("fixed-point argument".to_string()),
                );
            }
        }
        d += 1;
    }

    let unresolved = || Fate::NeedsDeep(UNRESOLVED.to_string());
    let sporadic: [(Family, &str, u64, u64, Fate); 11] = [
        (Family::B7, "PSL(2,11)", 11, 660 / 11, unresolved()),
        (Family::B8, "PΓL(2,8)", 28, 1512 / 28, unresolved()),
        (Family::B9, "M11", 11, M11_ORDER / 11, unresolved()),
        (Family::B9, "M12", 12, M12_ORDER / 12, unresolved()),
        (
            Family::B9,
            "Aut M22",
            22,
            2 * M22_ORDER / 22,
            Fate::External(KANTOR_M22),
        ),
        (Family::B9, "M23", 23, M23_ORDER / 23, unresolved()),
        (Family::B9, "M24", 24, M24_ORDER / 24, unresolved()),
        (Family::B10, "M11", 12, M11_ORDER / 12, unresolved()),
        (Family::B11, "A7", 15, 2520 / 15, unresolved()),
        (Family::B12, "Aut HS", 176, 2 * HS_ORDER / 176, unresolved()),
        (Family::B13, "Co3", 276, CO3_ORDER / 276, unresolved()),
    ];
    for (family, name, v, gx, fate) in sporadic {
        if v <= bound {
            b.push(family, name.to_string(), v, BigUint::from(gx), None, fate);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScreenReport {
    pub max_d: u32,
    pub max_q: u64,
    /// `max(2^max_d, max_q^3 + 1)`
    pub v_bound: u64,
    pub cases: Vec<CatalogCase>,
}

/// Screen the catalog. Affine cases and alternating groups run over
/// `v <= 2^max_d`; families indexed by a field order run over `q <= max_q`
/// with `v <= v_bound`. Degrees below 5 are skipped.
pub fn run_screen(max_d: u32, max_q: u64) -> Result<ScreenReport, ScreenError> {
    if !(1..=SCREEN_MAX_D).contains(&max_d) || !(2..=SCREEN_MAX_Q).contains(&max_q) {
        return Err(ScreenError::Bounds { max_d, max_q });
    }
    let vmax = 1u64 << max_d;
    let v_bound = vmax.max(max_q.pow(3) + 1);
    let mut b = Builder { cases: Vec::new() };
    affine_cases(&mut b, vmax);
    semisimple_cases(&mut b, vmax, max_q, v_bound);
    Ok(ScreenReport {
        max_d,
        max_q,
        v_bound,
        cases: b.cases,
    })
}

fn display_order(n: &BigUint) -> String {
    let s = n.to_string();
    if s.len() <= GX_DISPLAY_DIGITS {
        s
    } else {
        format!("{}.{}e{}", &s[..1], &s[1..4], s.len() - 1)
    }
}

#[derive(Serialize)]
struct JsonCase<'a> {
    family: Family,
    parameters: &'a str,
    v: u64,
    r: Option<u64>,
    gx: String,
    status: &'static str,
    reason: String,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    max_d: u32,
    max_q: u64,
    v_bound: u64,
    cases: Vec<JsonCase<'a>>,
    summary: BTreeMap<&'static str, usize>,
}

impl ScreenReport {
    pub fn survivors(&self) -> impl Iterator<Item = &CatalogCase> {
        self.cases.iter().filter(|c| c.status.is_survivor())
    }

    pub fn find(&self, family: Family, parameters: &str) -> Option<&CatalogCase> {
        self.cases
            .iter()
            .find(|c| c.family == family && c.parameters == parameters)
    }

    /// Case counts keyed by status label and by elimination filter.
    pub fn summary(&self) -> BTreeMap<&'static str, usize> {
        let mut m = BTreeMap::new();
        for c in &self.cases {
            *m.entry(c.status.label()).or_default() += 1;
            if let Status::Eliminated(e) = &c.status {
                let key = match e {
                    Elimination::Hanani { .. } => "eliminated_hanani",
                    Elimination::Divisibility { .. } => "eliminated_divisibility",
                    Elimination::Zsigmondy { .. } => "eliminated_zsigmondy",
                };
                *m.entry(key).or_default() += 1;
            }
        }
        m
    }

    pub fn to_text(&self) -> String {
        let header = [
            "family",
            "parameters",
            "v",
            "r",
            "|G_x|",
            "status",
            "reason",
        ];
        let rows: Vec<[String; 7]> = self
            .cases
            .iter()
            .map(|c| {
                [
                    c.family.to_string(),
                    c.parameters.clone(),
                    c.v.to_string(),
                    c.r.map_or("-".to_string(), |r| r.to_string()),
                    display_order(&c.gx),
                    c.status.label().to_string(),
                    c.status.reason(),
                ]
            })
            .collect();
        let mut widths = header.map(|h| h.chars().count());
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let mut s = String::new();
            for (i, cell) in cells.iter().enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(cell);
                } else {
                    s.push_str(cell);
                    let pad = widths[i] - cell.chars().count() + 2;
                    s.extend(std::iter::repeat_n(' ', pad));
                }
            }
            s.push('\n');
            s
        };

        let mut out = format!(
            "screen max_d={} max_q={} v_bound={}\n\n",
            self.max_d, self.max_q, self.v_bound
        );
        for f in Family::ALL {
            out.push_str(&format!("{:<4}{}\n", f.to_string(), f.description()));
        }
        out.push('\n');
        out.push_str(&line(&header.map(String::from)));
        for row in &rows {
            out.push_str(&line(row));
        }
        let s = self.summary();
        let get = |k: &str| s.get(k).copied().unwrap_or(0);
        out.push_str(&format!(
            "\ncases {}\nELIMINATED {} (Hanani {}, divisibility {}, Zsigmondy {})\nREALIZED {}\nEXTERNAL {}\nNEEDS_DEEP {}\n",
            self.cases.len(),
            get("ELIMINATED"),
            get("eliminated_hanani"),
            get("eliminated_divisibility"),
            get("eliminated_zsigmondy"),
            get("REALIZED"),
            get("EXTERNAL"),
            get("NEEDS_DEEP"),
        ));
        let mut tags: Vec<&str> = Vec::new();
        for c in self.survivors() {
            if let Status::Realized(t) = &c.status {
                if !tags.contains(&t.as_str()) {
                    tags.push(t);
                }
            }
        }
        out.push_str(&format!("constructions {}\n", tags.join(" ")));
        out
    }

    pub fn to_json(&self) -> String {
        let report = JsonReport {
            max_d: self.max_d,
            max_q: self.max_q,
            v_bound: self.v_bound,
            cases: self
                .cases
                .iter()
                .map(|c| JsonCase {
                    family: c.family,
                    parameters: &c.parameters,
                    v: c.v,
                    r: c.r,
                    gx: c.gx.to_string(),
                    status: c.status.label(),
                    reason: c.status.reason(),
                })
                .collect(),
            summary: self.summary(),
        };
        let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
        s.push('\n');
        s
    }
}

/// `|G_x|` as a `u64` when it fits, for quick comparisons in tests.
pub fn gx_u64(c: &CatalogCase) -> Option<u64> {
    c.gx.to_u64()
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn hanani() {
        assert!(hanani_admissible(8));
        assert!(!hanani_admissible(15));
        assert!(!hanani_admissible(36));
        assert!(hanani_admissible(4));
        assert!(!hanani_admissible(2));
    }

    #[test]
    fn divisibility_examples() {
        assert!(!divisibility_filter(32, &b(31)).unwrap());
        assert!(divisibility_filter(32, &b(155)).unwrap());
        assert!(!divisibility_filter(16, &b(360)).unwrap());
        assert_eq!(
            divisibility_filter(9, &b(1)),
            Err(ScreenError::Inadmissible(9))
        );
        assert_eq!(divisibility_witness(117, &b(54)), Some((13, 1)));
        assert_eq!(divisibility_witness(5075, &b(504_000)), Some((29, 1)));
    }

    #[test]
    fn agammal_scan() {
        assert_eq!(agammal1_passing_degrees(40), vec![3, 5]);
    }

    #[test]
    fn zsigmondy_examples() {
        assert_eq!(zsigmondy(2, 6).unwrap(), Vec::<u128>::new());
        assert_eq!(zsigmondy(2, 4).unwrap(), vec![5]);
        assert_eq!(zsigmondy(2, 1).unwrap(), Vec::<u128>::new());
        assert_eq!(zsigmondy(2, 5).unwrap(), vec![31]);
        assert_eq!(zsigmondy(2, 11).unwrap(), vec![23, 89]);
        assert_eq!(zsigmondy(3, 2).unwrap(), Vec::<u128>::new());
        assert_eq!(zsigmondy(10, 6).unwrap(), vec![7, 13]);
        assert!(zsigmondy(1, 3).is_err());
        assert!(matches!(
            zsigmondy(2, 100),
            Err(ScreenError::Overflow { .. })
        ));
    }

    #[test]
    fn affine_sl_examples() {
        for (d, a) in [(6, 2), (6, 3), (4, 2)] {
            assert!(matches!(
                affine_sl_filter(d, a).unwrap(),
                AffineVerdict::Eliminated(_)
            ));
        }
        assert_eq!(
            affine_sl_filter(6, 2).unwrap(),
            AffineVerdict::Eliminated(Elimination::Zsigmondy {
                prime: 31,
                base: 2,
                exponent: 5
            })
        );
        assert_eq!(affine_sl_filter(8, 1).unwrap(), AffineVerdict::Survives);
        assert!(affine_sl_filter(6, 6).is_err());
        assert!(affine_sl_filter(6, 4).is_err());
        assert!(affine_sl_filter(42, 2).is_err());
    }

    #[test]
    fn affine_sl_all_proper_divisors_above_one() {
        for d in 4..=AFFINE_SL_MAX_D {
            for a in (2..d).filter(|a| d % a == 0) {
                assert!(
                    matches!(
                        affine_sl_filter(d, a).unwrap(),
                        AffineVerdict::Eliminated(_)
                    ),
                    "d={d} a={a}"
                );
            }
        }
    }

    #[test]
    fn order_formulas_against_factorizations() {
        assert_eq!(gl_order(3, 2), b(168));
        assert_eq!(gl_order(4, 2), b(20160));
        assert_eq!(sl_order(2, 4), b(60));
        assert_eq!(sp_order(4, 2), b(720));
        assert_eq!(sp_order(6, 2), b(1_451_520));
        assert_eq!(g2_order(2), b(12096));
        assert_eq!(psu3_order(3), b(6048));
        assert_eq!(psu3_order(5), b(126_000));
        assert_eq!(sz_order(8), b(29120));
        assert_eq!(ree_order(27), b(10_073_444_472));
        assert_eq!(pgammal_order(2, 8), b(1512));
        assert_eq!(pgammal_order(2, 9), b(1440));
        // 2^4·3^2·5·11, 2^6·3^3·5·11, 2^7·3^2·5·7·11, 2^7·3^2·5·7·11·23, 2^10·3^3·5·7·11·23
        assert_eq!(M11_ORDER, 16 * 9 * 5 * 11);
        assert_eq!(M12_ORDER, 64 * 27 * 5 * 11);
        assert_eq!(M22_ORDER, 128 * 9 * 5 * 7 * 11);
        assert_eq!(M23_ORDER, 128 * 9 * 5 * 7 * 11 * 23);
        assert_eq!(M24_ORDER, 1024 * 27 * 5 * 7 * 11 * 23);
        // 2^9·3^2·5^3·7·11 and 2^10·3^7·5^3·7·11·23
        assert_eq!(HS_ORDER, 512 * 9 * 125 * 7 * 11);
        assert_eq!(CO3_ORDER, 1024 * 2187 * 125 * 7 * 11 * 23);
    }

    #[test]
    fn named_cases() {
        let rep = run_screen(10, 128).unwrap();
        let status = |f, p: &str| rep.find(f, p).unwrap().status.clone();
        assert_eq!(
            status(Family::B8, "PΓL(2,8)"),
            Status::Eliminated(Elimination::Divisibility {
                prime: 13,
                power: 1
            })
        );
        assert_eq!(
            status(Family::B12, "Aut HS"),
            Status::Eliminated(Elimination::Divisibility {
                prime: 29,
                power: 1
            })
        );
        assert_eq!(
            gx_u64(rep.find(Family::B12, "Aut HS").unwrap()),
            Some(504_000)
        );
        assert_eq!(
            status(Family::A1, "p=2 d=3"),
            Status::Realized("boolean:3".into())
        );
        assert_eq!(
            status(Family::B2, "d=2 q=19"),
            Status::Realized("netto:19".into())
        );
        assert_eq!(
            status(Family::B2, "d=2 q=27"),
            Status::Realized("pgl:3".into())
        );
        assert!(matches!(
            status(Family::B2, "d=2 q=13"),
            Status::NeedsDeep(_)
        ));
        assert!(matches!(status(Family::B9, "Aut M22"), Status::External(_)));
        for q in ["q=8", "q=32", "q=128"] {
            assert_eq!(
                status(Family::B4, q),
                Status::Eliminated(Elimination::Hanani {
                    residue: rep.find(Family::B4, q).unwrap().v % 6
                })
            );
        }
    }

    #[test]
    fn psl2_subclassification() {
        let rep = run_screen(4, 128).unwrap();
        for c in rep
            .cases
            .iter()
            .filter(|c| c.family == Family::B2 && c.parameters.starts_with("d=2 "))
        {
            let q = c.v - 1;
            match &c.status {
                Status::Eliminated(Elimination::Hanani { .. }) => {
                    assert!(q % 2 == 0 || q % 6 == 5, "q={q}")
                }
                Status::Realized(tag) if tag.starts_with("netto") => assert_eq!(q % 12, 7),
                Status::Realized(tag) if tag.starts_with("pgl") => assert_eq!(q % 3, 0),
                Status::NeedsDeep(_) => assert_eq!(q % 12, 1),
                other => panic!("q={q}: {other:?}"),
            }
        }
    }

    #[test]
    fn display_abbreviates_long_orders() {
        assert_eq!(display_order(&b(504_000)), "504000");
        assert_eq!(display_order(&factorial(30)), "2.652e32");
    }
}
