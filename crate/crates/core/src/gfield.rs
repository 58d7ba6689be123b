//! Exact arithmetic in the tower F_p ⊆ F_q ⊆ F_{q^m}.
//!
//! Elements of F_{q^m} are stored packed: the coefficient vector over F_p in
//! the polynomial basis 1, t, t², …, t^{hm-1} is read as a base-p integer
//! (little-endian), so `Elt(0)` is zero and `Elt(1)` is one. The class `t` of
//! the indeterminate is primitive (the modulus is required to be primitive)
//! and serves as the fixed generator `g`. Multiplication, Frobenius powers,
//! the trace and the norm all go through discrete-log tables; addition in odd
//! characteristic uses a Zech-logarithm table, in characteristic 2 it is XOR.
//!
//! F_q is not built as a separate quotient: it is the subset of F_{q^m} made
//! of zero and the powers of `g` whose exponent is divisible by
//! `(q^m-1)/(q-1)`.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldCtx::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 24;

/// Built-in primitive polynomials, keyed by `(p, degree)`.
///
/// Each entry is the monic primitive polynomial of that degree whose
/// coefficient vector, read as a base-p integer, is smallest. Coefficients
/// are little-endian and include the leading 1. Degrees outside the table are
/// found at runtime with the same rule (see [`default_modulus`]).
const PRIMITIVE_TABLE: &[(u32, usize, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 12, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1]),
    (2, 13, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 14, &[1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 15, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 16, &[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 17, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 18, &[1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 19, &[1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 20, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 21, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 22, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 23, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 24, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 2, &[2, 1, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (3, 7, &[1, 2, 1, 0, 0, 0, 0, 1]),
    (3, 8, &[2, 0, 0, 1, 0, 0, 0, 0, 1]),
    (3, 9, &[1, 0, 1, 2, 0, 0, 0, 0, 0, 1]),
    (3, 10, &[2, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (3, 11, &[1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 12, &[2, 2, 2, 1, 2, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 13, &[1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 14, &[2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 15, &[1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, 2, &[2, 1, 1]),
    (5, 3, &[2, 3, 0, 1]),
    (5, 4, &[2, 2, 1, 0, 1]),
    (5, 5, &[2, 4, 0, 0, 0, 1]),
    (5, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (5, 7, &[2, 3, 0, 0, 0, 0, 0, 1]),
    (5, 8, &[3, 2, 1, 0, 0, 0, 0, 0, 1]),
    (5, 9, &[3, 2, 1, 0, 0, 0, 0, 0, 0, 1]),
    (5, 10, &[3, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1]),
    (7, 2, &[3, 1, 1]),
    (7, 3, &[2, 3, 0, 1]),
    (7, 4, &[5, 3, 1, 0, 1]),
    (7, 5, &[4, 1, 0, 0, 0, 1]),
    (7, 6, &[5, 1, 3, 0, 0, 0, 1]),
    (7, 7, &[2, 6, 0, 0, 0, 0, 0, 1]),
    (7, 8, &[3, 1, 0, 0, 0, 0, 0, 0, 1]),
    (11, 2, &[7, 1, 1]),
    (11, 3, &[4, 1, 0, 1]),
    (11, 4, &[2, 1, 0, 0, 1]),
    (11, 5, &[4, 1, 1, 0, 0, 1]),
    (11, 6, &[8, 2, 1, 0, 0, 0, 1]),
    (13, 2, &[2, 1, 1]),
    (13, 3, &[6, 1, 0, 1]),
    (13, 4, &[2, 1, 1, 0, 1]),
    (13, 5, &[2, 4, 0, 0, 0, 1]),
    (13, 6, &[2, 2, 1, 0, 0, 0, 1]),
];

/// An element of F_{q^m}, packed as a base-p integer of its coefficient
/// vector.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elt(pub(crate) u32);

impl Elt {
    pub const ZERO: Elt = Elt(0);
    pub const ONE: Elt = Elt(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// The packed integer value.
    pub fn packed(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for Elt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Elt({})", self.0)
    }
}

/// Serialized field description: `{p, h, m, modulus}` with the modulus
/// coefficients little-endian over F_p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u32,
    pub h: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

/// The tower F_p ⊆ F_q ⊆ F_{q^m}. Immutable once built.
pub struct FieldCtx {
    p: u32,
    h: usize,
    m: usize,
    q: u64,
    order: u64,
    modulus: Vec<u32>,
    /// Multiplicative group order q^m - 1.
    n: u32,
    /// (q^m - 1) / (q - 1).
    subfield_index: u32,
    /// `exp[k] = g^k` for `0 <= k < 2n`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero packed `x`; `log[0]` is unused.
    log: Vec<u32>,
    /// `zech[k] = log(1 + g^k)`, or `NONE` when `1 + g^k = 0`.
    zech: Vec<u32>,
    /// `q^i mod n` for `0 <= i < m`.
    q_pows: Vec<u64>,
    /// Change of basis from F_p-digits to F_q-coordinates in the basis
    /// `1, g, …, g^{m-1}`, built on first use.
    fq_coords: OnceLock<FqCoordinates>,
}

const NONE: u32 = u32::MAX;

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("h", &self.h)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns the built-in primitive polynomial of degree `degree` over F_p.
///
/// Looks the pair up in the built-in table and otherwise searches with the
/// same rule (smallest packed value), so the result is reproducible either
/// way.
pub fn default_modulus(p: u32, degree: usize) -> Result<Vec<u32>> {
    if let Some((_, _, coeffs)) = PRIMITIVE_TABLE
        .iter()
        .find(|(tp, td, _)| *tp == p && *td == degree)
    {
        return Ok(coeffs.to_vec());
    }
    search_primitive(p, degree)
}

/// Smallest monic primitive polynomial of the given degree, by packed value
/// of its lower coefficients.
pub fn search_primitive(p: u32, degree: usize) -> Result<Vec<u32>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let order = checked_order(p, degree)?;
    for v in 0..order {
        let mut coeffs: Vec<u32> = (0..degree)
            .map(|i| ((v / (p as u64).pow(i as u32)) % p as u64) as u32)
            .collect();
        if coeffs[0] == 0 {
            continue;
        }
        coeffs.push(1);
        if power_tables(p, &coeffs).is_some() {
            return Ok(coeffs);
        }
    }
    Err(Error::NoPrimitive { p, degree })
}

fn checked_order(p: u32, degree: usize) -> Result<u64> {
    let mut order: u64 = 1;
    for _ in 0..degree {
        order = order.saturating_mul(p as u64);
        if order > MAX_FIELD_ORDER {
            return Err(Error::TooLarge {
                order: None,
                bound: MAX_FIELD_ORDER,
            });
        }
    }
    Ok(order)
}

/// Walks the powers of `t` modulo `modulus`. Returns `(exp, log)` tables when
/// `t` has multiplicative order exactly `p^deg - 1`, which happens iff the
/// modulus is primitive (and in particular irreducible).
fn power_tables(p: u32, modulus: &[u32]) -> Option<(Vec<u32>, Vec<u32>)> {
    let deg = modulus.len() - 1;
    let order = (p as u64).pow(deg as u32);
    let n = (order - 1) as usize;
    let mut digits = vec![0u32; deg];
    digits[0] = 1;
    let mut log = vec![NONE; order as usize];
    let mut exp = Vec::with_capacity(2 * n);
    let pack = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);
    for k in 0..n {
        let x = pack(&digits);
        if x == 0 || log[x as usize] != NONE {
            return None;
        }
        log[x as usize] = k as u32;
        exp.push(x);
        // multiply by t and reduce by the monic modulus
        let lead = digits[deg - 1];
        for i in (1..deg).rev() {
            digits[i] = (digits[i - 1] + (p - lead) * modulus[i] % p) % p;
        }
        digits[0] = (p - lead) * modulus[0] % p;
    }
    if pack(&digits) != 1 {
        return None;
    }
    let head: Vec<u32> = exp.clone();
    exp.extend(head);
    Some((exp, log))
}

impl FieldCtx {
    /// Builds F_{q^m} with q = p^h. When `modulus` is `None` the built-in
    /// table is used.
    pub fn new(p: u32, h: usize, m: usize, modulus: Option<Vec<u32>>) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if h < 1 {
            return Err(Error::InvalidParameter(format!("h must be >= 1, got {h}")));
        }
        if m < 2 {
            return Err(Error::InvalidParameter(format!("m must be >= 2, got {m}")));
        }
        let degree = h * m;
        let order = checked_order(p, degree)?;
        let modulus = match modulus {
            Some(mut coeffs) => {
                while coeffs.len() > 1 && coeffs.last() == Some(&0) {
                    coeffs.pop();
                }
                if coeffs.len() != degree + 1 {
                    return Err(Error::BadModulus(format!(
                        "expected degree {degree}, got {}",
                        coeffs.len().saturating_sub(1)
                    )));
                }
                if coeffs.iter().any(|&c| c >= p) {
                    return Err(Error::BadModulus("coefficient not reduced mod p".into()));
                }
                if coeffs[degree] != 1 {
                    return Err(Error::BadModulus("modulus must be monic".into()));
                }
                coeffs
            }
            None => default_modulus(p, degree)?,
        };
        let (exp, log) = power_tables(p, &modulus).ok_or_else(|| {
            Error::BadModulus("modulus is not primitive over F_p (or reducible)".into())
        })?;
        let n = (order - 1) as u32;
        let q = (p as u64).pow(h as u32);
        let subfield_index = ((order - 1) / (q - 1)) as u32;

        let one = 1u32;
        let zech = (0..n as usize)
            .map(|k| {
                let s = add_digits(p, one, exp[k]);
                if s == 0 {
                    NONE
                } else {
                    log[s as usize]
                }
            })
            .collect();
        let q_pows = (0..m)
            .scan(1u64, |acc, _| {
                let cur = *acc;
                *acc = *acc * (q % n as u64) % n as u64;
                Some(cur)
            })
            .collect();

        Ok(FieldCtx {
            p,
            h,
            m,
            q,
            order,
            modulus,
            n,
            subfield_index,
            exp,
            log,
            zech,
            q_pows,
            fq_coords: OnceLock::new(),
        })
    }

    pub fn from_desc(desc: &FieldDesc) -> Result<FieldCtx> {
        FieldCtx::new(
            desc.p,
            desc.h as usize,
            desc.m as usize,
            Some(desc.modulus.clone()),
        )
    }

    pub fn desc(&self) -> FieldDesc {
        FieldDesc {
            p: self.p,
            h: self.h as u32,
            m: self.m as u32,
            modulus: self.modulus.clone(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Size of the base field F_q.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Size of F_{q^m}.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Order of the multiplicative group, q^m - 1.
    pub fn group_order(&self) -> u32 {
        self.n
    }

    /// (q^m - 1) / (q - 1).
    pub fn subfield_index(&self) -> u32 {
        self.subfield_index
    }

    /// Number of F_p digits of an element, h·m.
    pub fn degree(&self) -> usize {
        self.h * self.m
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed primitive element g (the class of t).
    pub fn generator(&self) -> Elt {
        Elt(self.exp[1])
    }

    /// The primitive element g^{(q^m-1)/(q-1)} of F_q.
    pub fn fq_generator(&self) -> Elt {
        self.exp_of(self.subfield_index as u64)
    }

    /// g^k.
    pub fn exp_of(&self, k: u64) -> Elt {
        Elt(self.exp[(k % self.n as u64) as usize])
    }

    /// Discrete log of a nonzero element.
    pub fn log_of(&self, x: Elt) -> Option<u32> {
        if x.is_zero() {
            None
        } else {
            Some(self.log[x.0 as usize])
        }
    }

    /// Element from a little-endian coefficient vector over F_p.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elt> {
        if coeffs.len() > self.degree() {
            return Err(Error::BadElement(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.degree()
            )));
        }
        if coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::BadElement("coefficient not reduced mod p".into()));
        }
        Ok(Elt(coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c)))
    }

    /// Little-endian coefficient vector of length h·m.
    pub fn coeffs(&self, x: Elt) -> Vec<u32> {
        let mut v = x.0;
        (0..self.degree())
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    /// The element with packed value `v`, if in range.
    pub fn elt(&self, v: u32) -> Option<Elt> {
        ((v as u64) < self.order).then_some(Elt(v))
    }

    /// The image of an integer in the prime field.
    pub fn from_int(&self, r: i64) -> Elt {
        Elt(r.rem_euclid(self.p as i64) as u32)
    }

    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        if self.p == 2 {
            return Elt(a.0 ^ b.0);
        }
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + self.n - la };
        let z = self.zech[d as usize];
        if z == NONE {
            Elt::ZERO
        } else {
            Elt(self.exp[(la + z) as usize])
        }
    }

    pub fn neg(&self, a: Elt) -> Elt {
        if self.p == 2 || a.is_zero() {
            return a;
        }
        // -1 = g^{n/2} in odd characteristic
        let l = self.log[a.0 as usize] + self.n / 2;
        Elt(self.exp[l as usize])
    }

    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        if a.is_zero() || b.is_zero() {
            return Elt::ZERO;
        }
        Elt(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elt) -> Option<Elt> {
        if a.is_zero() {
            return None;
        }
        let l = self.log[a.0 as usize];
        Some(Elt(self.exp[((self.n - l) % self.n) as usize]))
    }

    /// a / b; panics on division by zero.
    pub fn div(&self, a: Elt, b: Elt) -> Elt {
        self.mul(a, self.inv(b).expect("division by zero"))
    }

    pub fn pow(&self, a: Elt, e: u64) -> Elt {
        if e == 0 {
            return Elt::ONE;
        }
        if a.is_zero() {
            return Elt::ZERO;
        }
        let l = self.log[a.0 as usize] as u64 * (e % self.n as u64) % self.n as u64;
        Elt(self.exp[l as usize])
    }

    /// x^{q^i}; `i` is reduced mod m.
    pub fn frobenius(&self, x: Elt, i: usize) -> Elt {
        if x.is_zero() {
            return x;
        }
        let qi = self.q_pows[i % self.m];
        let l = self.log[x.0 as usize] as u64 * qi % self.n as u64;
        Elt(self.exp[l as usize])
    }

    /// x^{p^k}, the absolute Frobenius; `k` is reduced mod h·m.
    pub fn frobenius_p(&self, x: Elt, k: usize) -> Elt {
        if x.is_zero() {
            return x;
        }
        let mut e = 1u64;
        for _ in 0..(k % self.degree()) {
            e = e * self.p as u64 % self.n as u64;
        }
        let l = self.log[x.0 as usize] as u64 * e % self.n as u64;
        Elt(self.exp[l as usize])
    }

    /// Relative trace Σ x^{q^j} onto F_q.
    pub fn trace(&self, x: Elt) -> Elt {
        (0..self.m).fold(Elt::ZERO, |acc, j| self.add(acc, self.frobenius(x, j)))
    }

    /// Relative norm Π x^{q^j} = x^{(q^m-1)/(q-1)} onto F_q.
    pub fn norm(&self, x: Elt) -> Elt {
        if x.is_zero() {
            return x;
        }
        let l = self.log[x.0 as usize] as u64 * self.subfield_index as u64 % self.n as u64;
        Elt(self.exp[l as usize])
    }

    /// All x with N(x) = a, ascending by discrete log.
    pub fn norm_fiber(&self, a: Elt) -> Result<Vec<Elt>> {
        if a.is_zero() || !self.in_fq(a) {
            return Err(Error::NotInFqStar);
        }
        // N(g^k) = g^{k·si}; need k·si ≡ log a (mod n), i.e. k ≡ log(a)/si (mod q-1)
        let q1 = (self.q - 1) as u32;
        let target = self.log[a.0 as usize] / self.subfield_index;
        Ok((0..self.n)
            .filter(|k| k % q1 == target)
            .map(|k| Elt(self.exp[k as usize]))
            .collect())
    }

    pub fn in_fq(&self, x: Elt) -> bool {
        x.is_zero() || self.log[x.0 as usize].is_multiple_of(self.subfield_index)
    }

    /// F_q in the canonical order: 0, then successive powers of
    /// [`fq_generator`](Self::fq_generator).
    pub fn fq_elements(&self) -> Vec<Elt> {
        std::iter::once(Elt::ZERO)
            .chain((0..self.q - 1).map(|k| self.exp_of(k * self.subfield_index as u64)))
            .collect()
    }

    /// F_q \ {0}.
    pub fn fq_units(&self) -> Vec<Elt> {
        self.fq_elements()[1..].to_vec()
    }

    /// Position of an F_q element in [`fq_elements`](Self::fq_elements).
    pub fn fq_index(&self, x: Elt) -> Option<usize> {
        if x.is_zero() {
            return Some(0);
        }
        let l = self.log[x.0 as usize];
        l.is_multiple_of(self.subfield_index).then(|| 1 + (l / self.subfield_index) as usize)
    }

    /// F_{q^m} in the canonical order: 0, g^0, g^1, ….
    pub fn elements(&self) -> impl Iterator<Item = Elt> + '_ {
        std::iter::once(Elt::ZERO).chain(self.units())
    }

    /// F_{q^m} \ {0} as g^0, g^1, ….
    pub fn units(&self) -> impl Iterator<Item = Elt> + '_ {
        self.exp[..self.n as usize].iter().map(|&v| Elt(v))
    }

    /// Coordinates of `x` over F_q in the basis `1, g, …, g^{m-1}`.
    pub fn fq_coordinates(&self, x: Elt) -> Vec<Elt> {
        let conv = self.fq_coords.get_or_init(|| FqCoordinates::new(self));
        conv.coordinates(self, x)
    }

    /// Inverse of [`fq_coordinates`](Self::fq_coordinates).
    pub fn from_fq_coordinates(&self, coords: &[Elt]) -> Elt {
        coords.iter().enumerate().fold(Elt::ZERO, |acc, (j, &c)| {
            self.add(acc, self.mul(c, self.exp_of(j as u64)))
        })
    }
}

fn add_digits(p: u32, mut a: u32, mut b: u32) -> u32 {
    let mut out = 0u32;
    let mut place = 1u32;
    while a > 0 || b > 0 {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place = place.wrapping_mul(p);
    }
    out
}

/// Converts F_p digit vectors into F_q coordinates. The F_p basis
/// `{ω^k g^j}` (ω the generator of F_q, k < h, j < m) is inverted once.
struct FqCoordinates {
    /// `inv[r][c]`: row r gives the F_p coefficient of basis vector r.
    inv: Vec<Vec<u32>>,
}

impl FqCoordinates {
    fn new(ctx: &FieldCtx) -> FqCoordinates {
        let (h, m, p) = (ctx.h, ctx.m, ctx.p);
        let deg = h * m;
        let omega = ctx.fq_generator();
        // column (j*h + k) = digits(ω^k g^j)
        let mut a = vec![vec![0u32; 2 * deg]; deg];
        for j in 0..m {
            for k in 0..h {
                let b = ctx.mul(ctx.pow(omega, k as u64), ctx.exp_of(j as u64));
                for (r, d) in ctx.coeffs(b).into_iter().enumerate() {
                    a[r][j * h + k] = d;
                }
            }
        }
        for (r, row) in a.iter_mut().enumerate() {
            row[deg + r] = 1;
        }
        crate::fp::invert_augmented(&mut a, p).expect("F_p basis of F_{q^m} is singular");
        FqCoordinates {
            inv: a.into_iter().map(|row| row[deg..].to_vec()).collect(),
        }
    }

    fn coordinates(&self, ctx: &FieldCtx, x: Elt) -> Vec<Elt> {
        let (h, m, p) = (ctx.h, ctx.m, ctx.p);
        let digits = ctx.coeffs(x);
        let omega = ctx.fq_generator();
        (0..m)
            .map(|j| {
                (0..h).fold(Elt::ZERO, |acc, k| {
                    let row = &self.inv[j * h + k];
                    let c = row
                        .iter()
                        .zip(&digits)
                        .fold(0u64, |s, (&r, &d)| (s + r as u64 * d as u64) % p as u64);
                    ctx.add(acc, ctx.mul(ctx.from_int(c as i64), ctx.pow(omega, k as u64)))
                })
            })
            .collect()
    }
}
