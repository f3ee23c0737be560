//! Exact arithmetic in the cyclotomic field Q(ζ_N).
//!
//! Field elements are rational coefficient vectors of length φ(N) in the power
//! basis 1, ζ, …, ζ^{φ(N)−1}, always reduced modulo the N-th cyclotomic
//! polynomial so equality is coefficientwise. Signs of real elements are
//! decided exactly: zero by the coefficient test, otherwise by rational
//! interval arithmetic around cos(2πk/N) refined until the sign is certified.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use thiserror::Error;

/// Largest supported conductor. Everything this crate constructs stays far
/// below it; the bound just keeps φ(N)-sized allocations sane.
pub const MAX_MODULUS: u64 = 64;

type Q = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("value is not fixed by complex conjugation, sign undefined")]
    NotReal,
    #[error("cannot lift from Q(zeta_{from}) into Q(zeta_{to}): {from} does not divide {to}")]
    BadLift { from: u64, to: u64 },
}

/// ζ_N^e with the exponent kept reduced mod N.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootOfUnity {
    modulus: u64,
    exponent: u64,
}

impl RootOfUnity {
    pub fn new(modulus: u64, exponent: i64) -> Self {
        assert!(modulus >= 1, "root of unity needs modulus >= 1");
        Self { modulus, exponent: exponent.rem_euclid(modulus as i64) as u64 }
    }

    pub fn one(modulus: u64) -> Self {
        Self::new(modulus, 0)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "root-of-unity modulus mismatch");
        Self::new(self.modulus, (self.exponent + other.exponent) as i64)
    }

    pub fn inv(&self) -> Self {
        Self::new(self.modulus, -(self.exponent as i64))
    }

    pub fn pow(&self, k: i64) -> Self {
        let e = (i128::from(self.exponent) * i128::from(k)).rem_euclid(i128::from(self.modulus));
        Self::new(self.modulus, e as i64)
    }

    /// (order, exponent) with the exponent primitive for that order — the
    /// modulus-independent identity of the complex number, used to compare
    /// roots living in different ambient groups.
    pub fn canonical(&self) -> (u64, u64) {
        if self.exponent == 0 {
            return (1, 0);
        }
        let g = num_integer::gcd(self.exponent, self.modulus);
        (self.modulus / g, self.exponent / g)
    }

    /// The same complex number as a root for a larger modulus (order must divide it).
    pub fn rescale(&self, new_modulus: u64) -> Result<Self, CyclotomicError> {
        let (order, e) = self.canonical();
        if new_modulus % order != 0 {
            return Err(CyclotomicError::BadLift { from: order, to: new_modulus });
        }
        Ok(Self::new(new_modulus, (e * (new_modulus / order)) as i64))
    }

    pub fn embed(&self) -> CyclotomicNumber {
        CyclotomicNumber::root(self.modulus, self.exponent as i64)
    }
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut n = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

static PHI_CACHE: Lazy<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Φ_N as integer coefficients in ascending degree (monic, degree φ(N)),
/// by recursive exact division of x^N − 1 by the Φ_d of proper divisors d.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    assert!((1..=MAX_MODULUS).contains(&n), "conductor {n} outside supported range");
    if let Some(hit) = PHI_CACHE.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let poly = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        // x^n - 1
        let mut num = vec![BigInt::zero(); (n + 1) as usize];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::one();
        for d in 1..n {
            if n % d == 0 {
                num = int_poly_div_exact(&num, &cyclotomic_polynomial(d));
            }
        }
        num
    };
    let arc = Arc::new(poly);
    PHI_CACHE.lock().unwrap().insert(n, arc.clone());
    arc
}

/// Exact division of integer polynomials (divisor monic, remainder known zero).
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    while rem.len() > dd {
        let lead = rem.pop().unwrap();
        if !lead.is_zero() {
            let shift = rem.len() - dd;
            quot[shift] = lead.clone();
            for i in 0..dd {
                let delta = &lead * &den[i];
                rem[shift + i] -= delta;
            }
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    quot
}

/// Element of Q(ζ_N): length-φ(N) rational vector in the power basis, reduced mod Φ_N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicNumber {
    modulus: u64,
    coeffs: Vec<Q>,
}

impl CyclotomicNumber {
    pub fn zero(modulus: u64) -> Self {
        let phi = euler_phi(modulus) as usize;
        assert!((1..=MAX_MODULUS).contains(&modulus));
        Self { modulus, coeffs: vec![Q::zero(); phi] }
    }

    pub fn one(modulus: u64) -> Self {
        Self::from_rational(Q::one(), modulus)
    }

    pub fn from_rational(q: Q, modulus: u64) -> Self {
        let mut out = Self::zero(modulus);
        out.coeffs[0] = q;
        out
    }

    pub fn from_integer(v: i64, modulus: u64) -> Self {
        Self::from_rational(Q::from(BigInt::from(v)), modulus)
    }

    /// ζ_N^e as a reduced field element.
    pub fn root(modulus: u64, exponent: i64) -> Self {
        let e = exponent.rem_euclid(modulus as i64) as usize;
        let mut dense = vec![Q::zero(); e + 1];
        dense[e] = Q::one();
        Self { modulus, coeffs: reduce_mod_phi(modulus, dense) }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(q) when the element lies in the prime field.
    pub fn as_rational(&self) -> Option<Q> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn assert_same(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "cyclotomic modulus mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self { modulus: self.modulus, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Self { modulus: self.modulus, coeffs }
    }

    pub fn neg(&self) -> Self {
        Self { modulus: self.modulus, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same(other);
        let mut dense = vec![Q::zero(); self.coeffs.len() + other.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    dense[i + j] += a * b;
                }
            }
        }
        Self { modulus: self.modulus, coeffs: reduce_mod_phi(self.modulus, dense) }
    }

    pub fn scale(&self, by: &Q) -> Self {
        Self { modulus: self.modulus, coeffs: self.coeffs.iter().map(|c| c * by).collect() }
    }

    /// Complex conjugation ζ^e ↦ ζ^{N−e}, extended linearly.
    pub fn conj(&self) -> Self {
        let n = self.modulus;
        let mut acc = Self::zero(n);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let e = ((n - (k as u64 % n)) % n) as i64;
                acc = acc.add(&Self::root(n, e).scale(c));
            }
        }
        acc
    }

    /// Field inverse via the extended Euclidean algorithm against Φ_N
    /// (which is irreducible, so any nonzero element is a unit).
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let phi: Vec<Q> = cyclotomic_polynomial(self.modulus)
            .iter()
            .map(|c| Q::from(c.clone()))
            .collect();
        let (g, s, _) = poly_ext_gcd(&self.coeffs, &phi);
        // gcd is a nonzero constant; scale the Bézout coefficient by 1/g.
        assert_eq!(poly_degree(&g), Some(0), "cyclotomic polynomial must be coprime to a unit");
        let ginv = g[0].recip();
        let scaled: Vec<Q> = s.iter().map(|c| c * &ginv).collect();
        Some(Self { modulus: self.modulus, coeffs: reduce_mod_phi(self.modulus, scaled) })
    }

    /// The same number inside a larger cyclotomic field (N | M).
    pub fn lift(&self, new_modulus: u64) -> Result<Self, CyclotomicError> {
        if new_modulus == self.modulus {
            return Ok(self.clone());
        }
        if new_modulus % self.modulus != 0 {
            return Err(CyclotomicError::BadLift { from: self.modulus, to: new_modulus });
        }
        let step = (new_modulus / self.modulus) as i64;
        let mut acc = Self::zero(new_modulus);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&Self::root(new_modulus, k as i64 * step).scale(c));
            }
        }
        Ok(acc)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Exact sign of a real element: −1, 0, or +1.
    ///
    /// Zero is detected by the coefficient test; otherwise the real value
    /// Σ c_k·cos(2πk/N) is enclosed in a rational interval that is refined
    /// until it excludes zero (it must, since a nonzero field element has a
    /// nonzero image under any embedding).
    pub fn real_sign(&self) -> Result<i8, CyclotomicError> {
        if self.is_zero() {
            return Ok(0);
        }
        if !self.is_real() {
            return Err(CyclotomicError::NotReal);
        }
        if let Some(q) = self.as_rational() {
            return Ok(if q.is_positive() { 1 } else { -1 });
        }
        for level in 0..64u32 {
            let terms = 8 + 6 * level as usize;
            let pi = pi_interval(terms);
            let mut total = Interval::point(Q::zero());
            for (k, c) in self.coeffs.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                // θ = 2π k / N
                let ratio = Q::new(BigInt::from(2 * k as u64), BigInt::from(self.modulus));
                let theta = pi.scale(&ratio);
                total = total.add(&cos_interval(&theta).scale(c));
            }
            if total.lo.is_positive() {
                return Ok(1);
            }
            if total.hi.is_negative() {
                return Ok(-1);
            }
        }
        unreachable!("interval refinement failed to separate a nonzero real value from zero")
    }

    /// True exactly when the element is real and strictly positive.
    pub fn certify_positive_real(&self) -> Result<bool, CyclotomicError> {
        Ok(self.real_sign()? > 0)
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{k}")?,
            }
        }
        Ok(())
    }
}

/// Reduce a dense ascending coefficient vector mod Φ_N down to length φ(N).
fn reduce_mod_phi(n: u64, mut poly: Vec<Q>) -> Vec<Q> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    while poly.len() > deg {
        let lead = poly.pop().unwrap();
        if !lead.is_zero() {
            let shift = poly.len() - deg;
            for i in 0..deg {
                let delta = &lead * Q::from(phi[i].clone());
                poly[shift + i] -= delta;
            }
        }
    }
    poly.resize(deg, Q::zero());
    poly
}

fn poly_degree(p: &[Q]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

fn poly_mul_q(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub_q(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let mut out = vec![Q::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(out)
}

/// Quotient and remainder of rational polynomials (b nonzero).
fn poly_divmod_q(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let db = poly_degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem: Vec<Q> = poly_trim(a.to_vec());
    let mut quot = vec![Q::zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = poly_degree(&rem) {
        if dr < db {
            break;
        }
        let factor = &rem[dr] / &lead;
        let shift = dr - db;
        quot[shift] = factor.clone();
        for i in 0..=db {
            let delta = &factor * &b[i];
            rem[shift + i] -= delta;
        }
        rem = poly_trim(rem);
        if rem.iter().all(|c| c.is_zero()) {
            break;
        }
    }
    (poly_trim(quot), poly_trim(rem))
}

/// Extended gcd: returns (g, s, t) with s·a + t·b = g.
fn poly_ext_gcd(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>, Vec<Q>) {
    let mut r0 = poly_trim(a.to_vec());
    let mut r1 = poly_trim(b.to_vec());
    let mut s0 = vec![Q::one()];
    let mut s1 = vec![Q::zero()];
    let mut t0 = vec![Q::zero()];
    let mut t1 = vec![Q::one()];
    while poly_degree(&r1).is_some() {
        let (q, r) = poly_divmod_q(&r0, &r1);
        let new_s = poly_sub_q(&s0, &poly_mul_q(&q, &s1));
        let new_t = poly_sub_q(&t0, &poly_mul_q(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = new_s;
        t0 = t1;
        t1 = new_t;
    }
    (r0, s0, t0)
}

// ---------------------------------------------------------------------------
// Rational interval arithmetic for sign certification.

#[derive(Debug, Clone)]
struct Interval {
    lo: Q,
    hi: Q,
}

impl Interval {
    fn point(q: Q) -> Self {
        Self { lo: q.clone(), hi: q }
    }

    fn add(&self, other: &Self) -> Self {
        Self { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    fn scale(&self, by: &Q) -> Self {
        if by.is_negative() {
            Self { lo: &self.hi * by, hi: &self.lo * by }
        } else {
            Self { lo: &self.lo * by, hi: &self.hi * by }
        }
    }

    fn midpoint(&self) -> Q {
        (&self.lo + &self.hi) / Q::from(BigInt::from(2))
    }

    fn half_width(&self) -> Q {
        (&self.hi - &self.lo) / Q::from(BigInt::from(2))
    }
}

/// Alternating series for arctan(1/q) with a one-term tail bound.
fn arctan_recip_interval(q: u64, terms: usize) -> Interval {
    let q = BigInt::from(q);
    let mut sum = Q::zero();
    let mut qpow = q.clone(); // q^(2i+1)
    let qsq = &q * &q;
    for i in 0..terms {
        let term = Q::new(BigInt::one(), BigInt::from(2 * i as u64 + 1) * &qpow);
        if i % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        qpow *= &qsq;
    }
    let tail = Q::new(BigInt::one(), BigInt::from(2 * terms as u64 + 1) * &qpow);
    Interval { lo: &sum - &tail, hi: &sum + &tail }
}

/// π by the Machin formula with rigorous interval bounds.
fn pi_interval(terms: usize) -> Interval {
    let a = arctan_recip_interval(5, terms);
    let b = arctan_recip_interval(239, terms);
    let sixteen = Q::from(BigInt::from(16));
    let four = Q::from(BigInt::from(4));
    Interval {
        lo: &a.lo * &sixteen - &b.hi * &four,
        hi: &a.hi * &sixteen - &b.lo * &four,
    }
}

/// cos over an interval: Taylor at the midpoint plus a Lipschitz widening
/// (|cos x − cos y| ≤ |x − y|). The Taylor tail is bounded by the first
/// omitted term, valid once the terms are decreasing.
fn cos_interval(theta: &Interval) -> Interval {
    let mid = theta.midpoint();
    let width = theta.half_width();
    let midsq = &mid * &mid;
    // 30 terms: |θ| ≤ 2π, so terms decrease long before i = 30 and the tail
    // is far below any width we ever need.
    let mut sum = Q::zero();
    let mut term = Q::one(); // mid^{2i} / (2i)!
    for i in 0..30u64 {
        if i % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        term = &term * &midsq / Q::from(BigInt::from((2 * i + 1) * (2 * i + 2)));
    }
    let slack = term.abs() + width.abs();
    Interval { lo: &sum - &slack, hi: &sum + &slack }
}
