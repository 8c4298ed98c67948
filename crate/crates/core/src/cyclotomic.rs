//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(n)-1}` modulo the
//! `n`-th cyclotomic polynomial, as integer numerators over one positive
//! common denominator. The representation is canonical for a fixed order, so
//! equality is coefficient equality. Operands of different orders are coerced
//! to the field of order `lcm(n, m)` before any operation.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("galois exponent {s} is not coprime to order {n}")]
    NotCoprime { s: i64, n: u32 },
    #[error("expected {expected} coefficients for order {order}, got {got}")]
    BadLength { order: u32, expected: usize, got: usize },
    #[error("order {from} does not divide order {to}")]
    NotDivisible { from: u32, to: u32 },
    #[error("order must be positive")]
    ZeroOrder,
    #[error("malformed rational {0:?}")]
    BadRational(String),
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

pub(crate) fn lcm_u32(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

/// Per-order tables: the cyclotomic polynomial and the reductions of `x^k`.
struct CycloData {
    phi: usize,
    /// Coefficients of `Φ_n`, low degree first, monic.
    poly: Vec<i64>,
    /// `powers[k]` is `x^k mod Φ_n` for `k < max(n, 2φ - 1)`.
    powers: Vec<Vec<i64>>,
}

thread_local! {
    static CACHE: RefCell<HashMap<u32, Rc<CycloData>>> = RefCell::new(HashMap::new());
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Exact division of integer polynomials by a monic divisor.
fn poly_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![0];
    }
    let mut quot = vec![0i64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Coefficients of the `n`-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    data(n).poly.clone()
}

fn build_data(n: u32) -> CycloData {
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for d in divisors(n) {
        if d < n {
            let sub = data(d).poly.clone();
            poly = poly_div_monic(&poly, &sub);
        }
    }
    let phi = poly.len() - 1;
    debug_assert_eq!(phi, euler_phi(n));
    let count = (n as usize).max(2 * phi - 1);
    let mut powers = Vec::with_capacity(count);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..count {
        powers.push(cur.clone());
        // multiply by x and reduce x^phi = -sum poly[i] x^i
        let top = cur[phi - 1];
        let mut next = vec![0i64; phi];
        for i in (1..phi).rev() {
            next[i] = cur[i - 1];
        }
        if top != 0 {
            for (i, slot) in next.iter_mut().enumerate() {
                *slot -= top * poly[i];
            }
        }
        cur = next;
    }
    CycloData { phi, poly, powers }
}

fn data(n: u32) -> Rc<CycloData> {
    if let Some(d) = CACHE.with(|c| c.borrow().get(&n).cloned()) {
        return d;
    }
    let built = Rc::new(build_data(n));
    CACHE.with(|c| {
        c.borrow_mut().insert(n, built.clone());
    });
    built
}

/// An element of `Q(ζ_n)` with `n = order`.
#[derive(Clone)]
pub struct CycNum {
    order: u32,
    den: BigInt,
    num: Vec<BigInt>,
}

impl CycNum {
    fn from_parts(order: u32, den: BigInt, num: Vec<BigInt>) -> Self {
        let mut x = CycNum { order, den, num };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn zero(order: u32) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        let phi = data(order).phi;
        CycNum { order, den: BigInt::one(), num: vec![BigInt::zero(); phi] }
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    pub fn from_int(order: u32, v: i64) -> Self {
        let mut x = Self::zero(order);
        x.num[0] = BigInt::from(v);
        x
    }

    pub fn from_rational(order: u32, q: &BigRational) -> Self {
        let mut x = Self::zero(order);
        x.num[0] = q.numer().clone();
        x.den = q.denom().clone();
        x.normalize();
        x
    }

    /// Builds an element from power-basis coordinates.
    pub fn from_coeffs(order: u32, coeffs: &[BigRational]) -> Result<Self, CycError> {
        if order == 0 {
            return Err(CycError::ZeroOrder);
        }
        let phi = data(order).phi;
        if coeffs.len() != phi {
            return Err(CycError::BadLength { order, expected: phi, got: coeffs.len() });
        }
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Self::from_parts(order, den, num))
    }

    /// Builds an element from integer power-basis coordinates.
    pub fn from_int_coeffs(order: u32, coeffs: &[i64]) -> Result<Self, CycError> {
        let q: Vec<BigRational> =
            coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        Self::from_coeffs(order, &q)
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n > 0, "cyclotomic order must be positive");
        let d = data(n);
        let idx = k.rem_euclid(n as i64) as usize;
        let num = d.powers[idx].iter().map(|&c| BigInt::from(c)).collect();
        CycNum { order: n, den: BigInt::one(), num }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of the ambient field over `Q`.
    pub fn degree(&self) -> usize {
        self.num.len()
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num[1..].iter().all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        match self.as_rational() {
            Some(q) if q.is_integer() => Some(q.to_integer()),
            _ => None,
        }
    }

    /// Re-expresses the element in `Q(ζ_m)`; requires `order | m`.
    pub fn embed(&self, m: u32) -> Result<Self, CycError> {
        if m == 0 {
            return Err(CycError::ZeroOrder);
        }
        if !m.is_multiple_of(self.order) {
            return Err(CycError::NotDivisible { from: self.order, to: m });
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let target = data(m);
        let step = (m / self.order) as usize;
        let mut num = vec![BigInt::zero(); target.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &target.powers[(k * step) % m as usize];
            for (slot, &p) in num.iter_mut().zip(row) {
                if p != 0 {
                    *slot += c * p;
                }
            }
        }
        Ok(Self::from_parts(m, self.den.clone(), num))
    }

    /// Expresses the element in the subfield `Q(ζ_n)`, `n | order`, if it lies there.
    pub fn restrict(&self, n: u32) -> Option<Self> {
        if n == 0 || !self.order.is_multiple_of(n) {
            return None;
        }
        if n == self.order {
            return Some(self.clone());
        }
        // columns: embeddings of the power basis of Q(zeta_n)
        let small = data(n).phi;
        let big = self.num.len();
        let mut rows: Vec<Vec<BigRational>> = vec![Vec::with_capacity(small + 1); big];
        for k in 0..small {
            let col = CycNum::root_of_unity(n, k as i64).embed(self.order).ok()?;
            for (r, c) in col.coeffs().into_iter().enumerate() {
                rows[r].push(c);
            }
        }
        for (r, c) in self.coeffs().into_iter().enumerate() {
            rows[r].push(c);
        }
        let sol = solve_rational_augmented(rows, small)?;
        Self::from_coeffs(n, &sol).ok()
    }

    fn coerce_pair<'a>(
        a: &'a CycNum,
        b: &'a CycNum,
    ) -> (std::borrow::Cow<'a, CycNum>, std::borrow::Cow<'a, CycNum>) {
        use std::borrow::Cow;
        if a.order == b.order {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let m = lcm_u32(a.order, b.order);
        let ca = if a.order == m { Cow::Borrowed(a) } else { Cow::Owned(a.embed(m).unwrap()) };
        let cb = if b.order == m { Cow::Borrowed(b) } else { Cow::Owned(b.embed(m).unwrap()) };
        (ca, cb)
    }

    fn add_same(&self, other: &CycNum, negate: bool) -> CycNum {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -other.clone() } else { other.clone() };
        }
        if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            return Self::from_parts(self.order, self.den.clone(), num);
        }
        let g = self.den.gcd(&other.den);
        let fa = &other.den / &g;
        let fb = &self.den / &g;
        let den = &self.den * &fa;
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(a, b)| {
                let x = a * &fa;
                let y = b * &fb;
                if negate {
                    x - y
                } else {
                    x + y
                }
            })
            .collect();
        Self::from_parts(self.order, den, num)
    }

    fn mul_same(&self, other: &CycNum) -> CycNum {
        let d = data(self.order);
        let phi = d.phi;
        if self.is_zero() || other.is_zero() {
            return CycNum::zero(self.order);
        }
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<BigInt> = prod.drain(..phi).collect();
        for (k, c) in prod.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &p) in num.iter_mut().zip(&d.powers[phi + k]) {
                if p != 0 {
                    *slot += c * p;
                }
            }
        }
        Self::from_parts(self.order, &self.den * &other.den, num)
    }

    /// Multiplies by `ζ_order^k` without a full product.
    pub fn mul_root_of_unity(&self, k: i64) -> CycNum {
        let n = self.order;
        let d = data(n);
        let shift = k.rem_euclid(n as i64) as usize;
        if shift == 0 || self.is_zero() {
            return self.clone();
        }
        let mut num = vec![BigInt::zero(); d.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &d.powers[(i + shift) % n as usize];
            for (slot, &p) in num.iter_mut().zip(row) {
                if p != 0 {
                    *slot += c * p;
                }
            }
        }
        CycNum { order: n, den: self.den.clone(), num }
    }

    pub fn scale_int(&self, k: i64) -> CycNum {
        if k == 0 {
            return CycNum::zero(self.order);
        }
        let k = BigInt::from(k);
        let num = self.num.iter().map(|c| c * &k).collect();
        Self::from_parts(self.order, self.den.clone(), num)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Φ_n`.
    pub fn inv(&self) -> Result<CycNum, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        let d = data(self.order);
        let phi = d.phi;
        let q = |v: i64| BigRational::from_integer(BigInt::from(v));
        let modulus: Vec<BigRational> = d.poly.iter().map(|&c| q(c)).collect();
        let a: Vec<BigRational> = self.num.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        // r_i = s_i * a mod Φ
        let mut r0 = trim(modulus);
        let mut r1 = trim(a);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !(r1.len() == 1 && !r1[0].is_zero()) {
            let (quot, rem) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&quot, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
            if r1.is_empty() {
                // gcd has positive degree: impossible for an irreducible modulus
                return Err(CycError::DivisionByZero);
            }
        }
        let c = r1[0].clone();
        let mut coeffs = vec![BigRational::zero(); phi];
        // s1 * a ≡ c, reduce s1 mod Φ (degree may exceed phi - 1)
        let (_, s_red) = poly_divrem(&s1, &trim(d.poly.iter().map(|&v| q(v)).collect()));
        for (i, v) in s_red.into_iter().enumerate() {
            coeffs[i] = v / &c;
        }
        // the numerators of self carried the denominator implicitly
        let den_factor = BigRational::from_integer(self.den.clone());
        for v in &mut coeffs {
            *v *= &den_factor;
        }
        CycNum::from_coeffs(self.order, &coeffs)
    }

    pub fn checked_div(&self, other: &CycNum) -> Result<CycNum, CycError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<CycNum, CycError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = CycNum::one(self.order);
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Image under the automorphism `ζ ↦ ζ^s`.
    pub fn galois(&self, s: i64) -> Result<CycNum, CycError> {
        let n = self.order;
        if (s.rem_euclid(n as i64) as u64).gcd(&(n as u64)) != 1 {
            return Err(CycError::NotCoprime { s, n });
        }
        let d = data(n);
        let s = s.rem_euclid(n as i64) as usize;
        let mut num = vec![BigInt::zero(); d.phi];
        for (k, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &p) in num.iter_mut().zip(&d.powers[(s * k) % n as usize]) {
                if p != 0 {
                    *slot += c * p;
                }
            }
        }
        Ok(Self::from_parts(n, self.den.clone(), num))
    }

    /// Complex conjugate, i.e. the Galois image under `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> CycNum {
        self.galois(-1).expect("-1 is a unit")
    }

    /// Returns `k` with `self = ζ_n^k` (`n = order`), if such `k` exists.
    pub fn as_root_of_unity(&self) -> Option<i64> {
        if !self.den.is_one() {
            return None;
        }
        let d = data(self.order);
        let small: Option<Vec<i64>> = self.num.iter().map(|c| c.to_i64()).collect();
        let small = small?;
        (0..self.order as usize).find(|&k| d.powers[k] == small).map(|k| k as i64)
    }

    /// Field norm down to `Q`: the product of all Galois conjugates.
    pub fn norm(&self) -> BigRational {
        let n = self.order as i64;
        let mut acc = CycNum::one(self.order);
        for s in 1..=n.max(1) {
            if (s as u64).gcd(&(n as u64)) == 1 {
                acc = &acc * &self.galois(s).unwrap();
            }
        }
        acc.as_rational().expect("norm lies in Q")
    }

    /// Whether the element is a square in its field.
    ///
    /// Decided exactly for fields of degree at most two; `None` otherwise.
    pub fn is_square(&self) -> Option<bool> {
        if self.is_zero() {
            return Some(true);
        }
        let d = data(self.order);
        match d.phi {
            1 => Some(is_rational_square(&self.as_rational().unwrap())),
            2 => {
                // Φ = x^2 + p x + q, ζ = (-p + √D)/2 with D = p^2 - 4q
                let p = BigRational::from_integer(d.poly[1].into());
                let q = BigRational::from_integer(d.poly[0].into());
                let disc = &p * &p - BigRational::from_integer(4.into()) * &q;
                let c = self.coeffs();
                let two = BigRational::from_integer(2.into());
                // x = a + b ζ = (a - b p / 2) + (b / 2) √D
                let u = &c[0] - &c[1] * &p / &two;
                let v = &c[1] / &two;
                Some(is_quadratic_square(&u, &v, &disc))
            }
            _ => None,
        }
    }
}

fn is_rational_square(q: &BigRational) -> bool {
    if q.is_negative() {
        return false;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    &(&rn * &rn) == n && &(&rd * &rd) == d
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if !is_rational_square(q) {
        return None;
    }
    Some(BigRational::new(q.numer().sqrt(), q.denom().sqrt()))
}

/// Is `u + v √D` a square in `Q(√D)` (`D` not a rational square)?
fn is_quadratic_square(u: &BigRational, v: &BigRational, disc: &BigRational) -> bool {
    if v.is_zero() {
        // u is a square in Q, or u / D is (then u = (r √D)^2)
        return is_rational_square(u) || is_rational_square(&(u / disc));
    }
    let norm = u * u - disc * v * v;
    let Some(r) = rational_sqrt(&norm) else {
        return false;
    };
    let two = BigRational::from_integer(2.into());
    for cand in [(u + &r) / &two, (u - &r) / &two] {
        if let Some(a) = rational_sqrt(&cand) {
            if !a.is_zero() {
                let b = v / (&two * &a);
                if &(&a * &a + disc * &b * &b) == u {
                    return true;
                }
            }
        }
    }
    false
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    let lead = b[db].clone();
    while rem.len() >= b.len() {
        let k = rem.len() - b.len();
        let c = rem.last().unwrap() / &lead;
        for (i, y) in b.iter().enumerate() {
            rem[k + i] -= &c * y;
        }
        quot[k] = c;
        rem.pop();
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Solves a consistent rational system given as augmented rows `[A | b]`
/// with `unknowns` columns; `None` if inconsistent.
fn solve_rational_augmented(mut rows: Vec<Vec<BigRational>>, unknowns: usize) -> Option<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = BigRational::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..=unknowns {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); unknowns];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rows[i][unknowns].clone();
    }
    Some(sol)
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = CycNum::coerce_pair(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycNum {}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        let (a, b) = CycNum::coerce_pair(self, rhs);
        a.add_same(&b, false)
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        let (a, b) = CycNum::coerce_pair(self, rhs);
        a.add_same(&b, true)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        let (a, b) = CycNum::coerce_pair(self, rhs);
        a.mul_same(&b)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $f(self, rhs: CycNum) -> CycNum {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $f(self, rhs: &CycNum) -> CycNum {
                (&self).$f(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, rhs: &CycNum) {
        *self = &*self * rhs;
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(mut self) -> CycNum {
        for c in &mut self.num {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -self.clone()
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum[{}]({})", self.order, self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    write!(f, "z{}", self.order)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Formats a rational as `p/q` (always with a denominator).
pub fn fraction_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_fraction(s: &str) -> Result<BigRational, CycError> {
    let bad = || CycError::BadRational(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

#[derive(Serialize, Deserialize)]
struct CycNumWire {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CycNumWire { order: self.order, coeffs: self.coeffs().iter().map(fraction_string).collect() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = CycNumWire::deserialize(deserializer)?;
        let coeffs: Result<Vec<_>, _> = wire.coeffs.iter().map(|s| parse_fraction(s)).collect();
        let coeffs = coeffs.map_err(de::Error::custom)?;
        CycNum::from_coeffs(wire.order, &coeffs).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // first polynomial with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).contains(&-2));
        for n in 1..40 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, euler_phi(n));
        }
    }

    #[test]
    fn roots_of_unity_basics() {
        assert!(CycNum::root_of_unity(1, 0).is_one());
        assert_eq!(CycNum::root_of_unity(4, 2), CycNum::from_int(4, -1));
        let z = CycNum::root_of_unity(3, 1);
        assert!(z.pow(3).unwrap().is_one());
    }

    #[test]
    fn arithmetic_examples() {
        let one = CycNum::one(3);
        let a = &one - &CycNum::root_of_unity(3, 1);
        let b = &one - &CycNum::root_of_unity(3, 2);
        assert_eq!(&a * &b, CycNum::from_int(3, 3));
        let s = (1..5).fold(CycNum::zero(5), |acc, k| &acc + &CycNum::root_of_unity(5, k));
        assert_eq!(s, CycNum::from_int(5, -1));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(CycNum::zero(5).inv(), Err(CycError::DivisionByZero));
        assert!(CycNum::one(7).checked_div(&CycNum::zero(7)).is_err());
    }

    #[test]
    fn inverse_of_non_unit() {
        let x = CycNum::from_coeffs(5, &[q(2, 3), q(-1, 1), q(0, 1), q(5, 7)]).unwrap();
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
    }

    #[test]
    fn root_of_unity_detection() {
        assert_eq!(CycNum::from_int(2, -1).as_root_of_unity(), Some(1));
        assert_eq!(CycNum::from_int(2, 2).as_root_of_unity(), None);
        assert_eq!(CycNum::root_of_unity(6, 5).as_root_of_unity(), Some(5));
        // -1 has order 2, which does not divide 5
        assert_eq!(CycNum::from_int(5, -1).as_root_of_unity(), None);
    }

    #[test]
    fn galois_examples() {
        let z = CycNum::root_of_unity(6, 1);
        assert_eq!(z.galois(5).unwrap(), CycNum::root_of_unity(6, 5));
        let r = CycNum::from_rational(6, &q(3, 7));
        assert_eq!(r.galois(5).unwrap(), r);
        let x = CycNum::from_coeffs(6, &[q(1, 2), q(-3, 1)]).unwrap();
        assert_eq!(x.galois(5).unwrap().galois(5).unwrap(), x);
        assert_eq!(z.galois(2), Err(CycError::NotCoprime { s: 2, n: 6 }));
    }

    #[test]
    fn mixed_orders_coerce_to_lcm() {
        let a = CycNum::root_of_unity(3, 1);
        let b = CycNum::root_of_unity(4, 1);
        let p = &a * &b;
        assert_eq!(p.order(), 12);
        assert_eq!(p, CycNum::root_of_unity(12, 7));
        assert_eq!(CycNum::root_of_unity(3, 1), CycNum::root_of_unity(6, 2));
    }

    #[test]
    fn embed_and_restrict_round_trip() {
        let x = CycNum::from_coeffs(3, &[q(1, 2), q(-4, 3)]).unwrap();
        let up = x.embed(6).unwrap();
        assert_eq!(up.order(), 6);
        let down = up.restrict(3).unwrap();
        assert_eq!(down.coeffs(), x.coeffs());
        assert!(CycNum::root_of_unity(4, 1).embed(12).unwrap().restrict(3).is_none());
        assert!(x.embed(4).is_err());
    }

    #[test]
    fn squares_in_small_fields() {
        assert_eq!(CycNum::from_int(1, 4).is_square(), Some(true));
        assert_eq!(CycNum::from_int(1, 2).is_square(), Some(false));
        // -3 = (√-3)^2 in Q(ζ_3)
        assert_eq!(CycNum::from_int(3, -3).is_square(), Some(true));
        assert_eq!(CycNum::from_int(3, 2).is_square(), Some(false));
        let z = CycNum::root_of_unity(6, 1);
        let sq = &(&z + &CycNum::from_int(6, 3)) * &(&z + &CycNum::from_int(6, 3));
        assert_eq!(sq.is_square(), Some(true));
        assert_eq!((&sq * &CycNum::from_int(6, 2)).is_square(), Some(false));
        // ζ_3 = (ζ_3^2)^2
        assert_eq!(CycNum::root_of_unity(3, 1).is_square(), Some(true));
        assert_eq!(CycNum::from_int(5, 2).is_square(), None);
    }

    #[test]
    fn serialization_is_fraction_strings() {
        let x = CycNum::from_coeffs(3, &[q(1, 2), q(-4, 1)]).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"order":3,"coeffs":["1/2","-4/1"]}"#);
        let back: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<CycNum>(r#"{"order":3,"coeffs":["1"]}"#).is_err());
    }

    #[test]
    fn norms() {
        let one = CycNum::one(5);
        let x = &one - &CycNum::root_of_unity(5, 1);
        assert_eq!(x.norm(), q(5, 1));
    }
}
