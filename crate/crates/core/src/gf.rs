//! Arithmetic in GF(p^m).
//!
//! Elements are stored as their canonical index: an element with
//! coefficients `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` in the power basis of
//! the modulus root has index `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. The
//! index order is the total order used for every deterministic choice in the
//! crate, and the prime subfield occupies indices `0..p`.
//!
//! A [`GaloisField`] owns log/antilog tables built from its primitive
//! element, plus Zech logarithms for addition in odd characteristic.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

/// Shared handle to a field context.
pub type FieldRef = Arc<GaloisField>;

const NO_LOG: u32 = u32::MAX;

/// An element of some [`GaloisField`], identified by its canonical index.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    /// Wraps a raw index without range checking; prefer [`GaloisField::elem`].
    pub const fn from_index(index: u32) -> Elem {
        Elem(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serializable description of a field: characteristic, degree and modulus
/// coefficients (constant term first, leading 1 included).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
}

impl FieldDescriptor {
    pub fn build(&self) -> Result<FieldRef> {
        GaloisField::new(self.p, self.m, Some(&self.modulus))
    }
}

/// The finite field GF(p^m) with a fixed modulus and primitive element.
pub struct GaloisField {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for GaloisField {}

impl GaloisField {
    /// Builds GF(p^m). Without an explicit modulus the smallest monic
    /// irreducible of degree `m` is used, where polynomials are ordered by
    /// their coefficient vectors read as base-p integers (constant term least
    /// significant); for GF(8) this gives x^3 + x + 1.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<FieldRef> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = checked_pow(p as u64, m)
            .filter(|&q| q <= MAX_FIELD_SIZE)
            .ok_or(Error::FieldTooLarge { p: p as u64, m })?;
        let modulus = match modulus {
            Some(coeffs) => {
                if coeffs.len() != m as usize + 1
                    || coeffs[m as usize] != 1
                    || coeffs.iter().any(|&c| c >= p)
                {
                    return Err(Error::MalformedModulus { degree: m, p });
                }
                if !fp::is_irreducible(coeffs, p) {
                    return Err(Error::ReducibleModulus {
                        coeffs: coeffs.to_vec(),
                        p,
                    });
                }
                coeffs.to_vec()
            }
            None => default_modulus(p, m),
        };
        Ok(Arc::new(Self::with_tables(p, m, q as u32, modulus)))
    }

    /// Shorthand for `GaloisField::new(p, 1, None)`.
    pub fn prime(p: u32) -> Result<FieldRef> {
        Self::new(p, 1, None)
    }

    /// Builds the field of order `q` with the default modulus.
    pub fn of_order(q: u64) -> Result<FieldRef> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrime(q))?;
        Self::new(p as u32, m, None)
    }

    fn with_tables(p: u32, m: u32, q: u32, modulus: Vec<u32>) -> GaloisField {
        let slow = SlowArith {
            p,
            m,
            modulus: &modulus,
        };
        let order = q - 1;
        let factors = prime_factors(order as u64);
        let generator = (1..q)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&l| slow.pow(g, (order as u64) / l) != 1)
            })
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![NO_LOG; q as usize];
        let mut cur = 1u32;
        for i in 0..order {
            exp[i as usize] = cur;
            log[cur as usize] = i;
            cur = slow.mul(cur, generator);
        }
        for i in 0..order as usize {
            exp[i + order as usize] = exp[i];
        }

        // zech[i] = log(1 + g^i), NO_LOG when the sum vanishes
        let zech = if p == 2 {
            Vec::new()
        } else {
            (0..order as usize)
                .map(|i| log[slow.add(1, exp[i]) as usize])
                .collect()
        };

        GaloisField {
            p,
            m,
            q,
            modulus,
            generator: Elem(generator),
            exp,
            log,
            zech,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element: the smallest element of multiplicative order q-1.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
        }
    }

    pub fn is_even(&self) -> bool {
        self.p == 2
    }

    /// Range-checked conversion from an index.
    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index < self.q as u64 {
            Ok(Elem(index as u32))
        } else {
            Err(Error::ElementOutOfRange { index, q: self.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    /// Power-basis coefficients, constant term first.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.m as usize);
        let mut x = a.0;
        for _ in 0..self.m {
            out.push(x % self.p);
            x /= self.p;
        }
        out
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Shape(format!(
                "expected at most {} coefficients below {}",
                self.m, self.p
            )));
        }
        Ok(Elem(
            coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c),
        ))
    }

    /// `g^e` for the primitive element `g`.
    pub fn exp(&self, e: i64) -> Elem {
        let order = (self.q - 1) as i64;
        Elem(self.exp[e.rem_euclid(order) as usize])
    }

    /// Discrete logarithm to the base of the primitive element.
    pub fn log(&self, a: Elem) -> Option<u32> {
        match self.log[a.0 as usize] {
            NO_LOG => None,
            l => Some(l),
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let order = self.q - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + order - la };
        match self.zech[d as usize] {
            NO_LOG => Elem::ZERO,
            z => Elem(self.exp[(la + z) as usize]),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        let half = (self.q - 1) / 2;
        Elem(self.exp[(self.log[a.0 as usize] + half) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        Elem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.q - 1;
        Ok(Elem(self.exp[((order - self.log[a.0 as usize]) % order) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; negative exponents are powers of the inverse.
    pub fn pow(&self, a: Elem, e: i64) -> Result<Elem> {
        if a.0 == 0 {
            return match e {
                0 => Ok(Elem::ONE),
                e if e > 0 => Ok(Elem::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let order = (self.q - 1) as i128;
        let l = (self.log[a.0 as usize] as i128 * e as i128).rem_euclid(order);
        Ok(Elem(self.exp[l as usize]))
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> Option<u32> {
        let l = self.log(a)?;
        Some((self.q - 1) / gcd(l as u64, (self.q - 1) as u64) as u32)
    }

    /// Euler's criterion; every element is a square in characteristic 2.
    pub fn is_square(&self, a: Elem) -> bool {
        if self.p == 2 || a.0 == 0 {
            return true;
        }
        self.pow(a, ((self.q - 1) / 2) as i64).unwrap() == Elem::ONE
    }

    /// The canonical square root: the smaller of the two roots in index
    /// order. In characteristic 2 the root `a^(q/2)` is unique.
    pub fn sqrt(&self, a: Elem) -> Result<Elem> {
        if self.p == 2 {
            return self.pow(a, (self.q / 2) as i64);
        }
        if a.0 == 0 {
            return Ok(Elem::ZERO);
        }
        let l = self.log[a.0 as usize];
        if l % 2 != 0 {
            return Err(Error::NotSquare(a.0));
        }
        let r = Elem(self.exp[(l / 2) as usize]);
        Ok(r.min(self.neg(r)))
    }

    /// The smallest non-square, or `None` in characteristic 2.
    pub fn smallest_non_square(&self) -> Option<Elem> {
        self.elements().find(|&a| !self.is_square(a))
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q).map(Elem)
    }

    /// The subfield GF(p^r), i.e. the fixed points of `x -> x^(p^r)`.
    pub fn subfield_elements(&self, r: u32) -> Result<Vec<Elem>> {
        if r == 0 || self.m % r != 0 {
            return Err(Error::NotADivisor { r, m: self.m });
        }
        let size = (self.p as i64).pow(r);
        Ok(self
            .elements()
            .filter(|&a| self.pow(a, size).unwrap() == a)
            .collect())
    }

    /// `sum_i c_i v_i` for vectors of equal length.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter()
            .zip(b)
            .fold(Elem::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

/// Polynomial arithmetic on base-p digit encodings, used only while the
/// tables are being built.
struct SlowArith<'a> {
    p: u32,
    m: u32,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn digits(&self, mut x: u32) -> Vec<u32> {
        (0..self.m)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.undigits(&sum)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let m = self.m as usize;
        let p = self.p as u64;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * m];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for deg in (m..2 * m).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &mc) in self.modulus[..m].iter().enumerate() {
                let sub = c * mc as u64 % p;
                let slot = &mut prod[deg - m + i];
                *slot = (*slot + p - sub) % p;
            }
        }
        let low: Vec<u32> = prod[..m].iter().map(|&c| c as u32).collect();
        self.undigits(&low)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Dense polynomials over GF(p) as coefficient vectors (constant first).
mod fp {
    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        let mut r = 1u64;
        let mut b = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    }

    fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let b = trim(b.to_vec());
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p);
        while a.len() > db {
            let top = a.len() - 1;
            let c = a[top] * lead_inv % p;
            for (i, &bc) in b.iter().enumerate() {
                let slot = &mut a[top - db + i];
                *slot = (*slot + p - c * bc % p) % p;
            }
            a = trim(a);
        }
        a
    }

    fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, f, p)
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Ben-Or: f of degree m is irreducible iff gcd(f, x^(p^i) - x) = 1
    /// for every 1 <= i <= m/2.
    pub(super) fn is_irreducible(coeffs: &[u32], p: u32) -> bool {
        let p = p as u64;
        let f: Vec<u64> = coeffs.iter().map(|&c| c as u64).collect();
        let m = f.len() - 1;
        if m == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut power = x.clone();
        for _ in 1..=m / 2 {
            // power <- power^p mod f
            let mut acc = vec![1u64];
            let mut base = power.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_mod(&acc, &base, &f, p);
                }
                base = mul_mod(&base, &base, &f, p);
                e >>= 1;
            }
            power = acc;
            let mut diff = power.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(&f, &diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    (0..count)
        .map(|idx| {
            let mut coeffs: Vec<u32> = (0..m)
                .scan(idx, |rest, _| {
                    let d = (*rest % p as u64) as u32;
                    *rest /= p as u64;
                    Some(d)
                })
                .collect();
            coeffs.push(1);
            coeffs
        })
        .find(|c| fp::is_irreducible(c, p))
        .expect("irreducible polynomials exist in every degree")
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^m`, returning `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let factors = prime_factors(q);
    if factors.len() != 1 {
        return None;
    }
    let p = factors[0];
    let mut m = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    Some((p, m))
}

/// Distinct prime divisors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    (0..exp).try_fold(1u64, |acc, _| acc.checked_mul(base))
}
