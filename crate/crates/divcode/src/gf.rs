//! Arithmetic in small finite fields.
//!
//! Elements of `F_q` are the indices `0..q`. An index is read as the
//! coefficient vector of a polynomial in the field generator, base `p`:
//! index `c_0 + c_1 p + c_2 p^2 + ...` stands for `c_0 + c_1 a + c_2 a^2 + ...`.
//! The modulus is the smallest monic irreducible polynomial of degree `e`
//! in lexicographic order, which for `F_4` is `x^2 + x + 1`, giving the map
//! `(0, 1, a, a^2) <-> (0, 1, 2, 3)`.
//!
//! All tables are built once per field and shared; see [`Field::get`].

use std::sync::OnceLock;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_Q: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("field order {0} is not a prime power in 2..={MAX_Q}")]
    UnsupportedOrder(usize),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("frobenius exponent {j} out of range for extension degree {e}")]
    FrobeniusExponent { j: u32, e: u32 },
    #[error("unknown field symbol {symbol:?} for q={q}")]
    UnknownSymbol { symbol: char, q: usize },
}

/// Precomputed tables for `F_q`.
#[derive(Debug, Clone)]
pub struct Field {
    q: usize,
    p: usize,
    e: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frob: Vec<u8>,
}

fn prime_power(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn digits(x: usize, p: usize, e: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(e as usize);
    let mut x = x;
    for _ in 0..e {
        out.push(x % p);
        x /= p;
    }
    out
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two polynomials over `F_p` reduced modulo the monic `modulus`
/// (given by its low coefficients; the leading one is implicit).
fn poly_mulmod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let e = modulus.len();
    let mut prod = vec![0usize; 2 * e];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (e..2 * e).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (i, &m) in modulus.iter().enumerate() {
            let idx = deg - e + i;
            prod[idx] = (prod[idx] + p * p - c * m % p) % p;
        }
    }
    prod.truncate(e);
    prod
}

/// First monic polynomial of degree `e` (lexicographic in the low
/// coefficients read as base-`p` numbers) with no root-free factorisation,
/// found by checking that `x` generates a field: the multiplicative closure
/// of the nonzero residues has no zero divisors.
fn irreducible(p: usize, e: u32) -> Vec<usize> {
    let e_us = e as usize;
    if e == 1 {
        return vec![0];
    }
    let q = p.pow(e);
    'cand: for code in 0..q {
        let m = digits(code, p, e);
        // irreducible iff no two nonzero residues multiply to zero
        for a in 1..q {
            let da = digits(a, p, e);
            for b in 1..q {
                let r = poly_mulmod(&da, &digits(b, p, e), &m, p);
                if r.iter().all(|&c| c == 0) {
                    continue 'cand;
                }
            }
        }
        debug_assert_eq!(m.len(), e_us);
        return m;
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

impl Field {
    /// Builds the tables for `F_q`. Prefer [`Field::get`], which caches.
    pub fn new(q: usize) -> Result<Field, GfError> {
        if q > MAX_Q {
            return Err(GfError::UnsupportedOrder(q));
        }
        let (p, e) = prime_power(q).ok_or(GfError::UnsupportedOrder(q))?;
        let modulus = irreducible(p, e);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a, p, e);
            for b in 0..q {
                let db = digits(b, p, e);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s, p) as u8;
                mul[a * q + b] = undigits(&poly_mulmod(&da, &db, &modulus, p), p) as u8;
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a * q + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        let mut frob = vec![0u8; q];
        for (a, f) in frob.iter_mut().enumerate() {
            let mut x = 1u8;
            for _ in 0..p {
                x = mul[x as usize * q + a];
            }
            *f = x;
        }
        Ok(Field { q, p, e, add, mul, neg, inv, frob })
    }

    /// Shared, lazily built field of order `q`.
    pub fn get(q: usize) -> Result<&'static Field, GfError> {
        static FIELDS: [OnceLock<Option<Field>>; MAX_Q + 1] = [const { OnceLock::new() }; MAX_Q + 1];
        if q > MAX_Q {
            return Err(GfError::UnsupportedOrder(q));
        }
        FIELDS[q]
            .get_or_init(|| Field::new(q).ok())
            .as_ref()
            .ok_or(GfError::UnsupportedOrder(q))
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// The characteristic.
    pub fn p(&self) -> usize {
        self.p
    }

    /// The extension degree, `q = p^e`.
    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn inv(&self, a: u8) -> Result<u8, GfError> {
        if a == 0 {
            Err(GfError::ZeroInverse)
        } else {
            Ok(self.inv[a as usize])
        }
    }

    /// Inverse without the zero check; callers guarantee `a != 0`.
    #[inline]
    pub(crate) fn inv_nz(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }

    pub fn div(&self, a: u8, b: u8) -> Result<u8, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u8, mut k: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `a^(p^j)`, the `j`-th power of the Frobenius automorphism.
    pub fn frobenius(&self, a: u8, j: u32) -> Result<u8, GfError> {
        if j >= self.e {
            return Err(GfError::FrobeniusExponent { j, e: self.e });
        }
        Ok(self.frob_pow(a, j))
    }

    #[inline]
    pub(crate) fn frob_pow(&self, a: u8, j: u32) -> u8 {
        let mut x = a;
        for _ in 0..j {
            x = self.frob[x as usize];
        }
        x
    }

    /// Text symbol of an element: digits for prime fields, and for `F_4` the
    /// letters `a` and `b = a^2 = a + 1`. Larger extension fields use
    /// hexadecimal digits of the index.
    pub fn symbol(&self, a: u8) -> char {
        if self.q == 4 && a >= 2 {
            return if a == 2 { 'a' } else { 'b' };
        }
        std::char::from_digit(a as u32, 16).expect("index below 16")
    }

    pub fn parse_symbol(&self, c: char) -> Result<u8, GfError> {
        let v = match (self.q, c) {
            (4, 'a') => Some(2),
            (4, 'b') => Some(3),
            (4, _) => c.to_digit(2),
            _ => c.to_digit(16),
        };
        match v {
            Some(v) if (v as usize) < self.q => Ok(v as u8),
            _ => Err(GfError::UnknownSymbol { symbol: c, q: self.q }),
        }
    }

    /// Nonzero elements in index order.
    pub fn units(&self) -> impl Iterator<Item = u8> {
        1..self.q as u8
    }
}
