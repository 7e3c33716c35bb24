//! Arithmetic in `Z_p` and `F_{p^m} = Z_p[x] / (f)`.
//!
//! Elements are coefficient vectors of length `m`, constant term first.
//! Every element also has an integer *index* `sum c_j p^j`, which is its
//! position in [`FieldParams::enumerate_elements`] and the symbol value it
//! takes inside a [`Word`](crate::polyring::Word). Index 0 is always zero and
//! index 1 is always one.

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 8;

/// Built-in moduli, constant term first.
const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),    // x^2 + x + 1
    (2, 3, &[1, 1, 0, 1]), // x^3 + x + 1
    (3, 2, &[1, 0, 1]),    // x^2 + 1
];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldParams {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
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

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Builds and validates a field.
///
/// With `modulus == None` and `m > 1` the modulus comes from the built-in
/// table, which covers `(2,2)`, `(2,3)` and `(3,2)`.
pub fn make_field(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<FieldParams> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if m == 0 || m > MAX_DEGREE {
        return Err(Error::InvalidField(format!(
            "extension degree m={m} must be in [1, {MAX_DEGREE}]"
        )));
    }
    let q = p
        .checked_pow(m)
        .ok_or_else(|| Error::InvalidField(format!("p^m = {p}^{m} does not fit in 32 bits")))?;

    let modulus = match modulus {
        Some(f) => f.to_vec(),
        None if m == 1 => vec![0, 1],
        None => DEFAULT_MODULI
            .iter()
            .find(|(dp, dm, _)| *dp == p && *dm == m)
            .map(|(_, _, f)| f.to_vec())
            .ok_or(Error::NoDefaultModulus(p, m))?,
    };

    if m == 1 {
        // Any monic linear polynomial works; the residue ring is Z_p either way.
        if modulus.len() != 2 || modulus[1] != 1 || modulus[0] >= p {
            return Err(Error::NotIrreducible(modulus));
        }
        return Ok(FieldParams { p, m, q, modulus: vec![0, 1] });
    }

    if modulus.len() != m as usize + 1
        || modulus[m as usize] != 1
        || modulus.iter().any(|&c| c >= p)
        || !zp_is_irreducible(&modulus, p)
    {
        return Err(Error::NotIrreducible(modulus));
    }
    Ok(FieldParams { p, m, q, modulus })
}

impl FieldParams {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Alphabet size `p^m`.
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.m as usize] }
    }

    pub fn one(&self) -> FieldElement {
        let mut coeffs = vec![0; self.m as usize];
        coeffs[0] = 1;
        FieldElement { coeffs }
    }

    /// Validates a coefficient vector as an element of this field.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElement { coeffs: coeffs.to_vec() })
    }

    /// Embeds an integer of `Z_p` (reduced mod `p`) as a constant.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = v.rem_euclid(self.p as i64) as u32;
        e
    }

    pub fn from_index(&self, index: u32) -> Result<FieldElement> {
        if index >= self.q {
            return Err(Error::InvalidSymbol { symbol: index, q: self.q });
        }
        let mut coeffs = Vec::with_capacity(self.m as usize);
        let mut v = index;
        for _ in 0..self.m {
            coeffs.push(v % self.p);
            v /= self.p;
        }
        Ok(FieldElement { coeffs })
    }

    pub fn index(&self, a: &FieldElement) -> u32 {
        a.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    /// All `q` elements in index order; the first is zero.
    pub fn enumerate_elements(&self) -> Vec<FieldElement> {
        (0..self.q)
            .map(|i| self.from_index(i).expect("index below q"))
            .collect()
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if a.coeffs.len() != self.m as usize || a.coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sub_unchecked(a, b))
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        Ok(self.sub_unchecked(&self.zero(), a))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // a^(q-2) = a^-1 in the multiplicative group of order q-1.
        Ok(self.pow_unchecked(a, self.q as u64 - 2))
    }

    pub fn pow(&self, a: &FieldElement, k: u64) -> Result<FieldElement> {
        self.check(a)?;
        Ok(self.pow_unchecked(a, k))
    }

    pub(crate) fn add_unchecked(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub(crate) fn sub_unchecked(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub(crate) fn mul_unchecked(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p as u64;
        let m = self.m as usize;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // Reduce by the monic modulus, highest degree first.
        for top in (m..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for (j, &f) in self.modulus[..m].iter().enumerate() {
                let idx = top - m + j;
                prod[idx] = (prod[idx] + (p - c) * f as u64) % p;
            }
        }
        FieldElement { coeffs: prod[..m].iter().map(|&c| c as u32).collect() }
    }

    pub(crate) fn pow_unchecked(&self, a: &FieldElement, mut k: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_unchecked(&acc, &base);
            }
            base = self.mul_unchecked(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Addition on element indices, digit-wise in base `p`.
    pub(crate) fn add_index(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub(crate) fn sub_index(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return (a + self.p - b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.m {
            out += ((a % self.p + self.p - b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }
}

/// Remainder of `a` modulo the monic polynomial `b` over `Z_p`.
fn zp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    while r.len() > db {
        let c = r.pop().unwrap();
        if c == 0 {
            continue;
        }
        let shift = r.len() - db;
        for (j, &f) in b[..db].iter().enumerate() {
            r[shift + j] = (r[shift + j] + (p - c) * f as u64) % p;
        }
    }
    r.into_iter().map(|c| c as u32).collect()
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn zp_is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for v in 0..count {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut rest = v;
            for _ in 0..d {
                divisor.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            divisor.push(1);
            if zp_rem(f, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}
