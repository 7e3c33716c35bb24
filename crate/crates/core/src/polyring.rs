//! Polynomials over a finite field, the ring `F[x] / (x^n - 1)`, and words.
//!
//! Coefficients and word symbols are always stored constant term first, so a
//! polynomial `h_0 + h_1 x + ... ` corresponds to the word `(h_0, h_1, ...)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldParams};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldParams,
    coeffs: Vec<FieldElement>,
}

impl Poly {
    /// Builds a polynomial, trimming trailing zeros.
    pub fn new(field: &FieldParams, coeffs: Vec<FieldElement>) -> Result<Poly> {
        for c in &coeffs {
            field.element(c.coeffs())?;
        }
        let mut poly = Poly { field: field.clone(), coeffs };
        poly.trim();
        Ok(poly)
    }

    /// Polynomial with coefficients taken from `Z_p` integers (reduced mod p).
    pub fn from_ints(field: &FieldParams, coeffs: &[i64]) -> Poly {
        let coeffs = coeffs.iter().map(|&c| field.from_int(c)).collect();
        let mut poly = Poly { field: field.clone(), coeffs };
        poly.trim();
        poly
    }

    pub fn zero(field: &FieldParams) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldParams) -> Poly {
        Poly { field: field.clone(), coeffs: vec![field.one()] }
    }

    /// `c * x^k`
    pub fn monomial(field: &FieldParams, c: FieldElement, k: usize) -> Poly {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        let mut poly = Poly { field: field.clone(), coeffs };
        poly.trim();
        poly
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(FieldElement::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^j`, zero beyond the degree.
    pub fn coeff(&self, j: usize) -> FieldElement {
        self.coeffs.get(j).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of nonzero coefficients.
    pub fn hamming_weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn same_field(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Poly> {
        self.field.element(c.coeffs())?;
        let coeffs = self.coeffs.iter().map(|a| self.field.mul_unchecked(a, c)).collect();
        let mut poly = Poly { field: self.field.clone(), coeffs };
        poly.trim();
        Ok(poly)
    }
}

pub fn poly_add(a: &Poly, b: &Poly) -> Result<Poly> {
    a.same_field(b)?;
    let f = &a.field;
    let len = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..len).map(|j| f.add_unchecked(&a.coeff(j), &b.coeff(j))).collect();
    let mut poly = Poly { field: f.clone(), coeffs };
    poly.trim();
    Ok(poly)
}

pub fn poly_sub(a: &Poly, b: &Poly) -> Result<Poly> {
    a.same_field(b)?;
    let f = &a.field;
    let len = a.coeffs.len().max(b.coeffs.len());
    let coeffs = (0..len).map(|j| f.sub_unchecked(&a.coeff(j), &b.coeff(j))).collect();
    let mut poly = Poly { field: f.clone(), coeffs };
    poly.trim();
    Ok(poly)
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Result<Poly> {
    a.same_field(b)?;
    let f = &a.field;
    if a.is_zero() || b.is_zero() {
        return Ok(Poly::zero(f));
    }
    let mut coeffs = vec![f.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            let t = f.mul_unchecked(x, y);
            coeffs[i + j] = f.add_unchecked(&coeffs[i + j], &t);
        }
    }
    let mut poly = Poly { field: f.clone(), coeffs };
    poly.trim();
    Ok(poly)
}

/// Remainder of `a` divided by `b`.
pub fn poly_mod(a: &Poly, b: &Poly) -> Result<Poly> {
    a.same_field(b)?;
    let f = &a.field;
    let db = b.degree().ok_or(Error::DivisionByZero)?;
    let lead_inv = f.inv(&b.coeffs[db])?;
    let mut r = a.coeffs.clone();
    while r.len() > db {
        let top = r.pop().unwrap();
        if top.is_zero() {
            continue;
        }
        let factor = f.mul_unchecked(&top, &lead_inv);
        let shift = r.len() - db;
        for (j, bc) in b.coeffs[..db].iter().enumerate() {
            let t = f.mul_unchecked(&factor, bc);
            r[shift + j] = f.sub_unchecked(&r[shift + j], &t);
        }
    }
    let mut poly = Poly { field: f.clone(), coeffs: r };
    poly.trim();
    Ok(poly)
}

/// `(x - 1)^i`, by repeated multiplication.
pub fn xminus1_pow(field: &FieldParams, i: usize) -> Poly {
    let linear = Poly::from_ints(field, &[-1, 1]);
    let mut acc = Poly::one(field);
    for _ in 0..i {
        acc = poly_mul(&acc, &linear).expect("same field");
    }
    acc
}

/// A length-`n` word over an alphabet of size `q`.
///
/// Over a field the symbols are element indices (see [`crate::gf`]); over a
/// generic alphabet they are arbitrary labels and only equality matters,
/// with symbol 0 playing the role of zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    q: u32,
    symbols: Vec<u32>,
}

impl Word {
    pub fn new(q: u32, symbols: Vec<u32>) -> Result<Word> {
        if let Some(&bad) = symbols.iter().find(|&&s| s >= q) {
            return Err(Error::InvalidSymbol { symbol: bad, q });
        }
        Ok(Word { q, symbols })
    }

    pub fn zero(q: u32, n: usize) -> Word {
        Word { q, symbols: vec![0; n] }
    }

    /// Word over the smallest alphabet `{0, .., max}` containing the symbols.
    pub fn from_symbols(symbols: Vec<u32>) -> Word {
        let q = symbols.iter().copied().max().map_or(1, |m| m + 1);
        Word { q, symbols }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Same symbols, larger alphabet.
    pub fn widen(mut self, q: u32) -> Word {
        self.q = self.q.max(q);
        self
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn hamming_weight(&self) -> usize {
        self.symbols.iter().filter(|&&s| s != 0).count()
    }

    pub fn is_zero(&self) -> bool {
        self.symbols.iter().all(|&s| s == 0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.symbols.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Coefficient word of `a mod (x^n - 1)`.
pub fn to_word(a: &Poly, n: usize) -> Word {
    let f = &a.field;
    let mut folded = vec![f.zero(); n];
    for (j, c) in a.coeffs.iter().enumerate() {
        folded[j % n] = f.add_unchecked(&folded[j % n], c);
    }
    let symbols = folded.iter().map(|c| f.index(c)).collect();
    Word { q: f.q(), symbols }
}

pub fn from_word(field: &FieldParams, w: &Word) -> Result<Poly> {
    let coeffs = w
        .symbols
        .iter()
        .map(|&s| field.from_index(s))
        .collect::<Result<Vec<_>>>()?;
    let mut poly = Poly { field: field.clone(), coeffs };
    poly.trim();
    Ok(poly)
}

/// Moves the symbol at position `j` to `(j + s) mod n`.
pub fn cyclic_shift(w: &Word, s: i64) -> Word {
    let n = w.len();
    if n == 0 {
        return w.clone();
    }
    let s = s.rem_euclid(n as i64) as usize;
    let mut symbols = vec![0; n];
    for (j, &v) in w.symbols.iter().enumerate() {
        symbols[(j + s) % n] = v;
    }
    Word { q: w.q, symbols }
}

/// Componentwise `x - y` over a field.
pub fn word_sub(field: &FieldParams, x: &Word, y: &Word) -> Result<Word> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let q = field.q();
    let x = Word::new(q, x.symbols.clone())?;
    Word::new(q, y.symbols.clone())?;
    let symbols = x
        .symbols
        .iter()
        .zip(&y.symbols)
        .map(|(&a, &b)| field.sub_index(a, b))
        .collect();
    Ok(Word { q, symbols })
}

/// Componentwise `alpha * x` over a field.
pub fn word_scale(field: &FieldParams, alpha: &FieldElement, x: &Word) -> Result<Word> {
    field.element(alpha.coeffs())?;
    let symbols = x
        .symbols
        .iter()
        .map(|&s| {
            let e = field.from_index(s)?;
            Ok(field.index(&field.mul_unchecked(alpha, &e)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Word { q: field.q(), symbols })
}

/// Parses one symbol: a bare integer, or colon-joined coefficients
/// (constant term first) when a field is given.
pub fn parse_symbol(token: &str, field: Option<&FieldParams>) -> Result<u32> {
    let token = token.trim();
    if token.contains(':') {
        let field = field.ok_or_else(|| {
            Error::Parse(format!("symbol {token:?} has coefficients but no field was given"))
        })?;
        let coeffs = token
            .split(':')
            .map(|c| c.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad coefficient in {token:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let elem = field
            .element(&coeffs)
            .map_err(|_| Error::Parse(format!("{token:?} is not an element of F_{}", field.q())))?;
        return Ok(field.index(&elem));
    }
    let v: u32 = token
        .parse()
        .map_err(|_| Error::Parse(format!("bad symbol {token:?}")))?;
    if let Some(f) = field {
        if v >= f.q() {
            return Err(Error::InvalidSymbol { symbol: v, q: f.q() });
        }
    }
    Ok(v)
}

/// Parses a comma-separated word.
pub fn parse_word(text: &str, field: Option<&FieldParams>) -> Result<Word> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty word".into()));
    }
    let symbols = text
        .split(',')
        .map(|t| parse_symbol(t, field))
        .collect::<Result<Vec<_>>>()?;
    match field {
        Some(f) => Word::new(f.q(), symbols),
        None => Ok(Word::from_symbols(symbols)),
    }
}

/// Inverse of [`parse_symbol`]: plain integers for prime fields and generic
/// alphabets, colon-joined coefficients for `m > 1`.
pub fn format_symbol(s: u32, field: Option<&FieldParams>) -> String {
    match field {
        Some(f) if f.m() > 1 => match f.from_index(s) {
            Ok(e) => e.coeffs().iter().map(u32::to_string).collect::<Vec<_>>().join(":"),
            Err(_) => s.to_string(),
        },
        _ => s.to_string(),
    }
}
