//! Repeated-root cyclic codes `C_i = <(x - 1)^i>` of length `n = p^e` over
//! `F_{p^m}`.
//!
//! `C_i` has dimension `n - i` and is spanned by the shifts `x^j (x-1)^i`,
//! `j < n - i`. Because `x^n - 1 = (x - 1)^n` in characteristic `p`, the codes
//! form a chain `C_0 ⊇ C_1 ⊇ .. ⊇ C_n = {0}`.
//!
//! Exact b-distances are known only on parts of the `(i, b)` plane; outside
//! those ranges [`closed_form_db`] falls back to a sandwich, and the brute
//! force engine settles the value for small codes.

use rayon::prelude::*;
use serde::Serialize;

use crate::bsymbol::weight_windows;
use crate::error::{Error, Result};
use crate::gf::FieldParams;
use crate::polyring::{poly_mul, to_word, xminus1_pow, Poly, Word};

/// Default limit on the number of codewords the brute force will visit.
pub const DEFAULT_CAP: u128 = 1 << 22;

/// Lengths above this are rejected; everything here is schoolbook.
pub const MAX_LENGTH: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCodeSpec {
    field: FieldParams,
    e: u32,
    i: usize,
    n: usize,
}

impl CyclicCodeSpec {
    pub fn new(field: &FieldParams, e: u32, i: usize) -> Result<CyclicCodeSpec> {
        if e == 0 {
            return Err(Error::InvalidField("code exponent e must be at least 1".into()));
        }
        let n = (field.p() as usize)
            .checked_pow(e)
            .filter(|&n| n <= MAX_LENGTH)
            .ok_or_else(|| Error::InvalidField(format!("length {}^{e} is too large", field.p())))?;
        if i > n {
            return Err(Error::IndexOutOfRange { i, n });
        }
        Ok(CyclicCodeSpec { field: field.clone(), e, i, n })
    }

    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn m(&self) -> u32 {
        self.field.m()
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.n - self.i
    }

    pub fn generator(&self) -> Poly {
        xminus1_pow(&self.field, self.i)
    }

    /// `q^dim`, saturating.
    pub fn size(&self) -> u128 {
        let q = self.field.q() as u128;
        let mut size: u128 = 1;
        for _ in 0..self.dim() {
            size = size.saturating_mul(q);
        }
        size
    }
}

fn pow(p: usize, k: u32) -> usize {
    p.pow(k)
}

/// Minimum Hamming distance of `C_i`, piecewise in `i`.
pub fn hamming_distance_formula(spec: &CyclicCodeSpec) -> usize {
    let (p, e, i, n) = (spec.p() as usize, spec.e(), spec.i(), spec.n());
    if i == 0 {
        return 1;
    }
    if i == n {
        return 0;
    }
    let block = pow(p, e - 1);
    for beta in 0..=p - 2 {
        if beta * block + 1 <= i && i <= (beta + 1) * block {
            return beta + 2;
        }
    }
    for k in 1..e {
        let base = n - pow(p, e - k);
        let step = pow(p, e - k - 1);
        for t in 1..p {
            if base + (t - 1) * step + 1 <= i && i <= base + t * step {
                return (t + 1) * pow(p, k);
            }
        }
    }
    unreachable!("the branches cover 0..=p^e")
}

/// Scaled generator shifts: `table[j][a]` is the word of `a * x^j * g(x)`.
struct Basis {
    field: FieldParams,
    q: u32,
    n: usize,
    table: Vec<Vec<Vec<u32>>>,
}

impl Basis {
    fn new(spec: &CyclicCodeSpec) -> Basis {
        let field = spec.field().clone();
        let g = spec.generator();
        let elements = field.enumerate_elements();
        let table = (0..spec.dim())
            .map(|j| {
                let shifted = poly_mul(&Poly::monomial(&field, field.one(), j), &g).expect("same field");
                elements
                    .iter()
                    .map(|a| to_word(&shifted.scale(a).expect("field element"), spec.n()).symbols().to_vec())
                    .collect()
            })
            .collect();
        Basis { q: field.q(), field, n: spec.n(), table }
    }

    /// Message digits of `index`, least significant first.
    fn digits(&self, mut index: u128) -> Vec<u32> {
        (0..self.table.len())
            .map(|_| {
                let d = (index % self.q as u128) as u32;
                index /= self.q as u128;
                d
            })
            .collect()
    }

    fn codeword(&self, digits: &[u32]) -> Vec<u32> {
        let mut c = vec![0; self.n];
        for (row, &d) in self.table.iter().zip(digits) {
            if d != 0 {
                for (s, &v) in c.iter_mut().zip(&row[d as usize]) {
                    *s = self.field.add_index(*s, v);
                }
            }
        }
        c
    }

    /// Moves `digits`/`c` to the next message. Returns false after the last.
    fn advance(&self, digits: &mut [u32], c: &mut [u32]) -> bool {
        for (j, d) in digits.iter_mut().enumerate() {
            let row = &self.table[j];
            let old = *d as usize;
            let next = (old + 1) % self.q as usize;
            for (k, s) in c.iter_mut().enumerate() {
                let t = self.field.sub_index(*s, row[old][k]);
                *s = self.field.add_index(t, row[next][k]);
            }
            *d = next as u32;
            if next != 0 {
                return true;
            }
        }
        false
    }
}

/// Codewords of a code in message order (message digit 0 varies fastest).
pub struct Codewords {
    basis: Basis,
    digits: Vec<u32>,
    current: Vec<u32>,
    remaining: u128,
}

impl Iterator for Codewords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = Word::new(self.basis.q, self.current.clone()).expect("field symbols");
        if self.remaining > 0 {
            self.basis.advance(&mut self.digits, &mut self.current);
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, usize::try_from(self.remaining).ok())
    }
}

fn check_cap(spec: &CyclicCodeSpec, cap: u128) -> Result<u128> {
    let size = spec.size();
    if size > cap {
        return Err(Error::EnumerationTooLarge { size, cap });
    }
    Ok(size)
}

pub fn enumerate_codewords(spec: &CyclicCodeSpec, cap: u128) -> Result<Codewords> {
    let size = check_cap(spec, cap)?;
    let basis = Basis::new(spec);
    let digits = vec![0; spec.dim()];
    let current = vec![0; spec.n()];
    Ok(Codewords { basis, digits, current, remaining: size })
}

/// Minimum nonzero weights of a code found by enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinWeights {
    pub hamming: usize,
    /// `(b, min b-weight)`, in the order requested.
    pub by_width: Vec<(usize, usize)>,
}

impl MinWeights {
    pub fn get(&self, b: usize) -> Option<usize> {
        self.by_width.iter().find(|(w, _)| *w == b).map(|&(_, v)| v)
    }
}

const CHUNK: u128 = 1 << 12;

/// Minimum Hamming weight and minimum b-weights over all nonzero codewords,
/// in one pass. The zero code reports 0 throughout.
pub fn min_weights_bruteforce(spec: &CyclicCodeSpec, widths: &[usize], cap: u128) -> Result<MinWeights> {
    let n = spec.n();
    if let Some(&b) = widths.iter().find(|&&b| b == 0 || b > n) {
        return Err(Error::WidthOutOfRange { b, n });
    }
    if spec.i() == n {
        return Ok(MinWeights { hamming: 0, by_width: widths.iter().map(|&b| (b, 0)).collect() });
    }
    let size = check_cap(spec, cap)?;
    let basis = Basis::new(spec);
    let chunks = size.div_ceil(CHUNK);

    let fold = |mut acc: Vec<usize>, chunk: u128| {
        let lo = (chunk * CHUNK).max(1);
        let hi = ((chunk + 1) * CHUNK).min(size);
        if lo >= hi {
            return acc;
        }
        let mut digits = basis.digits(lo);
        let mut c = basis.codeword(&digits);
        let mut index = lo;
        loop {
            acc[0] = acc[0].min(c.iter().filter(|&&s| s != 0).count());
            for (slot, &b) in acc[1..].iter_mut().zip(widths) {
                *slot = (*slot).min(weight_windows(&c, b));
            }
            index += 1;
            if index >= hi {
                break;
            }
            basis.advance(&mut digits, &mut c);
        }
        acc
    };
    let start = vec![usize::MAX; widths.len() + 1];
    let best = (0..chunks)
        .into_par_iter()
        .fold(|| start.clone(), fold)
        .reduce(
            || start.clone(),
            |a, b| a.iter().zip(&b).map(|(x, y)| *x.min(y)).collect(),
        );

    Ok(MinWeights {
        hamming: best[0],
        by_width: widths.iter().copied().zip(best[1..].iter().copied()).collect(),
    })
}

/// Minimum b-distance by enumeration, using `d_b(x, y) = w_b(x - y)`.
pub fn min_b_weight_bruteforce(spec: &CyclicCodeSpec, b: usize, cap: u128) -> Result<usize> {
    let w = min_weights_bruteforce(spec, &[b], cap)?;
    Ok(w.by_width[0].1)
}

pub fn min_hamming_bruteforce(spec: &CyclicCodeSpec, cap: u128) -> Result<usize> {
    Ok(min_weights_bruteforce(spec, &[], cap)?.hamming)
}

/// Exact b-distance results. Serialized names are the external identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Rule {
    /// `i = p^e`, distance defined as 0.
    ZeroCode,
    /// `i = 0`: the full space has `d_b = b`.
    #[serde(rename = "Prop6")]
    FullSpace,
    /// `e = 1`, `b <= p`, `i <= p - b`: `d_b = i + b`.
    #[serde(rename = "Prop8_e1")]
    PrimeLength,
    /// `e >= 2`, `1 <= i <= p^(e-1)`, `i + b <= p^e`, `i <= b`: `d_b = i + b`.
    #[serde(rename = "Thm9")]
    LowIndex,
    /// `i = p^e - p^(e-k) + i'` with `i' <= p^(e-k-1)`, `b + i' <= p^(e-k)`,
    /// `i' <= b`: `d_b = p^k (b + i')`.
    #[serde(rename = "Thm11")]
    UpperBlock,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::ZeroCode => "ZeroCode",
            Rule::FullSpace => "Prop6",
            Rule::PrimeLength => "Prop8_e1",
            Rule::LowIndex => "Thm9",
            Rule::UpperBlock => "Thm11",
        }
    }

    pub const ALL: [Rule; 5] = [
        Rule::ZeroCode,
        Rule::FullSpace,
        Rule::PrimeLength,
        Rule::LowIndex,
        Rule::UpperBlock,
    ];
}

/// Where a sandwich on `d_b` came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IntervalSource {
    /// `b + 1 <= d_b <= 2b` for `1 <= i <= p^(e-1)`, `b < p^e`.
    LowIndex,
    /// `d_H + b - 1 <= d_b <= b d_H`.
    Hamming,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RuleMatch {
    pub rule: Rule,
    pub value: usize,
    /// Block exponent and residual index, for [`Rule::UpperBlock`].
    pub k: Option<u32>,
    pub residual: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamsEcho {
    pub p: u32,
    pub e: u32,
    pub m: u32,
    pub i: usize,
    pub b: usize,
    pub k: Option<u32>,
    pub residual: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormResult {
    pub value: Option<usize>,
    pub rule: Option<Rule>,
    pub interval: Option<(usize, usize)>,
    pub interval_source: Option<IntervalSource>,
    pub params_echo: ParamsEcho,
    /// Every exact rule whose hypotheses hold, in precedence order.
    pub matches: Vec<RuleMatch>,
}

impl ClosedFormResult {
    pub fn rules_agree(&self) -> bool {
        self.matches.windows(2).all(|w| w[0].value == w[1].value)
    }

    fn empty(spec: &CyclicCodeSpec, b: usize) -> ClosedFormResult {
        ClosedFormResult {
            value: None,
            rule: None,
            interval: None,
            interval_source: None,
            params_echo: ParamsEcho {
                p: spec.p(),
                e: spec.e(),
                m: spec.m(),
                i: spec.i(),
                b,
                k: None,
                residual: None,
            },
            matches: Vec::new(),
        }
    }
}

/// All exact rules that apply to `(spec, b)`.
pub fn exact_rules(spec: &CyclicCodeSpec, b: usize) -> Vec<RuleMatch> {
    let (p, e, i, n) = (spec.p() as usize, spec.e(), spec.i(), spec.n());
    let plain = |rule, value| RuleMatch { rule, value, k: None, residual: None };
    let mut out = Vec::new();
    if i == n {
        out.push(plain(Rule::ZeroCode, 0));
    }
    if i == 0 && b <= n {
        out.push(plain(Rule::FullSpace, b));
    }
    if e == 1 && b <= p && i + b <= p {
        out.push(plain(Rule::PrimeLength, i + b));
    }
    if e >= 2 && 1 <= i && i <= pow(p, e - 1) && i + b <= n && i <= b {
        out.push(plain(Rule::LowIndex, i + b));
    }
    if e >= 2 {
        for k in 1..e {
            let period = pow(p, e - k);
            let Some(residual) = i.checked_sub(n - period) else {
                continue;
            };
            if residual <= pow(p, e - k - 1) && b + residual <= period && residual <= b {
                out.push(RuleMatch {
                    rule: Rule::UpperBlock,
                    value: pow(p, k) * (b + residual),
                    k: Some(k),
                    residual: Some(residual),
                });
            }
        }
    }
    out
}

/// `(d_H + b - 1, b d_H)` when `0 < d_H <= n - (b - 1)`.
pub fn hamming_sandwich(d_h: usize, n: usize, b: usize) -> Option<(usize, usize)> {
    (d_h > 0 && d_h + b - 1 <= n).then(|| (d_h + b - 1, b * d_h))
}

/// `(b + 1, 2b)` for `1 <= i <= p^(e-1)` and `b < p^e`.
pub fn low_index_sandwich(spec: &CyclicCodeSpec, b: usize) -> Option<(usize, usize)> {
    let low = pow(spec.p() as usize, spec.e() - 1);
    (b < spec.n() && 1 <= spec.i() && spec.i() <= low).then(|| (b + 1, 2 * b))
}

pub fn closed_form_db(spec: &CyclicCodeSpec, b: usize) -> Result<ClosedFormResult> {
    let n = spec.n();
    if b < 2 || b > n {
        return Err(Error::WidthOutOfRange { b, n });
    }
    let mut result = ClosedFormResult::empty(spec, b);
    result.matches = exact_rules(spec, b);
    if let Some(first) = result.matches.first() {
        result.value = Some(first.value);
        result.rule = Some(first.rule);
        result.params_echo.k = first.k;
        result.params_echo.residual = first.residual;
        return Ok(result);
    }
    if let Some(iv) = low_index_sandwich(spec, b) {
        result.interval = Some(iv);
        result.interval_source = Some(IntervalSource::LowIndex);
    } else if let Some(iv) = hamming_sandwich(hamming_distance_formula(spec), n, b) {
        result.interval = Some(iv);
        result.interval_source = Some(IntervalSource::Hamming);
    }
    Ok(result)
}

/// Which branch of the block decomposition produced a weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BlockCase {
    /// `w_b(c) = p^k w_b(g)`
    Periodic,
    /// `w_b(c) = p^k (w_b(g) - (b - 1) + zeta)`
    Wrapped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockWeight {
    pub weight: usize,
    pub case: BlockCase,
    /// Power of `x` divided out of `g` before the case split.
    pub shift: usize,
}

fn check_block_args(field: &FieldParams, e: u32, k: u32, g: &Poly, b: usize) -> Result<(usize, usize, usize)> {
    if g.field() != field {
        return Err(Error::FieldMismatch);
    }
    if e < 2 || k == 0 || k >= e {
        return Err(Error::HypothesisViolated(format!("need 1 <= k <= e - 1, got k = {k}, e = {e}")));
    }
    let p = field.p() as usize;
    let n = p
        .checked_pow(e)
        .filter(|&n| n <= MAX_LENGTH)
        .ok_or_else(|| Error::InvalidField(format!("length {p}^{e} is too large")))?;
    let period = pow(p, e - k);
    let d = g
        .degree()
        .ok_or_else(|| Error::HypothesisViolated("g must be nonzero".into()))?;
    if d >= period {
        return Err(Error::DegreeTooLarge { degree: d, limit: period });
    }
    if b == 0 {
        return Err(Error::WidthOutOfRange { b, n });
    }
    if b > n - d {
        return Err(Error::WidthTooLarge { b, limit: n - d });
    }
    Ok((n, period, d))
}

/// `c(x) = (x - 1)^(p^e - p^(e-k)) g(x)` as a length-`p^e` word.
pub fn block_codeword(field: &FieldParams, e: u32, k: u32, g: &Poly) -> Result<Word> {
    let (n, period, _) = check_block_args(field, e, k, g, 1)?;
    let c = poly_mul(&xminus1_pow(field, n - period), g)?;
    Ok(to_word(&c, n))
}

/// b-weight of `(x - 1)^(p^e - p^(e-k)) g(x)` from the b-weight of `g`.
///
/// `c` is `p^k` copies of `g` padded to one period `p^(e-k)`, so its weight is
/// `p^k` times the weight of one period. That matches `w_b(g)` unless the
/// period is too short for its zero tail to absorb the windows spilling past
/// `deg g`, in which case the tail length `zeta = p^(e-k) - deg g - 1`
/// corrects it. The case test assumes `g(0) != 0`, so a power of `x` is
/// divided out of `g` first; both weights are shift invariant.
pub fn lemma10_evaluate(field: &FieldParams, e: u32, k: u32, g: &Poly, b: usize) -> Result<BlockWeight> {
    let (n, period, d) = check_block_args(field, e, k, g, b)?;
    let shift = g.coeffs().iter().position(|c| !c.is_zero()).expect("g is nonzero");
    let core = Poly::new(field, g.coeffs()[shift..].to_vec())?;
    let d = d - shift;

    let w_g = weight_windows(to_word(&core, n).symbols(), b);
    let scale = pow(field.p() as usize, k);
    // Coefficients 0..=b - period + d - 1 all vanish (vacuous when negative).
    let periodic = d + b <= period || (0..b + d - period).all(|j| core.coeff(j).is_zero());
    if periodic {
        return Ok(BlockWeight { weight: scale * w_g, case: BlockCase::Periodic, shift });
    }
    let zeta = period - d - 1;
    let per_block = (w_g + zeta)
        .checked_sub(b - 1)
        .ok_or_else(|| Error::HypothesisViolated("negative block weight".into()))?;
    Ok(BlockWeight { weight: scale * per_block, case: BlockCase::Wrapped, shift })
}

pub fn lemma10_weight(field: &FieldParams, e: u32, k: u32, g: &Poly, b: usize) -> Result<usize> {
    Ok(lemma10_evaluate(field, e, k, g, b)?.weight)
}

/// One output row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceRecord {
    pub p: u32,
    pub e: u32,
    pub m: u32,
    pub i: usize,
    pub b: usize,
    pub n: usize,
    pub k_dim: usize,
    #[serde(rename = "dH_formula")]
    pub dh_formula: usize,
    pub db_closed: ClosedFormResult,
    pub db_brute: Option<usize>,
    pub bounds: Option<(usize, usize)>,
    pub consistent: bool,
}

pub const CSV_HEADER: &str = "p,e,m,i,b,n,dim,dH,db_rule,db_closed,db_lower,db_upper,db_brute,consistent";

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

impl DistanceRecord {
    /// Sandwich reported in the CSV: the closed-form interval if any, else
    /// the Hamming-distance bounds.
    pub fn reported_interval(&self) -> Option<(usize, usize)> {
        self.db_closed.interval.or(self.bounds)
    }

    pub fn csv_row(&self) -> String {
        let iv = self.reported_interval();
        [
            self.p.to_string(),
            self.e.to_string(),
            self.m.to_string(),
            self.i.to_string(),
            self.b.to_string(),
            self.n.to_string(),
            self.k_dim.to_string(),
            self.dh_formula.to_string(),
            opt(self.db_closed.rule.map(Rule::id)),
            opt(self.db_closed.value),
            opt(iv.map(|v| v.0)),
            opt(iv.map(|v| v.1)),
            opt(self.db_brute),
            self.consistent.to_string(),
        ]
        .join(",")
    }
}

fn within(v: usize, iv: Option<(usize, usize)>) -> bool {
    iv.is_none_or(|(lo, hi)| lo <= v && v <= hi)
}

/// Formula values, optional brute force, bounds and their agreement.
///
/// `b = 1` rows carry no closed-form b-distance; there `d_b = d_H`.
pub fn build_record(spec: &CyclicCodeSpec, b: usize, cap: u128, with_brute: bool) -> Result<DistanceRecord> {
    let n = spec.n();
    if b == 0 || b > n {
        return Err(Error::WidthOutOfRange { b, n });
    }
    let dh = hamming_distance_formula(spec);
    let closed = if b >= 2 { closed_form_db(spec, b)? } else { ClosedFormResult::empty(spec, b) };
    let bounds = hamming_sandwich(dh, n, b);
    let brute = if with_brute { Some(min_weights_bruteforce(spec, &[b], cap)?) } else { None };

    let mut consistent = closed.rules_agree();
    if let Some(v) = closed.value {
        consistent &= spec.i() == n || within(v, bounds);
    }
    if let Some(w) = &brute {
        let db = w.by_width[0].1;
        consistent &= w.hamming == dh;
        consistent &= closed.matches.iter().all(|m| m.value == db);
        consistent &= within(db, closed.interval);
        consistent &= spec.i() == n || within(db, bounds);
        if b == 1 {
            consistent &= db == dh;
        }
    }

    Ok(DistanceRecord {
        p: spec.p(),
        e: spec.e(),
        m: spec.m(),
        i: spec.i(),
        b,
        n,
        k_dim: spec.dim(),
        dh_formula: dh,
        db_closed: closed,
        db_brute: brute.map(|w| w.by_width[0].1),
        bounds,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bsymbol::weight_b_oracle;
    use crate::gf::make_field;

    fn spec(p: u32, e: u32, m: u32, i: usize) -> CyclicCodeSpec {
        CyclicCodeSpec::new(&make_field(p, m, None).unwrap(), e, i).unwrap()
    }

    #[test]
    fn spec_validation() {
        let z3 = make_field(3, 1, None).unwrap();
        assert_eq!(CyclicCodeSpec::new(&z3, 2, 10), Err(Error::IndexOutOfRange { i: 10, n: 9 }));
        assert!(CyclicCodeSpec::new(&z3, 0, 0).is_err());
        let s = spec(3, 2, 1, 6);
        assert_eq!((s.n(), s.dim(), s.size()), (9, 3, 27));
        assert_eq!(spec(2, 2, 2, 1).size(), 64);
    }

    #[test]
    fn hamming_formula_examples() {
        assert_eq!(hamming_distance_formula(&spec(3, 2, 1, 5)), 3);
        assert_eq!(hamming_distance_formula(&spec(3, 2, 1, 8)), 9);
        assert_eq!(hamming_distance_formula(&spec(3, 2, 1, 0)), 1);
        assert_eq!(hamming_distance_formula(&spec(3, 2, 1, 9)), 0);
        let all: Vec<usize> = (0..=9).map(|i| hamming_distance_formula(&spec(3, 2, 1, i))).collect();
        assert_eq!(all, vec![1, 2, 2, 2, 3, 3, 3, 6, 9, 0]);
    }

    #[test]
    fn enumeration_counts() {
        let zero = spec(3, 2, 1, 9);
        let words: Vec<Word> = enumerate_codewords(&zero, DEFAULT_CAP).unwrap().collect();
        assert_eq!(words, vec![Word::zero(3, 9)]);

        let c6: Vec<Word> = enumerate_codewords(&spec(3, 2, 1, 6), DEFAULT_CAP).unwrap().collect();
        assert_eq!(c6.len(), 27);
        let mut distinct = c6.clone();
        distinct.sort_by(|a, b| a.symbols().cmp(b.symbols()));
        distinct.dedup();
        assert_eq!(distinct.len(), 27);

        let full: Vec<Word> = enumerate_codewords(&spec(2, 3, 1, 0), DEFAULT_CAP).unwrap().collect();
        assert_eq!(full.len(), 256);

        assert_eq!(
            enumerate_codewords(&spec(3, 2, 1, 0), 100).err(),
            Some(Error::EnumerationTooLarge { size: 19683, cap: 100 })
        );
    }

    #[test]
    fn enumeration_matches_direct_products() {
        for s in [spec(3, 2, 1, 6), spec(2, 2, 2, 2), spec(5, 1, 1, 3)] {
            let f = s.field().clone();
            let elements = f.enumerate_elements();
            let g = s.generator();
            for (index, word) in enumerate_codewords(&s, DEFAULT_CAP).unwrap().enumerate() {
                let mut rest = index;
                let mut msg = Vec::new();
                for _ in 0..s.dim() {
                    msg.push(elements[rest % f.q() as usize].clone());
                    rest /= f.q() as usize;
                }
                let m = Poly::new(&f, msg).unwrap();
                assert_eq!(word, to_word(&poly_mul(&m, &g).unwrap(), s.n()));
            }
        }
    }

    #[test]
    fn codewords_are_closed_under_shift() {
        use crate::polyring::cyclic_shift;
        let s = spec(2, 3, 1, 3);
        let words: Vec<Word> = enumerate_codewords(&s, DEFAULT_CAP).unwrap().collect();
        for w in &words {
            assert!(words.contains(&cyclic_shift(w, 1)));
        }
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(min_b_weight_bruteforce(&spec(3, 2, 1, 9), 3, DEFAULT_CAP).unwrap(), 0);
        assert_eq!(min_b_weight_bruteforce(&spec(3, 2, 1, 0), 3, DEFAULT_CAP).unwrap(), 3);
        assert_eq!(min_b_weight_bruteforce(&spec(3, 2, 1, 7), 2, DEFAULT_CAP).unwrap(), 9);
        assert_eq!(
            min_b_weight_bruteforce(&spec(3, 2, 1, 0), 10, DEFAULT_CAP),
            Err(Error::WidthOutOfRange { b: 10, n: 9 })
        );
        assert!(min_b_weight_bruteforce(&spec(3, 2, 1, 0), 2, 1000).is_err());
    }

    #[test]
    fn brute_force_matches_sequential_scan() {
        for s in [spec(3, 2, 1, 2), spec(2, 2, 2, 1), spec(2, 3, 1, 4)] {
            let widths: Vec<usize> = (1..=s.n()).collect();
            let fast = min_weights_bruteforce(&s, &widths, DEFAULT_CAP).unwrap();
            let codewords: Vec<Word> = enumerate_codewords(&s, DEFAULT_CAP).unwrap().skip(1).collect();
            for &b in &widths {
                let slow = codewords.iter().map(|w| weight_b_oracle(w, b).unwrap()).min().unwrap();
                assert_eq!(fast.get(b), Some(slow));
            }
            let h = codewords.iter().map(Word::hamming_weight).min().unwrap();
            assert_eq!(fast.hamming, h);
        }
    }

    #[test]
    fn closed_form_examples() {
        let r = closed_form_db(&spec(5, 1, 1, 2), 3).unwrap();
        assert_eq!((r.value, r.rule), (Some(5), Some(Rule::PrimeLength)));
        let r = closed_form_db(&spec(3, 2, 1, 2), 3).unwrap();
        assert_eq!((r.value, r.rule), (Some(5), Some(Rule::LowIndex)));
        let r = closed_form_db(&spec(3, 2, 1, 6), 2).unwrap();
        assert_eq!((r.value, r.rule), (Some(6), Some(Rule::UpperBlock)));
        assert_eq!((r.params_echo.k, r.params_echo.residual), (Some(1), Some(0)));
        let r = closed_form_db(&spec(3, 2, 1, 7), 2).unwrap();
        assert_eq!((r.value, r.params_echo.residual), (Some(9), Some(1)));
        let r = closed_form_db(&spec(3, 2, 1, 0), 3).unwrap();
        assert_eq!((r.value, r.rule), (Some(3), Some(Rule::FullSpace)));
        let r = closed_form_db(&spec(2, 2, 1, 4), 2).unwrap();
        assert_eq!((r.value, r.rule), (Some(0), Some(Rule::ZeroCode)));

        let r = closed_form_db(&spec(3, 2, 1, 4), 5).unwrap();
        assert_eq!(r.value, None);
        assert_eq!(r.interval, Some((7, 15)));
        assert_eq!(r.interval_source, Some(IntervalSource::Hamming));

        // i = 3 <= p^(e-1) but i + b > n: only the low-index sandwich.
        let r = closed_form_db(&spec(3, 2, 1, 3), 7).unwrap();
        assert_eq!((r.value, r.interval), (None, Some((8, 14))));
        assert_eq!(r.interval_source, Some(IntervalSource::LowIndex));

        assert!(closed_form_db(&spec(3, 2, 1, 3), 1).is_err());
        assert!(closed_form_db(&spec(3, 2, 1, 3), 10).is_err());
    }

    #[test]
    fn overlapping_rules_agree() {
        // p = 2 lets the upper-block decompositions overlap each other and
        // the low-index rule.
        let s = spec(2, 3, 1, 4);
        let r = closed_form_db(&s, 4).unwrap();
        assert!(r.matches.len() >= 2);
        assert!(r.rules_agree());

        let s = spec(2, 4, 1, 12);
        let hits = exact_rules(&s, 4);
        let ks: Vec<Option<u32>> = hits.iter().map(|m| m.k).collect();
        assert_eq!(ks, vec![Some(1), Some(2)]);
        assert!(hits.iter().all(|m| m.value == 16));
    }

    #[test]
    fn block_weight_examples() {
        let z3 = make_field(3, 1, None).unwrap();
        let g = Poly::from_ints(&z3, &[-1, 1]);
        let r = lemma10_evaluate(&z3, 2, 1, &g, 2).unwrap();
        assert_eq!((r.weight, r.case), (9, BlockCase::Periodic));
        let c = block_codeword(&z3, 2, 1, &g).unwrap();
        assert_eq!(c, to_word(&xminus1_pow(&z3, 7), 9));
        assert_eq!(weight_b_oracle(&c, 2).unwrap(), 9);

        let r = lemma10_evaluate(&z3, 2, 1, &g, 3).unwrap();
        assert_eq!((r.weight, r.case), (9, BlockCase::Wrapped));
        assert_eq!(c.symbols(), &[2, 1, 0, 2, 1, 0, 2, 1, 0]);
        assert_eq!(weight_b_oracle(&c, 3).unwrap(), 9);

        let two = Poly::from_ints(&z3, &[2]);
        for b in 1..=3 {
            assert_eq!(lemma10_weight(&z3, 2, 1, &two, b).unwrap(), 3 * b);
        }
    }

    /// The decomposition read without normalizing `g`, to pin down why the
    /// implementation divides out powers of `x` first.
    fn literal_block_weight(field: &FieldParams, e: u32, k: u32, g: &Poly, b: usize) -> usize {
        let (n, period, d) = check_block_args(field, e, k, g, b).unwrap();
        let w_g = weight_windows(to_word(g, n).symbols(), b);
        let scale = pow(field.p() as usize, k);
        if d + b <= period || (0..b + d - period).all(|j| g.coeff(j).is_zero()) {
            scale * w_g
        } else {
            scale * (w_g + period - d - 1 - (b - 1))
        }
    }

    #[test]
    fn unnormalized_decomposition_fails_on_shifted_g() {
        let z3 = make_field(3, 1, None).unwrap();
        let x = Poly::from_ints(&z3, &[0, 1]);
        let c = block_codeword(&z3, 2, 1, &x).unwrap();
        assert_eq!(weight_b_oracle(&c, 4).unwrap(), 9);
        assert_eq!(literal_block_weight(&z3, 2, 1, &x, 4), 6);
        let r = lemma10_evaluate(&z3, 2, 1, &x, 4).unwrap();
        assert_eq!((r.weight, r.shift), (9, 1));
    }

    #[test]
    fn block_weight_errors() {
        let z3 = make_field(3, 1, None).unwrap();
        let g = Poly::from_ints(&z3, &[1, 1, 1, 1]);
        assert_eq!(lemma10_weight(&z3, 2, 1, &g, 2), Err(Error::DegreeTooLarge { degree: 3, limit: 3 }));
        let g = Poly::from_ints(&z3, &[1, 1]);
        assert_eq!(lemma10_weight(&z3, 2, 1, &g, 9), Err(Error::WidthTooLarge { b: 9, limit: 8 }));
        assert!(lemma10_weight(&z3, 2, 2, &g, 2).is_err());
        assert!(lemma10_weight(&z3, 2, 1, &Poly::zero(&z3), 2).is_err());
    }

    #[test]
    fn generator_weight_needs_short_zero_runs() {
        let z2 = make_field(2, 1, None).unwrap();
        let g = to_word(&xminus1_pow(&z2, 4), 8);
        assert_eq!(g.symbols(), &[1, 0, 0, 0, 1, 0, 0, 0]);
        assert_eq!(weight_b_oracle(&g, 2).unwrap(), 4);
        for i in 0..=4 {
            let g = to_word(&xminus1_pow(&z2, i), 8);
            assert_eq!(weight_b_oracle(&g, 4).unwrap(), i + 4);
        }
    }

    #[test]
    fn record_examples() {
        let r = build_record(&spec(3, 2, 1, 7), 2, DEFAULT_CAP, true).unwrap();
        assert_eq!(r.dh_formula, 6);
        assert_eq!((r.db_closed.value, r.db_closed.rule), (Some(9), Some(Rule::UpperBlock)));
        assert_eq!(r.db_brute, Some(9));
        assert!(r.consistent);
        assert_eq!(r.csv_row(), "3,2,1,7,2,9,2,6,Thm11,9,7,12,9,true");

        let r = build_record(&spec(3, 2, 1, 9), 3, DEFAULT_CAP, true).unwrap();
        assert_eq!((r.dh_formula, r.db_closed.value, r.db_brute), (0, Some(0), Some(0)));
        assert!(r.consistent);

        let r = build_record(&spec(3, 2, 1, 4), 5, DEFAULT_CAP, false).unwrap();
        assert_eq!(r.db_closed.value, None);
        assert_eq!(r.db_closed.interval, Some((7, 15)));
        assert_eq!(r.csv_row(), "3,2,1,4,5,9,5,3,,,7,15,,true");

        let r = build_record(&spec(2, 2, 1, 1), 1, DEFAULT_CAP, true).unwrap();
        assert_eq!((r.db_closed.value, r.db_brute, r.dh_formula), (None, Some(2), 2));
        assert!(r.consistent);
    }

    #[test]
    fn record_json_names() {
        let r = build_record(&spec(3, 2, 1, 7), 2, DEFAULT_CAP, true).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["p", "e", "m", "i", "b", "n", "k_dim", "dH_formula", "db_closed", "db_brute", "bounds", "consistent"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["db_closed"]["rule"], "Thm11");
    }
}
