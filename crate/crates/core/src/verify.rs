//! Verification suites: run-formula vs window count, closed forms vs brute
//! force, the block decomposition, and the weight sandwiches.
//!
//! Random inputs come from ChaCha8 seeded with `seed` mixed with a per-suite
//! constant, so each suite replays identically whether run alone or with the
//! others. Reports depend only on the configuration.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bsymbol::{
    check_bounds, dist_formula_slices, dist_windows, hamming_slices, partition_slices, weight_windows,
};
use crate::codes::{
    block_codeword, closed_form_db, hamming_distance_formula, hamming_sandwich, lemma10_evaluate,
    low_index_sandwich, min_weights_bruteforce, BlockCase, CyclicCodeSpec, Rule, DEFAULT_CAP,
};
use crate::error::Result;
use crate::gf::{make_field, FieldParams};
use crate::polyring::{cyclic_shift, to_word, word_scale, word_sub, xminus1_pow, Poly, Word};

/// Failure records kept per suite; the count is always exact.
const MAX_RECORDED_FAILURES: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Random cases for the formula and bounds sweeps.
    pub trials: usize,
    /// Random `g` per `(p, e, k)` in the block-decomposition sweep.
    pub lemma_trials: usize,
    pub binary_max_n: usize,
    pub random_alphabets: Vec<u32>,
    pub random_max_n: usize,
    pub metric_max_n: usize,
    pub metric_max_b: usize,
    /// `(p, e, m)` code parameters.
    pub code_grid: Vec<(u32, u32, u32)>,
    /// `(p, e)` for the block-decomposition sweep, over `Z_p`.
    pub lemma_grid: Vec<(u32, u32)>,
    pub max_b: usize,
    pub cap: u128,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 42,
            trials: 100_000,
            lemma_trials: 1000,
            binary_max_n: 10,
            random_alphabets: vec![3, 4],
            random_max_n: 30,
            metric_max_n: 6,
            metric_max_b: 4,
            code_grid: vec![(2, 2, 1), (2, 3, 1), (3, 1, 1), (3, 2, 1), (5, 1, 1), (2, 2, 2)],
            lemma_grid: vec![(2, 2), (2, 3), (3, 2)],
            max_b: 6,
            cap: DEFAULT_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub inputs: Value,
    pub expected: Value,
    pub actual: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: u64,
    pub passed: bool,
    /// Cases seen per rule, branch or property.
    pub coverage: BTreeMap<String, u64>,
    /// Coverage keys the suite promised but never exercised.
    pub uncovered: Vec<String>,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Accumulates cases, coverage and failures; merges order-independently.
#[derive(Debug, Default, Clone)]
struct Tally {
    cases: u64,
    coverage: BTreeMap<String, u64>,
    failure_count: u64,
    failures: Vec<((String, String), Failure)>,
}

impl Tally {
    /// Keeps the smallest recorded failures by key.
    fn prune(&mut self) {
        self.failures.sort_by(|a, b| a.0.cmp(&b.0));
        self.failures.truncate(MAX_RECORDED_FAILURES);
    }

    fn hit(&mut self, key: &str) {
        *self.coverage.entry(key.to_string()).or_insert(0) += 1;
    }

    fn hits(&mut self, key: &str, count: u64) {
        if count > 0 {
            *self.coverage.entry(key.to_string()).or_insert(0) += count;
        }
    }

    fn fail(&mut self, inputs: Value, expected: Value, actual: Value) {
        self.failure_count += 1;
        let key = (inputs.to_string(), expected.to_string());
        self.failures.push((key, Failure { inputs, expected, actual }));
        if self.failures.len() > 2 * MAX_RECORDED_FAILURES {
            self.prune();
        }
    }

    /// Asserts `expected == actual`, counting one case.
    fn check<T: PartialEq + Serialize>(&mut self, inputs: impl FnOnce() -> Value, expected: T, actual: T) {
        self.cases += 1;
        if expected != actual {
            self.fail(inputs(), json!(expected), json!(actual));
        }
    }

    fn check_within(&mut self, inputs: impl FnOnce() -> Value, interval: (usize, usize), actual: usize) {
        self.cases += 1;
        if actual < interval.0 || actual > interval.1 {
            self.fail(inputs(), json!(interval), json!(actual));
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        for (k, v) in other.coverage {
            *self.coverage.entry(k).or_insert(0) += v;
        }
        self.failure_count += other.failure_count;
        self.failures.extend(other.failures);
        if self.failures.len() > 2 * MAX_RECORDED_FAILURES {
            self.prune();
        }
        self
    }

    fn finish(mut self, suite: &str, required: &[String], started: Instant) -> SuiteReport {
        self.prune();
        let uncovered: Vec<String> = required
            .iter()
            .filter(|k| self.coverage.get(*k).copied().unwrap_or(0) == 0)
            .cloned()
            .collect();
        SuiteReport {
            suite: suite.to_string(),
            cases: self.cases,
            passed: self.failure_count == 0 && uncovered.is_empty(),
            coverage: self.coverage,
            uncovered,
            failure_count: self.failure_count,
            failures: self.failures.into_iter().map(|(_, f)| f).collect(),
            elapsed: started.elapsed(),
        }
    }
}

fn rng_for(cfg: &SuiteConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Which run-structure count the formula suite checks against the windows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaUnderTest {
    Standard,
    /// Drops the full-circle guard; the suite must catch it.
    UnguardedMutant,
}

fn formula_value(x: &[u32], y: &[u32], b: usize, which: FormulaUnderTest) -> usize {
    match which {
        FormulaUnderTest::Standard => dist_formula_slices(x, y, b),
        FormulaUnderTest::UnguardedMutant => {
            let d_h = hamming_slices(x, y);
            if d_h == 0 {
                return 0;
            }
            let part = partition_slices(x, y, b);
            d_h + part.agreement_excess + part.run_count() * (b - 1)
        }
    }
}

/// One formula-vs-windows comparison plus the distance sandwich.
fn formula_case(t: &mut Tally, x: &[u32], y: &[u32], b: usize, which: FormulaUnderTest) {
    let oracle = dist_windows(x, y, b);
    let formula = formula_value(x, y, b, which);
    let d_h = hamming_slices(x, y);
    let inputs = || json!({ "x": x, "y": y, "b": b });
    t.check(inputs, oracle, formula);

    if d_h == 0 {
        t.hit("equal");
    } else {
        let part = partition_slices(x, y, b);
        if part.full_circle {
            t.hit("full_circle");
        } else if part.run_count() == 1 {
            t.hit("single_run");
        } else {
            t.hit("multi_run");
        }
    }
    if let Some(iv) = hamming_sandwich(d_h, x.len(), b) {
        t.hit("distance_sandwich");
        t.check_within(inputs, iv, oracle);
    }
}

fn metric_axioms(t: &mut Tally, n: usize, b: usize) {
    let words: Vec<Vec<u32>> = (0u32..1 << n).map(|v| (0..n).map(|k| (v >> k) & 1).collect()).collect();
    let size = words.len();
    let mut d = vec![0usize; size * size];
    for a in 0..size {
        for c in 0..size {
            d[a * size + c] = dist_windows(&words[a], &words[c], b);
        }
    }
    let mut bad = Vec::new();
    let mut cases = 0u64;
    for a in 0..size {
        for c in 0..size {
            cases += 1;
            let dac = d[a * size + c];
            if dac != d[c * size + a] || ((dac == 0) != (a == c)) {
                bad.push(json!({ "axiom": "symmetry_identity", "n": n, "b": b, "x": words[a], "y": words[c] }));
            }
            for m in 0..size {
                cases += 1;
                if dac > d[a * size + m] + d[m * size + c] {
                    bad.push(json!({ "axiom": "triangle", "n": n, "b": b, "x": words[a], "y": words[c], "z": words[m] }));
                }
            }
        }
    }
    t.cases += cases;
    t.hits("metric_axioms", cases);
    for inputs in bad {
        t.fail(inputs, json!(true), json!(false));
    }
}

pub fn run_formula_suite(cfg: &SuiteConfig) -> SuiteReport {
    run_formula_suite_with(cfg, FormulaUnderTest::Standard)
}

pub fn run_formula_suite_with(cfg: &SuiteConfig, which: FormulaUnderTest) -> SuiteReport {
    let started = Instant::now();

    // Every binary pair, every width.
    let mut tally = (2..=cfg.binary_max_n)
        .flat_map(|n| (0u32..1 << n).map(move |xv| (n, xv)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(n, xv)| {
            let mut t = Tally::default();
            let x: Vec<u32> = (0..n).map(|k| (xv >> k) & 1).collect();
            let mut y = vec![0u32; n];
            for yv in 0u32..1 << n {
                for (k, s) in y.iter_mut().enumerate() {
                    *s = (yv >> k) & 1;
                }
                for b in 2..=n {
                    formula_case(&mut t, &x, &y, b, which);
                }
            }
            t.hits("binary_exhaustive", (n as u64 - 1) << n);
            t
        })
        .reduce(Tally::default, Tally::merge);

    // Random pairs over larger alphabets: y is x with a random fraction of
    // positions redrawn, so agreement runs of every length show up.
    let mut rng = rng_for(cfg, 1);
    const REDRAW: [f64; 6] = [0.05, 0.1, 0.2, 0.35, 0.5, 1.0];
    for _ in 0..cfg.trials {
        let q = cfg.random_alphabets[rng.gen_range(0..cfg.random_alphabets.len())];
        let n = rng.gen_range(2..=cfg.random_max_n);
        let b = rng.gen_range(2..=n);
        let rate = REDRAW[rng.gen_range(0..REDRAW.len())];
        let x: Vec<u32> = (0..n).map(|_| rng.gen_range(0..q)).collect();
        let y: Vec<u32> = x
            .iter()
            .map(|&s| if rng.gen_bool(rate) { rng.gen_range(0..q) } else { s })
            .collect();
        tally.hit(&format!("random_q{q}"));
        formula_case(&mut tally, &x, &y, b, which);
    }

    for n in 1..=cfg.metric_max_n {
        for b in 1..=cfg.metric_max_b.min(n) {
            metric_axioms(&mut tally, n, b);
        }
    }

    let mut required: Vec<String> = ["equal", "full_circle", "single_run", "multi_run", "distance_sandwich"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    if cfg.trials > 0 {
        required.extend(cfg.random_alphabets.iter().map(|q| format!("random_q{q}")));
    }
    let name = match which {
        FormulaUnderTest::Standard => "formula",
        FormulaUnderTest::UnguardedMutant => "formula_mutant",
    };
    tally.finish(name, &required, started)
}

/// Runs the formula suite against a deliberately broken formula. Passes when
/// the breakage is detected.
pub fn run_self_check(cfg: &SuiteConfig) -> SuiteReport {
    let mut report = run_formula_suite_with(cfg, FormulaUnderTest::UnguardedMutant);
    report.suite = "self_check".into();
    report.passed = report.failure_count > 0;
    report.failures.truncate(5);
    report
}

fn hamming_branch(spec: &CyclicCodeSpec) -> &'static str {
    let (p, e, i, n) = (spec.p() as usize, spec.e(), spec.i(), spec.n());
    if i == 0 {
        "hamming:full_space"
    } else if i == n {
        "hamming:zero_code"
    } else if i <= (p - 1) * p.pow(e - 1) {
        "hamming:low"
    } else {
        "hamming:high"
    }
}

fn code_params(cfg: &SuiteConfig) -> Result<Vec<CyclicCodeSpec>> {
    let mut specs = Vec::new();
    for &(p, e, m) in &cfg.code_grid {
        let field = make_field(p, m, None)?;
        let n = (p as usize).pow(e);
        for i in 0..=n {
            specs.push(CyclicCodeSpec::new(&field, e, i)?);
        }
    }
    Ok(specs)
}

pub fn run_code_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut t = Tally::default();
    let mut required: Vec<String> = vec![
        "hamming:full_space".into(),
        "hamming:zero_code".into(),
        "hamming:low".into(),
        "hamming:high".into(),
        "generator_weight".into(),
        "hamming_sandwich".into(),
        "nesting".into(),
    ];

    // previous brute-force b-distances per (p, e, m, b), for nesting
    let mut previous: BTreeMap<(u32, u32, u32, usize), (usize, usize)> = BTreeMap::new();

    for spec in code_params(cfg)? {
        let (p, e, m, i, n) = (spec.p(), spec.e(), spec.m(), spec.i(), spec.n());
        let here = || json!({ "p": p, "e": e, "m": m, "i": i });
        if spec.size() > cfg.cap {
            t.hit("skipped_over_cap");
            continue;
        }
        let widths: Vec<usize> = (1..=cfg.max_b.min(n)).collect();
        let brute = min_weights_bruteforce(&spec, &widths, cfg.cap)?;
        let d_h = hamming_distance_formula(&spec);
        t.hit(hamming_branch(&spec));
        t.check(here, d_h, brute.hamming);

        let generator = to_word(&xminus1_pow(spec.field(), i), n);
        for &b in &widths {
            let at = || json!({ "p": p, "e": e, "m": m, "i": i, "b": b });
            let db = brute.get(b).expect("requested width");

            // Internal zero runs of (x - 1)^i are shorter than b when i <= b,
            // and absent for i < p.
            if i < n && i + b <= n && (i <= b || i < p as usize) {
                t.hit("generator_weight");
                t.check(|| json!({ "property": "generator_weight", "p": p, "e": e, "m": m, "i": i, "b": b }),
                    i + b, weight_windows(generator.symbols(), b));
            }

            if b == 1 {
                t.check(at, d_h, db);
                continue;
            }

            if i < n {
                let key = (p, e, m, b);
                if let Some(&(prev_i, prev_db)) = previous.get(&key) {
                    t.hit("nesting");
                    t.cases += 1;
                    if db < prev_db {
                        t.fail(
                            json!({ "property": "nesting", "p": p, "e": e, "m": m, "b": b, "i": [prev_i, i] }),
                            json!(format!(">= {prev_db}")),
                            json!(db),
                        );
                    }
                }
                previous.insert(key, (i, db));
            }

            let closed = closed_form_db(&spec, b)?;
            if closed.matches.is_empty() {
                t.hit("no_exact_rule");
            }
            for hit in &closed.matches {
                let id = hit.rule.id();
                t.hit(&format!("rule:{id}"));
                t.check(|| json!({ "p": p, "e": e, "m": m, "i": i, "b": b, "rule": id, "k": hit.k }), hit.value, db);
            }
            if let (Some(iv), Some(src)) = (closed.interval, closed.interval_source) {
                t.hit(&format!("interval:{}", json!(src).as_str().unwrap_or("?")));
                t.check_within(at, iv, db);
            }
            if let Some(iv) = low_index_sandwich(&spec, b) {
                t.hit("low_index_sandwich");
                t.check_within(|| json!({ "property": "low_index_sandwich", "p": p, "e": e, "m": m, "i": i, "b": b }), iv, db);
            }
            if let Some(iv) = hamming_sandwich(d_h, n, b) {
                t.hit("hamming_sandwich");
                t.check_within(|| json!({ "property": "hamming_sandwich", "p": p, "e": e, "m": m, "i": i, "b": b }), iv, db);
            }
        }
    }
    // Every rule whose hypotheses the grid can meet must be exercised.
    let mut rules = Vec::new();
    if !cfg.code_grid.is_empty() {
        rules.extend([Rule::ZeroCode, Rule::FullSpace]);
    }
    if cfg.code_grid.iter().any(|&(_, e, _)| e == 1) {
        rules.push(Rule::PrimeLength);
    }
    if cfg.code_grid.iter().any(|&(_, e, _)| e >= 2) {
        rules.extend([Rule::LowIndex, Rule::UpperBlock]);
        required.push("low_index_sandwich".into());
    }
    required.extend(rules.iter().map(|r| format!("rule:{}", r.id())));
    Ok(t.finish("code", &required, started))
}

/// Uniform nonzero polynomial with the given degree and no other constraint.
fn random_poly(rng: &mut ChaCha8Rng, field: &FieldParams, degree: usize) -> Poly {
    let p = field.p() as i64;
    let mut coeffs: Vec<i64> = (0..degree).map(|_| rng.gen_range(0..p)).collect();
    coeffs.push(rng.gen_range(1..p));
    Poly::from_ints(field, &coeffs)
}

fn block_case(t: &mut Tally, field: &FieldParams, e: u32, k: u32, g: &Poly, b: usize) -> Result<()> {
    let eval = lemma10_evaluate(field, e, k, g, b)?;
    let c = block_codeword(field, e, k, g)?;
    let oracle = weight_windows(c.symbols(), b);
    let tag = format!("p{}e{}k{}", field.p(), e, k);
    t.hit(&tag);
    t.hit(match eval.case {
        BlockCase::Periodic => "periodic",
        BlockCase::Wrapped => "wrapped",
    });
    if eval.shift > 0 {
        t.hit("shifted_g");
    }
    let coeffs: Vec<u32> = (0..=g.degree().unwrap_or(0)).map(|j| field.index(&g.coeff(j))).collect();
    t.check(|| json!({ "p": field.p(), "e": e, "k": k, "g": coeffs, "b": b }), oracle, eval.weight);
    Ok(())
}

pub fn run_lemma_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut t = Tally::default();
    let mut rng = rng_for(cfg, 3);
    let mut required: Vec<String> = vec!["periodic".into(), "wrapped".into(), "shifted_g".into()];

    for &(p, e) in &cfg.lemma_grid {
        let field = make_field(p, 1, None)?;
        let n = (p as usize).pow(e);
        for k in 1..e {
            required.push(format!("p{p}e{e}k{k}"));
            let period = (p as usize).pow(e - k);
            for _ in 0..cfg.lemma_trials {
                let degree = rng.gen_range(0..period);
                let g = random_poly(&mut rng, &field, degree);
                let d = g.degree().expect("nonzero");
                for b in 2..=n - d {
                    block_case(&mut t, &field, e, k, &g, b)?;
                }
            }
        }
    }

    // fixed cases over Z_3, length 9
    let z3 = make_field(3, 1, None)?;
    let xm1 = Poly::from_ints(&z3, &[-1, 1]);
    block_case(&mut t, &z3, 2, 1, &xm1, 2)?;
    block_case(&mut t, &z3, 2, 1, &xm1, 3)?;
    for b in 2..=9 {
        block_case(&mut t, &z3, 2, 1, &Poly::from_ints(&z3, &[2]), b)?;
    }
    Ok(t.finish("lemma", &required, started))
}

pub fn run_bounds_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut t = Tally::default();
    let required: Vec<String> = [
        "weight_sandwich",
        "monotone_b",
        "shift_invariance",
        "scalar_invariance",
        "difference_identity",
        "saturation",
        "single_symbol",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();

    let example = Word::from_symbols(vec![0, 0, 1, 3, 0, 5, 0, 0, 0, 2, 0, 7, 0, 0, 0]);
    let c = check_bounds(&example, 4)?;
    t.hit("weight_sandwich");
    t.check(|| json!({ "word": example.symbols(), "b": 4 }), (8, 13, 20, true), (c.lower, c.weight, c.upper, c.holds));

    for n in 1..=12 {
        for pos in 0..n {
            let mut s = vec![0; n];
            s[pos] = 1;
            let w = Word::from_symbols(s);
            for b in 1..=n {
                let c = check_bounds(&w, b)?;
                t.hit("single_symbol");
                t.check(|| json!({ "n": n, "pos": pos, "b": b }), (b, b, b), (c.lower, c.weight, c.upper));
            }
        }
    }

    let fields = [
        make_field(2, 1, None)?,
        make_field(3, 1, None)?,
        make_field(2, 2, None)?,
        make_field(5, 1, None)?,
    ];
    let mut rng = rng_for(cfg, 4);
    let trials = (cfg.trials / 10).max(1);
    for _ in 0..trials {
        let field = &fields[rng.gen_range(0..fields.len())];
        let q = field.q();
        let n = rng.gen_range(2..=cfg.random_max_n);
        let density: f64 = [0.05, 0.15, 0.3, 0.6, 0.9][rng.gen_range(0..5)];
        let draw = |rng: &mut ChaCha8Rng| -> Vec<u32> {
            (0..n).map(|_| if rng.gen_bool(density) { rng.gen_range(1..q) } else { 0 }).collect()
        };
        let x = Word::new(q, draw(&mut rng))?;
        let y = Word::new(q, draw(&mut rng))?;
        let shift = rng.gen_range(0..n as i64);
        let alpha = field.from_index(rng.gen_range(1..q))?;
        let shifted = cyclic_shift(&x, shift);
        let scaled = word_scale(field, &alpha, &x)?;
        let diff = word_sub(field, &x, &y)?;
        let xs = x.symbols();
        let inputs = || json!({ "q": q, "x": xs, "y": y.symbols(), "shift": shift, "alpha": field.index(&alpha) });

        let longest_zero_run = longest_circular_zero_run(xs);
        let mut prev = weight_windows(xs, 1);
        for b in 1..=n {
            let w = weight_windows(xs, b);
            if b > 1 {
                t.hit("monotone_b");
                t.cases += 1;
                if w < prev {
                    t.fail(inputs().tap(|v| v["b"] = json!(b)), json!(format!(">= {prev}")), json!(w));
                }
            }
            prev = w;
            t.hit("shift_invariance");
            t.check(|| inputs().tap(|v| v["b"] = json!(b)), w, weight_windows(shifted.symbols(), b));
            t.hit("scalar_invariance");
            t.check(|| inputs().tap(|v| v["b"] = json!(b)), w, weight_windows(scaled.symbols(), b));
            t.hit("difference_identity");
            t.check(
                || inputs().tap(|v| v["b"] = json!(b)),
                weight_windows(diff.symbols(), b),
                dist_windows(xs, y.symbols(), b),
            );
            t.hit("saturation");
            t.check(|| inputs().tap(|v| v["b"] = json!(b)), longest_zero_run < b, w == n);
            if let Ok(c) = check_bounds(&x, b) {
                t.hit("weight_sandwich");
                t.check(|| inputs().tap(|v| v["b"] = json!(b)), true, c.holds);
            }
        }
    }
    Ok(t.finish("bounds", &required, started))
}

fn longest_circular_zero_run(x: &[u32]) -> usize {
    let n = x.len();
    if x.iter().all(|&s| s == 0) {
        return n;
    }
    let (mut best, mut cur) = (0, 0);
    for k in 0..2 * n {
        if x[k % n] == 0 {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    best.min(n)
}

trait Tap {
    fn tap(self, f: impl FnOnce(&mut Self)) -> Self;
}

impl Tap for Value {
    fn tap(mut self, f: impl FnOnce(&mut Self)) -> Self {
        f(&mut self);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Formula,
    Code,
    Lemma,
    Bounds,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub config: SuiteConfig,
    pub passed: bool,
    pub suites: Vec<SuiteReport>,
}

pub fn run_suites(cfg: &SuiteConfig, suite: Suite, self_check: bool) -> Result<VerifyReport> {
    let wanted = |s: Suite| suite == Suite::All || suite == s;
    let mut suites = Vec::new();
    if wanted(Suite::Formula) {
        suites.push(run_formula_suite(cfg));
    }
    if wanted(Suite::Code) {
        suites.push(run_code_suite(cfg)?);
    }
    if wanted(Suite::Lemma) {
        suites.push(run_lemma_suite(cfg)?);
    }
    if wanted(Suite::Bounds) {
        suites.push(run_bounds_suite(cfg)?);
    }
    if self_check {
        suites.push(run_self_check(cfg));
    }
    let passed = suites.iter().all(|s| s.passed);
    Ok(VerifyReport { config: cfg.clone(), passed, suites })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            trials: 2000,
            lemma_trials: 50,
            binary_max_n: 7,
            random_max_n: 16,
            metric_max_n: 4,
            code_grid: vec![(2, 2, 1), (3, 2, 1), (5, 1, 1)],
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn formula_suite_passes_and_covers() {
        let r = run_formula_suite(&small());
        assert!(r.passed, "{:?}", r.failures.first());
        assert!(r.coverage["full_circle"] > 0);
        assert!(r.coverage["equal"] > 0);
    }

    #[test]
    fn mutant_is_caught() {
        let r = run_formula_suite_with(&small(), FormulaUnderTest::UnguardedMutant);
        assert!(!r.passed);
        assert!(r.failure_count > 0);
        assert!(run_self_check(&small()).passed);
    }

    #[test]
    fn code_suite_passes() {
        let r = run_code_suite(&small()).unwrap();
        assert!(r.passed, "{:?} {:?}", r.uncovered, r.failures.first());
        for rule in ["rule:ZeroCode", "rule:Prop6", "rule:Prop8_e1", "rule:Thm9", "rule:Thm11"] {
            assert!(r.coverage.contains_key(rule), "{rule}");
        }
    }

    #[test]
    fn lemma_and_bounds_pass() {
        let r = run_lemma_suite(&small()).unwrap();
        assert!(r.passed, "{:?} {:?}", r.uncovered, r.failures.first());
        let r = run_bounds_suite(&small()).unwrap();
        assert!(r.passed, "{:?} {:?}", r.uncovered, r.failures.first());
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = small();
        let a = serde_json::to_string(&run_suites(&cfg, Suite::All, false).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suites(&cfg, Suite::All, false).unwrap()).unwrap();
        assert_eq!(a, b);
        let other = SuiteConfig { seed: 7, ..cfg };
        let c = serde_json::to_string(&run_suites(&other, Suite::Bounds, false).unwrap()).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn over_cap_rows_are_skipped() {
        let cfg = SuiteConfig { cap: 100, code_grid: vec![(3, 2, 1)], ..small() };
        let r = run_code_suite(&cfg).unwrap();
        assert!(r.coverage["skipped_over_cap"] > 0);
    }
}
