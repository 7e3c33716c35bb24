//! b-symbol read vectors, b-weights and b-distances.
//!
//! Two routes are provided for the distance: the definitional window count
//! (`*_oracle`), and a closed count from the circular run structure of the
//! disagreement set (`*_formula`). Both work over any alphabet and only use
//! symbol equality. All indices are 0-based and wrap modulo `n`.
//!
//! The run-structure count: remove every maximal circular run of agreeing
//! positions of length at least `b - 1`; what remains splits into `L`
//! circular runs that together contain `e` agreeing positions. Then
//! `d_b(x, y) = d_H(x, y) + e + L (b - 1)`, provided at least one run was
//! removed. With no removable run every window sees a disagreement and the
//! distance is `n`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::Word;

/// Positions `start, start + 1, .., start + len - 1` modulo `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct CircularInterval {
    pub start: usize,
    pub len: usize,
    pub n: usize,
}

impl CircularInterval {
    pub fn new(start: usize, len: usize, n: usize) -> CircularInterval {
        debug_assert!(start < n && len >= 1 && len <= n);
        CircularInterval { start, len, n }
    }

    /// Last covered index.
    pub fn end(&self) -> usize {
        (self.start + self.len - 1) % self.n
    }

    pub fn contains(&self, i: usize) -> bool {
        (i + self.n - self.start) % self.n < self.len
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).map(move |k| (self.start + k) % self.n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunPartition {
    pub n: usize,
    pub b: usize,
    /// Maximal agreement runs of length at least `b - 1`, ordered by start.
    pub gaps: Vec<CircularInterval>,
    /// Maximal runs of the remaining positions, ordered by start.
    pub runs: Vec<CircularInterval>,
    /// Agreeing positions inside `runs`.
    pub agreement_excess: usize,
    /// No gap exists and the words differ; `runs` is the whole circle.
    pub full_circle: bool,
}

impl RunPartition {
    /// Number of runs.
    pub fn run_count(&self) -> usize {
        self.runs.len()
    }
}

fn check_width(b: usize, n: usize) -> Result<()> {
    if b == 0 || b > n {
        return Err(Error::WidthOutOfRange { b, n });
    }
    Ok(())
}

fn check_pair(x: &Word, y: &Word) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x.q() != y.q() {
        return Err(Error::AlphabetMismatch(x.q(), y.q()));
    }
    Ok(())
}

/// The circular `b`-windows of `x`, one per starting position.
pub fn pi_b(x: &Word, b: usize) -> Result<Vec<Vec<u32>>> {
    let n = x.len();
    check_width(b, n)?;
    let s = x.symbols();
    Ok((0..n).map(|j| (0..b).map(|t| s[(j + t) % n]).collect()).collect())
}

/// Number of windows that differ, counted window by window.
pub(crate) fn dist_windows(x: &[u32], y: &[u32], b: usize) -> usize {
    let n = x.len();
    (0..n)
        .filter(|&j| (0..b).any(|t| x[(j + t) % n] != y[(j + t) % n]))
        .count()
}

/// Number of windows that are not all zero, counted window by window.
pub(crate) fn weight_windows(x: &[u32], b: usize) -> usize {
    let n = x.len();
    (0..n)
        .filter(|&j| (0..b).any(|t| x[(j + t) % n] != 0))
        .count()
}

pub fn weight_b_oracle(x: &Word, b: usize) -> Result<usize> {
    check_width(b, x.len())?;
    Ok(weight_windows(x.symbols(), b))
}

pub fn dist_b_oracle(x: &Word, y: &Word, b: usize) -> Result<usize> {
    check_pair(x, y)?;
    check_width(b, x.len())?;
    Ok(dist_windows(x.symbols(), y.symbols(), b))
}

pub fn hamming_distance(x: &Word, y: &Word) -> Result<usize> {
    check_pair(x, y)?;
    Ok(hamming_slices(x.symbols(), y.symbols()))
}

pub(crate) fn hamming_slices(x: &[u32], y: &[u32]) -> usize {
    x.iter().zip(y).filter(|(a, b)| a != b).count()
}

pub(crate) fn partition_slices(x: &[u32], y: &[u32], b: usize) -> RunPartition {
    let n = x.len();
    let differ = |i: usize| x[i] != y[i];

    let Some(first) = (0..n).find(|&i| differ(i)) else {
        return RunPartition {
            n,
            b,
            gaps: vec![CircularInterval::new(0, n, n)],
            runs: Vec::new(),
            agreement_excess: 0,
            full_circle: false,
        };
    };

    // Walk once round the circle from a disagreement, so every maximal
    // agreement run is seen whole.
    let mut gaps = Vec::new();
    let mut k = 0;
    while k < n {
        let i = (first + k) % n;
        if differ(i) {
            k += 1;
            continue;
        }
        let start = k;
        while k < n && !differ((first + k) % n) {
            k += 1;
        }
        let len = k - start;
        if len + 1 >= b {
            gaps.push(CircularInterval::new((first + start) % n, len, n));
        }
    }

    let d_h = hamming_slices(x, y);
    if gaps.is_empty() {
        return RunPartition {
            n,
            b,
            gaps,
            runs: vec![CircularInterval::new(0, n, n)],
            agreement_excess: n - d_h,
            full_circle: true,
        };
    }

    gaps.sort();
    // The run after each gap extends up to the next gap.
    let runs_unsorted = gaps.iter().enumerate().map(|(g, gap)| {
        let next = gaps[(g + 1) % gaps.len()];
        let start = (gap.start + gap.len) % n;
        CircularInterval::new(start, (next.start + n - start) % n, n)
    });
    let mut runs: Vec<_> = runs_unsorted.collect();
    runs.sort();
    let covered: usize = runs.iter().map(|r| r.len).sum();

    RunPartition {
        n,
        b,
        gaps,
        runs,
        agreement_excess: covered - d_h,
        full_circle: false,
    }
}

pub fn run_partition(x: &Word, y: &Word, b: usize) -> Result<RunPartition> {
    check_pair(x, y)?;
    if b < 2 || b > x.len() {
        return Err(Error::WidthOutOfRange { b, n: x.len() });
    }
    Ok(partition_slices(x.symbols(), y.symbols(), b))
}

pub(crate) fn dist_formula_slices(x: &[u32], y: &[u32], b: usize) -> usize {
    let d_h = hamming_slices(x, y);
    if b == 1 || d_h == 0 {
        return d_h;
    }
    let part = partition_slices(x, y, b);
    if part.full_circle {
        return part.n;
    }
    d_h + part.agreement_excess + part.run_count() * (b - 1)
}

/// b-distance from the run structure; `b = 1` gives the Hamming distance.
pub fn dist_b_formula(x: &Word, y: &Word, b: usize) -> Result<usize> {
    check_pair(x, y)?;
    check_width(b, x.len())?;
    Ok(dist_formula_slices(x.symbols(), y.symbols(), b))
}

pub fn weight_b_formula(x: &Word, b: usize) -> Result<usize> {
    dist_b_formula(x, &Word::zero(x.q(), x.len()), b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub lower: usize,
    pub upper: usize,
    pub weight: usize,
    pub holds: bool,
}

/// Checks `w_H + b - 1 <= w_b <= b * w_H`, which needs `0 < w_H <= n - (b - 1)`.
pub fn check_bounds(x: &Word, b: usize) -> Result<BoundCheck> {
    let n = x.len();
    check_width(b, n)?;
    let w_h = x.hamming_weight();
    if w_h == 0 || w_h + b - 1 > n {
        return Err(Error::HypothesisViolated(format!(
            "need 0 < w_H <= n - (b - 1), got w_H = {w_h}, n = {n}, b = {b}"
        )));
    }
    let weight = weight_windows(x.symbols(), b);
    let lower = w_h + b - 1;
    let upper = b * w_h;
    Ok(BoundCheck { lower, upper, weight, holds: lower <= weight && weight <= upper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn word(s: &[u32]) -> Word {
        Word::from_symbols(s.to_vec())
    }

    fn example() -> Word {
        word(&[0, 0, 1, 3, 0, 5, 0, 0, 0, 2, 0, 7, 0, 0, 0])
    }

    /// Word with nonzero symbols at the given positions.
    fn support(n: usize, at: &[usize]) -> Word {
        let mut s = vec![0; n];
        for &i in at {
            s[i] = 1;
        }
        Word::new(2, s).unwrap()
    }

    #[test]
    fn read_vector() {
        let x = example();
        let pi = pi_b(&x, 4).unwrap();
        assert_eq!(pi.len(), 15);
        assert_eq!(pi[0], vec![0, 0, 1, 3]);
        assert_eq!(pi[1], vec![0, 1, 3, 0]);
        assert!(pi.contains(&vec![0, 0, 0, 1]));
        assert_eq!(pi[14], vec![0, 0, 0, 1]);

        let ones: Vec<Vec<u32>> = x.symbols().iter().map(|&s| vec![s]).collect();
        assert_eq!(pi_b(&x, 1).unwrap(), ones);

        let abc = word(&[1, 2, 3]);
        assert_eq!(
            pi_b(&abc, 3).unwrap(),
            vec![vec![1, 2, 3], vec![2, 3, 1], vec![3, 1, 2]]
        );
        assert_eq!(pi_b(&abc, 4), Err(Error::WidthOutOfRange { b: 4, n: 3 }));
        assert_eq!(pi_b(&abc, 0), Err(Error::WidthOutOfRange { b: 0, n: 3 }));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(weight_b_oracle(&example(), 4).unwrap(), 13);
        assert_eq!(weight_b_oracle(&Word::zero(3, 7), 3).unwrap(), 0);
        let x = Word::new(3, vec![2, 1, 0, 2, 1, 0, 2, 1, 0]).unwrap();
        assert_eq!(weight_b_oracle(&x, 3).unwrap(), 9);

        let x = word(&[1, 0, 2, 2, 1, 0]);
        let y = word(&[0, 1, 2, 2, 1, 2]);
        assert_eq!(dist_b_oracle(&x, &y, 1).unwrap(), hamming_distance(&x, &y).unwrap());
        assert_eq!(dist_b_oracle(&x, &x, 3).unwrap(), 0);

        let y = support(6, &[0, 3]);
        assert_eq!(dist_b_oracle(&Word::zero(2, 6), &y, 4).unwrap(), 6);
    }

    #[test]
    fn pair_errors() {
        let x = word(&[1, 0, 2]);
        let y = word(&[1, 0]);
        assert_eq!(dist_b_oracle(&x, &y, 2), Err(Error::LengthMismatch(3, 2)));
        let y = word(&[1, 0, 1]);
        assert_eq!(dist_b_formula(&x, &y, 2), Err(Error::AlphabetMismatch(3, 2)));
        assert!(run_partition(&x, &x, 1).is_err());
    }

    #[test]
    fn partition_of_example() {
        let x = example();
        let zero = Word::zero(x.q(), 15);
        let part = run_partition(&x, &zero, 4).unwrap();
        assert_eq!(
            part.gaps,
            vec![CircularInterval::new(6, 3, 15), CircularInterval::new(12, 5, 15)]
        );
        assert_eq!(
            part.runs,
            vec![CircularInterval::new(2, 4, 15), CircularInterval::new(9, 3, 15)]
        );
        assert_eq!(part.run_count(), 2);
        assert_eq!(part.agreement_excess, 2);
        assert!(!part.full_circle);
        let gap: Vec<usize> = part.gaps[1].indices().collect();
        assert_eq!(gap, vec![12, 13, 14, 0, 1]);
        assert!(part.gaps[1].contains(0) && !part.gaps[1].contains(2));
        assert_eq!(part.gaps[1].end(), 1);
    }

    #[test]
    fn partition_edges() {
        let x = word(&[2, 1, 0, 1]);
        let part = run_partition(&x, &x, 2).unwrap();
        assert!(part.runs.is_empty());
        assert_eq!(part.gaps, vec![CircularInterval::new(0, 4, 4)]);

        let y = support(6, &[0, 3]);
        let part = run_partition(&Word::zero(2, 6), &y, 4).unwrap();
        assert!(part.gaps.is_empty());
        assert!(part.full_circle);
        assert_eq!(part.run_count(), 1);
        assert_eq!(part.agreement_excess, 4);
    }

    #[test]
    fn formula_examples() {
        let x = example();
        assert_eq!(weight_b_formula(&x, 4).unwrap(), 13);
        assert_eq!(dist_b_formula(&x, &x, 4).unwrap(), 0);
        assert_eq!(weight_b_formula(&Word::zero(2, 8), 3).unwrap(), 0);

        let y = support(6, &[0, 3]);
        assert_eq!(weight_b_formula(&y, 4).unwrap(), 6);
        // Without the full-circle guard the count overshoots n.
        let part = run_partition(&y, &Word::zero(2, 6), 4).unwrap();
        assert_eq!(2 + part.agreement_excess + 3, 9);

        let sq = Word::new(3, vec![1, 1, 1, 0, 0, 0, 0, 0, 0]).unwrap();
        let part = run_partition(&sq, &Word::zero(3, 9), 3).unwrap();
        assert_eq!((part.run_count(), part.agreement_excess), (1, 0));
        assert_eq!(weight_b_formula(&sq, 3).unwrap(), 5);
        assert_eq!(weight_b_oracle(&sq, 3).unwrap(), 5);
    }

    #[test]
    fn single_run_wrapping_zero() {
        // run wraps through index 0
        let x = support(10, &[8, 9, 0, 2]);
        let part = run_partition(&x, &Word::zero(2, 10), 3).unwrap();
        assert_eq!(part.runs, vec![CircularInterval::new(8, 5, 10)]);
        assert_eq!(part.agreement_excess, 1);
        assert_eq!(weight_b_formula(&x, 3).unwrap(), weight_b_oracle(&x, 3).unwrap());
    }

    #[test]
    fn bounds_examples() {
        let c = check_bounds(&example(), 4).unwrap();
        assert_eq!((c.lower, c.weight, c.upper, c.holds), (8, 13, 20, true));

        for b in 1..=7 {
            let c = check_bounds(&support(7, &[3]), b).unwrap();
            assert_eq!((c.lower, c.weight, c.upper), (b, b, b));
        }

        let xm1 = Word::new(3, vec![2, 1, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        let c = check_bounds(&xm1, 2).unwrap();
        assert_eq!((c.lower, c.weight, c.upper), (3, 3, 4));

        assert!(matches!(check_bounds(&Word::zero(2, 5), 2), Err(Error::HypothesisViolated(_))));
        assert!(matches!(
            check_bounds(&support(5, &[0, 1, 2, 3]), 3),
            Err(Error::HypothesisViolated(_))
        ));
    }

    fn arb_pair() -> impl Strategy<Value = (Vec<u32>, Vec<u32>, usize)> {
        (2usize..24, 2u32..5).prop_flat_map(|(n, q)| {
            (
                proptest::collection::vec(0..q, n),
                proptest::collection::vec(prop_oneof![3 => Just(None), 1 => (0..q).prop_map(Some)], n),
                2..=n,
            )
                .prop_map(|(x, edits, b)| {
                    let y = x.iter().zip(&edits).map(|(&a, e)| e.unwrap_or(a)).collect();
                    (x, y, b)
                })
        })
    }

    proptest! {
        #[test]
        fn formula_matches_oracle((x, y, b) in arb_pair()) {
            prop_assert_eq!(dist_formula_slices(&x, &y, b), dist_windows(&x, &y, b));
        }

        #[test]
        fn partition_invariants((x, y, b) in arb_pair()) {
            let part = partition_slices(&x, &y, b);
            let n = x.len();
            let mut owner = vec![0u8; n];
            for g in &part.gaps {
                prop_assert!(g.len + 1 >= b);
                for i in g.indices() {
                    prop_assert_eq!(x[i], y[i]);
                    owner[i] += 1;
                }
            }
            for r in &part.runs {
                for i in r.indices() {
                    owner[i] += 1;
                }
                if !part.full_circle {
                    prop_assert!(x[r.start] != y[r.start]);
                    prop_assert!(x[r.end()] != y[r.end()]);
                }
            }
            prop_assert!(owner.iter().all(|&c| c == 1));
            let agree_in_runs = part.runs.iter()
                .flat_map(|r| r.indices().collect::<Vec<_>>())
                .filter(|&i| x[i] == y[i])
                .count();
            prop_assert_eq!(agree_in_runs, part.agreement_excess);
        }

        #[test]
        fn weight_monotone_in_b(x in proptest::collection::vec(0u32..3, 2..30)) {
            for b in 2..=x.len() {
                prop_assert!(weight_windows(&x, b) >= weight_windows(&x, b - 1));
            }
        }

        #[test]
        fn saturation(x in proptest::collection::vec(prop_oneof![2 => Just(0u32), 1 => Just(1u32)], 2..30)) {
            let n = x.len();
            // longest circular zero run
            let longest = if x.iter().all(|&s| s == 0) { n } else {
                let mut best = 0;
                let mut cur = 0;
                for k in 0..2 * n {
                    if x[k % n] == 0 { cur += 1; best = best.max(cur.min(n)); } else { cur = 0; }
                }
                best
            };
            for b in 1..=n {
                prop_assert_eq!(weight_windows(&x, b) == n, longest < b);
            }
        }
    }
}
