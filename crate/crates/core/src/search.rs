//! Subset enumeration shared by every oracle and bound minimisation.
//!
//! All searches run either sequentially or over rayon (feature `parallel`).
//! Both paths visit the same subsets and break ties by lexicographic order,
//! so results never depend on the strategy or on thread scheduling.

use fixedbitset::FixedBitSet;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    /// Falls back to sequential execution when built without `parallel`.
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

/// Caps for exhaustive searches. Exceeding one is an error, never a silent truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub strategy: Strategy,
    /// Longest code for coordinate-subset oracles.
    pub max_subset_length: usize,
    /// Largest `q^dim` for subspace enumeration.
    pub max_subspace_space: u64,
    /// Largest number of index subsets a bound minimisation may visit.
    pub max_combinations: u64,
    /// Longest code for full access-structure enumeration.
    pub max_access_length: usize,
    /// Largest number of shift patterns a brute-force Z evaluation may visit.
    pub max_shift_patterns: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            strategy: Strategy::default(),
            max_subset_length: 24,
            max_subspace_space: 1 << 20,
            max_combinations: binomial(40, 6),
            max_access_length: 16,
            max_shift_patterns: 1_000_000,
        }
    }
}

impl SearchConfig {
    pub fn sequential() -> Self {
        SearchConfig {
            strategy: Strategy::Sequential,
            ..Default::default()
        }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    #[cfg(feature = "parallel")]
    fn parallel(&self) -> bool {
        self.strategy == Strategy::Parallel
    }

    pub(crate) fn check_combinations(&self, n: usize, k: usize, what: &str) -> Result<()> {
        let count = binomial(n, k);
        if count > self.max_combinations {
            return Err(Error::LimitExceeded(format!(
                "{what}: C({n}, {k}) = {count} subsets exceeds the cap of {}",
                self.max_combinations
            )));
        }
        Ok(())
    }
}

const CHUNK: u64 = 512;

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Advances `c` to the next `k`-subset of `0..n` in lexicographic order.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) else {
        return false;
    };
    c[i] += 1;
    for j in i + 1..k {
        c[j] = c[j - 1] + 1;
    }
    true
}

/// The `rank`-th `k`-subset of `0..n` in lexicographic order.
pub fn unrank_combination(mut rank: u64, n: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0;
    for slot in 0..k {
        loop {
            let rest = binomial(n - next - 1, k - slot - 1);
            if rank < rest {
                out.push(next);
                next += 1;
                break;
            }
            rank -= rest;
            next += 1;
        }
    }
    out
}

/// Simple iterator over all `k`-subsets of `0..n` in lexicographic order.
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let mut c = out.clone();
        self.current = next_combination(&mut c, self.n).then_some(c);
        Some(out)
    }
}

fn scan_chunk<T>(
    n: usize,
    k: usize,
    start: u64,
    len: u64,
    mut visit: impl FnMut(&[usize]) -> Option<T>,
) -> Option<T> {
    let mut c = unrank_combination(start, n, k);
    for i in 0..len {
        if let Some(t) = visit(&c) {
            return Some(t);
        }
        if i + 1 < len && !next_combination(&mut c, n) {
            break;
        }
    }
    None
}

fn chunks(total: u64) -> u64 {
    total.div_ceil(CHUNK)
}

/// Lexicographically first `k`-subset of `0..n` satisfying `pred`.
pub fn first_subset<F>(cfg: &SearchConfig, n: usize, k: usize, pred: F) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> bool + Sync,
{
    let total = binomial(n, k);
    if total == 0 {
        return None;
    }
    let run = |chunk: u64| {
        let start = chunk * CHUNK;
        scan_chunk(n, k, start, CHUNK.min(total - start), |c| {
            pred(c).then(|| c.to_vec())
        })
    };
    #[cfg(feature = "parallel")]
    if cfg.parallel() {
        return (0..chunks(total)).into_par_iter().find_map_first(run);
    }
    let _ = cfg;
    (0..chunks(total)).find_map(run)
}

/// Minimum of `cost` over all `k`-subsets of `0..n`, with the
/// lexicographically first minimiser.
pub fn min_over_subsets<F>(
    cfg: &SearchConfig,
    n: usize,
    k: usize,
    cost: F,
) -> Option<(i64, Vec<usize>)>
where
    F: Fn(&[usize]) -> i64 + Sync,
{
    let total = binomial(n, k);
    if total == 0 {
        return None;
    }
    let run = |chunk: u64| {
        let start = chunk * CHUNK;
        let mut best: Option<(i64, Vec<usize>)> = None;
        scan_chunk(n, k, start, CHUNK.min(total - start), |c| {
            let v = cost(c);
            if best.as_ref().is_none_or(|(b, _)| v < *b) {
                best = Some((v, c.to_vec()));
            }
            None::<()>
        });
        best.map(|(v, c)| (v, chunk, c))
    };
    let pick = |a: (i64, u64, Vec<usize>), b: (i64, u64, Vec<usize>)| {
        if (b.0, b.1) < (a.0, a.1) {
            b
        } else {
            a
        }
    };
    #[cfg(feature = "parallel")]
    if cfg.parallel() {
        return (0..chunks(total))
            .into_par_iter()
            .filter_map(run)
            .reduce_with(pick)
            .map(|(v, _, c)| (v, c));
    }
    let _ = cfg;
    (0..chunks(total))
        .filter_map(run)
        .reduce(pick)
        .map(|(v, _, c)| (v, c))
}

/// Evaluates `f` on `0..count` and returns the results in order.
pub fn map_indices<T, F>(cfg: &SearchConfig, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if cfg.parallel() {
        return (0..count).into_par_iter().map(f).collect();
    }
    let _ = cfg;
    (0..count).map(f).collect()
}

/// Smallest `|S_{c_1} ∪ ... ∪ S_{c_m}|` over `m`-subsets of `candidates`,
/// by depth-first branch and bound on the running union size.
/// Returns the minimum and the lexicographically first minimising subset
/// (as positions into `candidates`).
pub fn min_union(
    cfg: &SearchConfig,
    sets: &[FixedBitSet],
    candidates: &[usize],
    m: usize,
) -> Option<(usize, Vec<usize>)> {
    let c = candidates.len();
    if m == 0 || m > c {
        return None;
    }
    let universe = sets.first().map_or(0, |s| s.len());

    fn dfs(
        sets: &[FixedBitSet],
        candidates: &[usize],
        m: usize,
        start: usize,
        union: &FixedBitSet,
        chosen: &mut Vec<usize>,
        best: &mut Option<(usize, Vec<usize>)>,
    ) {
        let size = union.count_ones(..);
        if best.as_ref().is_some_and(|(b, _)| size >= *b) {
            return;
        }
        if chosen.len() == m {
            *best = Some((size, chosen.clone()));
            return;
        }
        let remaining = m - chosen.len();
        for pos in start..=candidates.len() - remaining {
            let mut next = union.clone();
            next.union_with(&sets[candidates[pos]]);
            chosen.push(pos);
            dfs(sets, candidates, m, pos + 1, &next, chosen, best);
            chosen.pop();
        }
    }

    let branch = |first: usize| {
        let mut union = FixedBitSet::with_capacity(universe);
        union.union_with(&sets[candidates[first]]);
        let mut chosen = vec![first];
        let mut best = None;
        dfs(
            sets,
            candidates,
            m,
            first + 1,
            &union,
            &mut chosen,
            &mut best,
        );
        best
    };
    let pick = |a: (usize, Vec<usize>), b: (usize, Vec<usize>)| if b < a { b } else { a };
    #[cfg(feature = "parallel")]
    if cfg.parallel() {
        return (0..=c - m)
            .into_par_iter()
            .filter_map(branch)
            .reduce_with(pick);
    }
    let _ = cfg;
    (0..=c - m).filter_map(branch).reduce(pick)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(40, 6), 3_838_380);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(7, 0), 1);
    }

    #[test]
    fn unrank_matches_iteration_order() {
        for (n, k) in [(6, 3), (7, 0), (5, 5), (9, 2)] {
            for (rank, c) in Combinations::new(n, k).enumerate() {
                assert_eq!(unrank_combination(rank as u64, n, k), c);
            }
            assert_eq!(Combinations::new(n, k).count() as u64, binomial(n, k));
        }
    }

    #[test]
    fn strategies_agree() {
        let cost = |c: &[usize]| (c.iter().map(|&x| (x * 7919) % 13).sum::<usize>() as i64) % 5;
        for strategy in [Strategy::Sequential, Strategy::Parallel] {
            let cfg = SearchConfig::default().with_strategy(strategy);
            assert_eq!(
                min_over_subsets(&cfg, 14, 4, cost),
                min_over_subsets(&SearchConfig::sequential(), 14, 4, cost)
            );
            assert_eq!(
                first_subset(&cfg, 16, 5, |c| c[0] == 3 && c[4] == 12),
                Some(vec![3, 4, 5, 6, 12])
            );
        }
    }

    #[test]
    fn min_union_agrees_with_exhaustive_scan() {
        let mut sets = Vec::new();
        for i in 0..9usize {
            let mut s = FixedBitSet::with_capacity(20);
            for j in 0..20 {
                if (i * 31 + j * 17) % 7 < 2 || j == i {
                    s.insert(j);
                }
            }
            sets.push(s);
        }
        let candidates: Vec<usize> = (0..9).collect();
        for m in 1..=5 {
            let brute = Combinations::new(9, m)
                .map(|c| {
                    let mut u = FixedBitSet::with_capacity(20);
                    for &i in &c {
                        u.union_with(&sets[i]);
                    }
                    (u.count_ones(..), c)
                })
                .min()
                .unwrap();
            for strategy in [Strategy::Sequential, Strategy::Parallel] {
                let cfg = SearchConfig::default().with_strategy(strategy);
                assert_eq!(min_union(&cfg, &sets, &candidates, m), Some(brute.clone()));
            }
        }
    }
}
