//! Numerical semigroups and the shift-count function `Z`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::search::{self, binomial, SearchConfig};

/// A numerical semigroup `⟨a_1, …, a_r⟩ ⊆ ℕ` with finite complement.
#[derive(Clone)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    conductor: i64,
    /// `member[x]` for `0 ≤ x < conductor`.
    member: Vec<bool>,
    gaps: Vec<i64>,
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.gaps == other.gaps
    }
}

impl Eq for NumericalSemigroup {}

impl fmt::Debug for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "⟩")
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl NumericalSemigroup {
    pub fn new(generators: &[u64]) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidSemigroup("no generators".into()));
        }
        if generators.contains(&0) {
            return Err(Error::InvalidSemigroup(
                "generators must be positive".into(),
            ));
        }
        if generators.iter().fold(0, |g, &a| gcd(g, a)) != 1 {
            return Err(Error::InvalidSemigroup(format!(
                "generators {generators:?} have gcd > 1, so the complement is infinite"
            )));
        }
        let smallest = *generators.iter().min().unwrap() as usize;
        let mut member = vec![true];
        let mut run = 1;
        while run < smallest {
            let x = member.len();
            let is = generators
                .iter()
                .any(|&a| (a as usize) <= x && member[x - a as usize]);
            member.push(is);
            run = if is { run + 1 } else { 0 };
        }
        let conductor = (member.len() - run) as i64;
        member.truncate(conductor as usize);
        let gaps = (0..conductor).filter(|&x| !member[x as usize]).collect();
        Ok(NumericalSemigroup {
            generators: generators.to_vec(),
            conductor,
            member,
            gaps,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Smallest `c` with `c + ℕ ⊆ Γ`.
    pub fn conductor(&self) -> i64 {
        self.conductor
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    pub fn gaps(&self) -> &[i64] {
        &self.gaps
    }

    pub fn contains(&self, x: i64) -> bool {
        x >= 0 && (x >= self.conductor || self.member[x as usize])
    }

    /// Number of elements `≤ x`.
    pub fn count_le(&self, x: i64) -> usize {
        if x < 0 {
            return 0;
        }
        let below = (x + 1).min(self.conductor);
        let gaps_below = self.gaps.partition_point(|&g| g < below);
        (x + 1) as usize - gaps_below
    }

    /// The `k`-th smallest element `ρ_k`, `k ≥ 1` (so `ρ_1 = 0`).
    pub fn element(&self, k: usize) -> i64 {
        assert!(k >= 1);
        let below = self.conductor as usize - self.gaps.len();
        if k <= below {
            self.member
                .iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .nth(k - 1)
                .unwrap()
                .0 as i64
        } else {
            self.conductor + (k - 1 - below) as i64
        }
    }

    /// Elements `≤ limit`, ascending.
    pub fn elements_up_to(&self, limit: i64) -> Vec<i64> {
        (0..=limit).filter(|&x| self.contains(x)).collect()
    }

    /// Maximal runs of consecutive gaps as `(first gap, length)`.
    pub fn gap_runs(&self) -> Vec<(i64, usize)> {
        let mut runs: Vec<(i64, usize)> = Vec::new();
        for &g in &self.gaps {
            match runs.last_mut() {
                Some((start, len)) if *start + *len as i64 == g => *len += 1,
                _ => runs.push((g, 1)),
            }
        }
        runs
    }

    /// `|{α ∈ ∪_s (i_s + Γ) : α ∉ Γ}|` for negative shifts `i_s`.
    pub fn shifted_difference_count(&self, shifts: &[i64]) -> Result<usize> {
        if let Some(&bad) = shifts.iter().find(|&&s| s >= 0) {
            return Err(Error::InvalidInput(format!("shift {bad} is not negative")));
        }
        let mut sorted = shifts.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("shifts must be distinct".into()));
        }
        Ok(self.escaped(&sorted))
    }

    fn escaped(&self, shifts: &[i64]) -> usize {
        let Some(&lo) = shifts.iter().min() else {
            return 0;
        };
        (lo..self.conductor)
            .filter(|&a| !self.contains(a) && shifts.iter().any(|&s| self.contains(a - s)))
            .count()
    }

    /// `Z(Γ, μ, m)` by minimising over all `(m-1)`-subsets of `{-μ+1, …, -1}`,
    /// returning the minimum and the lexicographically first minimising shifts.
    pub fn z_function_with_shifts(
        &self,
        mu: i64,
        m: i64,
        cfg: &SearchConfig,
    ) -> Result<(usize, Vec<i64>)> {
        if mu < 1 {
            return Err(Error::range("mu", mu, 1, i64::MAX));
        }
        if m < 1 || m > mu {
            return Err(Error::range("m", m, 1, mu));
        }
        if m == 1 {
            return Ok((0, Vec::new()));
        }
        let slots = (mu - 1) as usize;
        let k = (m - 1) as usize;
        let count = binomial(slots, k);
        if count > cfg.max_shift_patterns {
            return Err(Error::LimitExceeded(format!(
                "Z(μ={mu}, m={m}) needs C({slots}, {k}) = {count} shift patterns, cap is {}",
                cfg.max_shift_patterns
            )));
        }
        let to_shifts = |c: &[usize]| c.iter().map(|&t| t as i64 - (mu - 1)).collect::<Vec<i64>>();
        let (v, c) =
            search::min_over_subsets(cfg, slots, k, |c| self.escaped(&to_shifts(c)) as i64)
                .expect("μ−1 ≥ m−1 slots");
        Ok((v as usize, to_shifts(&c)))
    }

    pub fn z_function(&self, mu: i64, m: i64, cfg: &SearchConfig) -> Result<usize> {
        self.z_function_with_shifts(mu, m, cfg).map(|(v, _)| v)
    }
}

impl FromStr for NumericalSemigroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let gens = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("`{t}` is not a positive integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        NumericalSemigroup::new(&gens)
    }
}

/// `a(m-1) - (m-2)(m-1)/2`, the value of `Z(⟨a, a+1⟩, μ, m)` for `1 ≤ m ≤ μ ≤ a+1`.
pub fn z_closed_form(a: i64, mu: i64, m: i64) -> Result<i64> {
    if a < 2 {
        return Err(Error::Precondition(format!("a = {a} must be at least 2")));
    }
    if !(1 <= m && m <= mu && mu <= a + 1) {
        return Err(Error::Precondition(format!(
            "closed form needs 1 ≤ m ≤ μ ≤ a+1, got a={a}, μ={mu}, m={m}"
        )));
    }
    Ok(a * (m - 1) - (m - 2) * (m - 1) / 2)
}
