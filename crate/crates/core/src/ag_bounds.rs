//! Bounds on relative weights of nested one-point algebraic geometry codes,
//! expressed purely through the Weierstrass semigroup `H` and the set `H*`
//! of pole orders at which the evaluation code grows.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::fengrao::OrderedBasis;
use crate::field::{Elem, FiniteField};
use crate::linalg::{EchelonBasis, Matrix};
use crate::search::{self, SearchConfig};
use crate::semigroup::NumericalSemigroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tier {
    /// Minimum of `|H* ∩ ∪(γ_s + H)|`.
    ExactSet,
    /// Minimum of `n - γ_m + |∪_{s<m}(γ_s + H) ∖ (γ_m + H)|`.
    Shifted,
    /// `n - μ1 + Z(H, μ1 - μ2, m)`.
    Closed,
}

impl Tier {
    pub const ALL: [Tier; 3] = [Tier::ExactSet, Tier::Shifted, Tier::Closed];

    pub fn name(self) -> &'static str {
        match self {
            Tier::ExactSet => "exact-set",
            Tier::Shifted => "shifted",
            Tier::Closed => "closed",
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Tier::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                Error::Parse(format!(
                    "unknown tier `{s}` (expected exact-set, shifted or closed)"
                ))
            })
    }
}

/// One bound evaluation, serialisable as a report line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub mu1: i64,
    pub mu2: i64,
    pub m: usize,
    pub tier: String,
    pub value: i64,
    /// Pole orders attaining the minimum; empty for the closed tier.
    pub gamma_set: Vec<i64>,
}

/// `n`, `H` and `H*` of a one-point code family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleOrders {
    n: usize,
    semigroup: NumericalSemigroup,
    h_star: Vec<i64>,
}

impl PoleOrders {
    /// Checks `|H*| = n`, strict ascent and `H* ⊆ H`.
    pub fn new(n: usize, semigroup: NumericalSemigroup, h_star: Vec<i64>) -> Result<Self> {
        if h_star.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: h_star.len(),
            });
        }
        if h_star.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput("H* must be strictly ascending".into()));
        }
        if let Some(&bad) = h_star.iter().find(|&&g| !semigroup.contains(g)) {
            return Err(Error::InvalidInput(format!("{bad} is in H* but not in H")));
        }
        Ok(PoleOrders {
            n,
            semigroup,
            h_star,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    pub fn h_star(&self) -> &[i64] {
        &self.h_star
    }

    pub fn in_h_star(&self, x: i64) -> bool {
        self.h_star.binary_search(&x).is_ok()
    }

    /// If `α + β ∈ H*` with `α, β ∈ H` then `α, β ∈ H*`.
    pub fn is_divisor_closed(&self) -> bool {
        self.h_star.iter().all(|&d| {
            (0..=d).all(|a| {
                !(self.semigroup.contains(a) && self.semigroup.contains(d - a)) || self.in_h_star(a)
            })
        })
    }

    /// `dim C(μ) = #{γ ∈ H* : γ ≤ μ}`.
    pub fn dim(&self, mu: i64) -> usize {
        self.h_star.partition_point(|&g| g <= mu)
    }

    /// `max{γ ∈ H* : γ ≤ μ}`, or `-1` when no such element exists.
    pub fn normalize(&self, mu: i64) -> i64 {
        match self.dim(mu) {
            0 => -1,
            d => self.h_star[d - 1],
        }
    }

    /// `H* ∩ (μ2, μ1]`.
    pub fn candidates(&self, mu1: i64, mu2: i64) -> &[i64] {
        &self.h_star[self.dim(mu2)..self.dim(mu1)]
    }

    fn check_gammas(&self, gammas: &[i64]) -> Result<()> {
        if gammas.is_empty() {
            return Err(Error::InvalidInput("empty set of pole orders".into()));
        }
        if gammas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(
                "pole orders must be strictly ascending".into(),
            ));
        }
        if let Some(&bad) = gammas.iter().find(|&&g| !self.in_h_star(g)) {
            return Err(Error::InvalidInput(format!("{bad} is not in H*")));
        }
        Ok(())
    }

    fn tight(&self, gammas: &[i64]) -> usize {
        let h = &self.semigroup;
        self.h_star
            .iter()
            .filter(|&&x| gammas.iter().any(|&g| h.contains(x - g)))
            .count()
    }

    fn relaxed(&self, gammas: &[i64]) -> i64 {
        let h = &self.semigroup;
        let (&last, rest) = gammas.split_last().expect("nonempty");
        let escaped = (gammas[0]..last + h.conductor())
            .filter(|&x| !h.contains(x - last) && rest.iter().any(|&g| h.contains(x - g)))
            .count();
        self.n as i64 - last + escaped as i64
    }

    /// Support bounds for an ascending set of elements of `H*`:
    /// `tight = |H* ∩ ∪(γ_s + H)|` and
    /// `relaxed = n - γ_m + |∪_{s<m}(γ_s + H) ∖ (γ_m + H)|`.
    pub fn support_bound(&self, gammas: &[i64]) -> Result<(usize, i64)> {
        self.check_gammas(gammas)?;
        Ok((self.tight(gammas), self.relaxed(gammas)))
    }

    fn check_range(&self, mu1: i64, mu2: i64, m: usize) -> Result<&[i64]> {
        if mu2 >= mu1 {
            return Err(Error::Precondition(format!(
                "need μ2 < μ1, got μ1={mu1}, μ2={mu2}"
            )));
        }
        let cands = self.candidates(mu1, mu2);
        if cands.is_empty() {
            return Err(Error::Precondition(format!(
                "C({mu1}) = C({mu2}): the codes are equal"
            )));
        }
        if m < 1 || m > cands.len() {
            return Err(Error::range("m", m as i64, 1, cands.len() as i64));
        }
        Ok(cands)
    }

    /// Lower bound on `M_m(C(μ1), C(μ2))` in the requested tier.
    pub fn rghw_bound(
        &self,
        mu1: i64,
        mu2: i64,
        m: usize,
        tier: Tier,
        cfg: &SearchConfig,
    ) -> Result<BoundReport> {
        let cands = self.check_range(mu1, mu2, m)?;
        let (value, gamma_set) = match tier {
            Tier::ExactSet => {
                let sets: Vec<FixedBitSet> = cands
                    .iter()
                    .map(|&g| {
                        let mut b = FixedBitSet::with_capacity(self.n);
                        for (t, &x) in self.h_star.iter().enumerate() {
                            if self.semigroup.contains(x - g) {
                                b.insert(t);
                            }
                        }
                        b
                    })
                    .collect();
                cfg.check_combinations(cands.len(), m, "exact-set tier")?;
                let idx: Vec<usize> = (0..cands.len()).collect();
                let (v, pos) = search::min_union(cfg, &sets, &idx, m).expect("m ≤ candidates");
                (v as i64, pos.into_iter().map(|p| cands[p]).collect())
            }
            Tier::Shifted => {
                cfg.check_combinations(cands.len(), m, "shifted tier")?;
                let (v, pos) = search::min_over_subsets(cfg, cands.len(), m, |c| {
                    let g: Vec<i64> = c.iter().map(|&p| cands[p]).collect();
                    self.relaxed(&g)
                })
                .expect("m ≤ candidates");
                (v, pos.into_iter().map(|p| cands[p]).collect())
            }
            Tier::Closed => {
                let z = self.semigroup.z_function(mu1 - mu2, m as i64, cfg)?;
                (self.n as i64 - mu1 + z as i64, Vec::new())
            }
        };
        Ok(BoundReport {
            mu1,
            mu2,
            m,
            tier: tier.name().into(),
            value,
            gamma_set,
        })
    }

    /// Lower bound on `M_m(C(μ2)^⊥, C(μ1)^⊥)`: the minimum over `m`-subsets of
    /// `H* ∩ (μ2, μ1]` of `|H ∩ ∪(γ_s - H)|`.
    pub fn rghw_bound_dual(
        &self,
        mu1: i64,
        mu2: i64,
        m: usize,
        cfg: &SearchConfig,
    ) -> Result<BoundReport> {
        let cands = self.check_range(mu1, mu2, m)?;
        let top = *cands.last().unwrap() as usize;
        let sets: Vec<FixedBitSet> = cands
            .iter()
            .map(|&g| {
                let mut b = FixedBitSet::with_capacity(top + 1);
                for x in 0..=g {
                    if self.semigroup.contains(x) && self.semigroup.contains(g - x) {
                        b.insert(x as usize);
                    }
                }
                b
            })
            .collect();
        cfg.check_combinations(cands.len(), m, "dual bound")?;
        let idx: Vec<usize> = (0..cands.len()).collect();
        let (v, pos) = search::min_union(cfg, &sets, &idx, m).expect("m ≤ candidates");
        Ok(BoundReport {
            mu1,
            mu2,
            m,
            tier: "dual".into(),
            value: v as i64,
            gamma_set: pos.into_iter().map(|p| cands[p]).collect(),
        })
    }
}

/// A one-point code family with explicit evaluation vectors.
#[derive(Clone, Debug)]
pub struct OnePointCodeFamily {
    field: FiniteField,
    orders: PoleOrders,
    /// `ev(f_γ)` for `γ ∈ H*`, ascending.
    evaluations: Matrix,
    basis: OnceLock<OrderedBasis>,
}

impl OnePointCodeFamily {
    /// Builds `H*` by appending `ev(f_λ)` in ascending pole order and
    /// recording `λ` whenever the rank grows, until the rank reaches `n`.
    /// `functions` must be sorted by pole order and its pole orders must be
    /// exactly the elements of `H` up to the last one supplied.
    pub fn from_functions<I>(
        field: &FiniteField,
        n: usize,
        semigroup: NumericalSemigroup,
        functions: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Vec<Elem>)>,
    {
        let mut echelon = EchelonBasis::new(n);
        let mut h_star = Vec::with_capacity(n);
        let mut evaluations = Matrix::zeros(0, n);
        let mut last = -1;
        for (lambda, ev) in functions {
            if lambda <= last || !semigroup.contains(lambda) {
                return Err(Error::InvalidInput(format!(
                    "pole order {lambda} is out of order or not in the semigroup"
                )));
            }
            if ev.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    actual: ev.len(),
                });
            }
            last = lambda;
            if echelon.insert(field, &ev) {
                h_star.push(lambda);
                evaluations.push_row(&ev);
                if h_star.len() == n {
                    break;
                }
            }
        }
        if h_star.len() < n {
            return Err(Error::InvalidInput(format!(
                "evaluations exhausted at rank {} < n = {n}",
                h_star.len()
            )));
        }
        let orders = PoleOrders::new(n, semigroup, h_star)?;
        if !orders.is_divisor_closed() {
            return Err(Error::Internal("computed H* is not divisor closed".into()));
        }
        Ok(OnePointCodeFamily {
            field: field.clone(),
            orders,
            evaluations,
            basis: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn orders(&self) -> &PoleOrders {
        &self.orders
    }

    pub fn len(&self) -> usize {
        self.orders.n
    }

    pub fn is_empty(&self) -> bool {
        self.orders.n == 0
    }

    /// Evaluation vector of the function with pole order `γ ∈ H*`.
    pub fn evaluation(&self, gamma: i64) -> Option<&[Elem]> {
        let t = self.orders.h_star.binary_search(&gamma).ok()?;
        Some(self.evaluations.row(t))
    }

    /// `C(μ)`: the span of `ev(f_γ)` for `γ ∈ H*`, `γ ≤ μ`.
    pub fn code(&self, mu: i64) -> LinearCode {
        let d = self.orders.dim(mu);
        let rows = self.evaluations.to_rows();
        LinearCode::from_matrix(&self.field, Matrix::from_rows(self.orders.n, &rows[..d]))
    }

    /// The evaluation basis `b_s = ev(f_{γ_s})` used by the Feng-Rao machinery.
    pub fn basis(&self) -> &OrderedBasis {
        self.basis.get_or_init(|| {
            OrderedBasis::from_matrix(&self.field, "one-point", self.evaluations.clone())
                .expect("evaluations of H* are independent")
        })
    }
}
