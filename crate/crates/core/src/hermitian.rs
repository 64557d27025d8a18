//! Codes from the Hermitian curve `x^{q+1} = y^q + y` over GF(q²).

use std::sync::OnceLock;

use serde::Serialize;

use crate::ag_bounds::{BoundReport, OnePointCodeFamily, PoleOrders, Tier};
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField, QuadraticExtension};
use crate::search::SearchConfig;
use crate::semigroup::NumericalSemigroup;

/// Alphabet roots `q` accepted by [`HermitianFamily::new`].
pub const SUPPORTED_Q: [u32; 8] = [2, 3, 4, 5, 7, 8, 9, 16];

/// `Σ_{s=0}^{m-2} (q - s)`.
pub fn g1(m: i64, q: i64) -> i64 {
    (0..=m - 2).map(|s| q - s).sum()
}

/// Writes `λ = iq + j(q+1)` with `0 ≤ j < q`, if `i ≥ 0` is possible.
pub fn decompose(lambda: i64, q: i64) -> Option<(i64, i64)> {
    if lambda < 0 {
        return None;
    }
    let j = lambda % q;
    let i = (lambda - j * (q + 1)) / q;
    (i >= 0).then_some((i, j))
}

pub struct HermitianFamily {
    q: u32,
    ext: QuadraticExtension,
    points: Vec<(Elem, Elem)>,
    semigroup: NumericalSemigroup,
    family: OnceLock<OnePointCodeFamily>,
}

impl HermitianFamily {
    /// Enumerates the affine points in lexicographic order of `(x, y)` encodings.
    /// The code family itself is built on first use.
    pub fn new(q: u32) -> Result<Self> {
        if !SUPPORTED_Q.contains(&q) {
            return Err(Error::InvalidInput(format!(
                "q = {q} is not supported (expected one of {SUPPORTED_Q:?})"
            )));
        }
        let ext = QuadraticExtension::over(q)?;
        let big = ext.big();
        let mut points = Vec::with_capacity((q * q * q) as usize);
        for x in big.elements() {
            let nx = ext.norm(x);
            for y in big.elements() {
                if ext.trace(y) == nx {
                    points.push((x, y));
                }
            }
        }
        if points.len() != (q * q * q) as usize {
            return Err(Error::Internal(format!(
                "found {} affine points, expected q³",
                points.len()
            )));
        }
        let semigroup = NumericalSemigroup::new(&[q as u64, q as u64 + 1])?;
        Ok(HermitianFamily {
            q,
            ext,
            points,
            semigroup,
            family: OnceLock::new(),
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn genus(&self) -> i64 {
        let q = self.q as i64;
        q * (q - 1) / 2
    }

    pub fn conductor(&self) -> i64 {
        let q = self.q as i64;
        q * (q - 1)
    }

    pub fn field(&self) -> &FiniteField {
        self.ext.big()
    }

    pub fn extension(&self) -> &QuadraticExtension {
        &self.ext
    }

    pub fn points(&self) -> &[(Elem, Elem)] {
        &self.points
    }

    pub fn semigroup(&self) -> &NumericalSemigroup {
        &self.semigroup
    }

    /// `n + c - 2 - μ`, the index of the dual code.
    pub fn dual_mu(&self, mu: i64) -> i64 {
        self.n() as i64 + self.conductor() - 2 - mu
    }

    /// Evaluation vector of `x^a y^b`.
    pub fn monomial(&self, a: u64, b: u64) -> Vec<Elem> {
        let f = self.field();
        self.points
            .iter()
            .map(|&(x, y)| f.mul(f.pow(x, a), f.pow(y, b)))
            .collect()
    }

    /// The one-point family with `H*` found by incremental rank.
    pub fn family(&self) -> &OnePointCodeFamily {
        self.family.get_or_init(|| {
            let q = self.q as i64;
            let limit = self.n() as i64 + 2 * self.genus() + q;
            let mut monomials: Vec<(i64, u64, u64)> = (0..q)
                .flat_map(|b| {
                    (0..=(limit - (q + 1) * b) / q)
                        .map(move |a| (q * a + (q + 1) * b, a as u64, b as u64))
                })
                .filter(|&(pole, _, _)| pole <= limit)
                .collect();
            monomials.sort_unstable();
            let functions = monomials
                .into_iter()
                .map(|(pole, a, b)| (pole, self.monomial(a, b)));
            OnePointCodeFamily::from_functions(
                self.field(),
                self.n(),
                self.semigroup.clone(),
                functions,
            )
            .expect("Hermitian monomials reach full rank")
        })
    }

    pub fn orders(&self) -> &PoleOrders {
        self.family().orders()
    }

    /// `C(μ)`; `μ < 0` gives the zero code.
    pub fn code(&self, mu: i64) -> LinearCode {
        self.family().code(mu)
    }

    /// Bounds on `M_m(C(μ1), C(μ2))` for `1 ≤ μ1 - μ2 ≤ q + 1`.
    pub fn rghw(&self, mu1: i64, mu2: i64, m: usize, cfg: &SearchConfig) -> Result<HermitianRghw> {
        rghw_hermitian(self.q as i64, self.orders(), mu1, mu2, m, cfg)
    }

    /// Witness functions for the upper bound matching the closed bound.
    pub fn witness_functions(&self, mu1: i64, m: usize) -> Result<WitnessSet> {
        witness_functions(self, mu1, m)
    }

    pub fn ghw_master(&self, mu: i64, m: usize) -> Result<GhwReport> {
        ghw_master(self.q as i64, self.orders(), mu, m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HermitianRghw {
    pub mu1: i64,
    pub mu2: i64,
    pub m: usize,
    /// `n - μ1 + Σ_{s=0}^{m-2}(q - s)`.
    pub closed: i64,
    pub tiers: Vec<BoundReport>,
    /// Largest of the tier values.
    pub best: i64,
    /// `c - 1 ≤ μ2` and `μ1 < n - c`: the closed value is then exact.
    pub equality: bool,
}

/// Bound evaluation against any pole-order data with `H = ⟨q, q+1⟩`, so that
/// fixture `H*` lists can be used in place of the computed one.
pub fn rghw_hermitian(
    q: i64,
    orders: &PoleOrders,
    mu1: i64,
    mu2: i64,
    m: usize,
    cfg: &SearchConfig,
) -> Result<HermitianRghw> {
    let diff = mu1 - mu2;
    if diff < 1 || diff > q + 1 {
        log::warn!("μ1 - μ2 = {diff} is outside [1, q+1]; use the general one-point bounds");
        return Err(Error::Precondition(format!(
            "need 1 ≤ μ1 - μ2 ≤ q + 1, got {diff}"
        )));
    }
    let n = orders.len() as i64;
    let c = q * (q - 1);
    let tiers = Tier::ALL
        .into_iter()
        .map(|t| orders.rghw_bound(mu1, mu2, m, t, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(HermitianRghw {
        mu1,
        mu2,
        m,
        closed: n - mu1 + g1(m as i64, q),
        best: tiers.iter().map(|t| t.value).max().unwrap(),
        tiers,
        equality: c - 1 <= mu2 && mu1 < n - c,
    })
}

/// A product `Π(X - x_r) Π(Y - y_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessFunction {
    pub x_roots: Vec<Elem>,
    pub y_roots: Vec<Elem>,
    pub pole_order: i64,
}

impl WitnessFunction {
    pub fn eval(&self, f: &FiniteField, x: Elem, y: Elem) -> Elem {
        let px = self
            .x_roots
            .iter()
            .fold(1, |acc, &r| f.mul(acc, f.sub(x, r)));
        self.y_roots
            .iter()
            .fold(px, |acc, &r| f.mul(acc, f.sub(y, r)))
    }

    /// Coefficients `c_{a,b}` of `X^a Y^b`, indexed `[a][b]`.
    pub fn coefficients(&self, f: &FiniteField) -> Vec<Vec<Elem>> {
        let poly = |roots: &[Elem]| {
            let mut p = vec![1];
            for &r in roots {
                let mut next = vec![0; p.len() + 1];
                for (d, &c) in p.iter().enumerate() {
                    next[d + 1] = f.add(next[d + 1], c);
                    next[d] = f.sub(next[d], f.mul(c, r));
                }
                p = next;
            }
            p
        };
        let px = poly(&self.x_roots);
        let py = poly(&self.y_roots);
        px.iter()
            .map(|&a| py.iter().map(|&b| f.mul(a, b)).collect())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessSet {
    pub mu1: i64,
    pub m: usize,
    pub functions: Vec<WitnessFunction>,
    pub common_zeros: usize,
    /// `μ1 - Σ_{s=0}^{m-2}(q - s)`.
    pub expected: i64,
}

fn witness_functions(h: &HermitianFamily, mu1: i64, m: usize) -> Result<WitnessSet> {
    let q = h.q as i64;
    let n = h.n() as i64;
    let c = h.conductor();
    let mi = m as i64;
    if m < 1 || mi > q + 1 {
        return Err(Error::range("m", mi, 1, q + 1));
    }
    if mu1 >= n - c || c > mu1 - (mi - 1) {
        return Err(Error::Precondition(format!(
            "witnesses need μ1 < n - c = {} and c - 1 < μ1 - (m - 1), got μ1 = {mu1}, m = {m}",
            n - c
        )));
    }
    let (i, j) = decompose(mu1, q)
        .ok_or_else(|| Error::Precondition(format!("{mu1} is not of the form iq + j(q+1)")))?;

    let ext = &h.ext;
    let f = h.field();
    let alphas: Vec<Elem> = f.elements().filter(|&e| ext.trace(e) == 1).collect();
    let betas: Vec<Elem> = f.elements().filter(|&e| ext.norm(e) != 1).collect();
    let gammas: Vec<Elem> = f.elements().filter(|&e| ext.norm(e) == 1).collect();
    let take = |set: &[Elem], k: i64| -> Result<Vec<Elem>> {
        set.get(..k as usize).map(<[Elem]>::to_vec).ok_or_else(|| {
            Error::Precondition(format!("needs {k} of only {} available roots", set.len()))
        })
    };
    let make = |xb: i64, xg: i64, ya: i64| -> Result<WitnessFunction> {
        let mut x_roots = take(&betas, xb)?;
        x_roots.extend(take(&gammas, xg)?);
        Ok(WitnessFunction {
            x_roots,
            y_roots: take(&alphas, ya)?,
            pole_order: q * (xb + xg) + (q + 1) * ya,
        })
    };

    let functions: Vec<WitnessFunction> = if mi <= j + 1 && i < q * q - q {
        (0..mi).map(|k| make(i, k, j - k)).collect::<Result<_>>()?
    } else if mi > j && mi <= j + q && i >= q - j {
        let base = i - q + j;
        (0..mi)
            .map(|k| {
                if k <= j {
                    make(base, q - j + k, j - k)
                } else {
                    make(base, k - j - 1, q - 1 - (k - j - 1))
                }
            })
            .collect::<Result<_>>()?
    } else if j == 0 && mi == q + 1 && i > q {
        // first regime with the representation μ1 = (i - q - 1) q + q (q + 1)
        (0..mi)
            .map(|k| make(i - q - 1, k, q - k))
            .collect::<Result<_>>()?
    } else {
        return Err(Error::Precondition(format!(
            "no witness construction for μ1 = {i}·{q} + {j}·{}, m = {m}",
            q + 1
        )));
    };

    for (k, fk) in functions.iter().enumerate() {
        if fk.pole_order != mu1 - k as i64 {
            return Err(Error::Internal(format!(
                "witness {k} has pole order {}",
                fk.pole_order
            )));
        }
    }
    let common_zeros = h
        .points
        .iter()
        .filter(|&&(x, y)| functions.iter().all(|fk| fk.eval(f, x, y) == 0))
        .count();
    let expected = mu1 - g1(mi, q);
    if common_zeros as i64 != expected {
        return Err(Error::Internal(format!(
            "witnesses for μ1 = {mu1}, m = {m} have {common_zeros} common zeros, expected {expected}"
        )));
    }
    Ok(WitnessSet {
        mu1,
        m,
        functions,
        common_zeros,
        expected,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GhwReport {
    pub mu: i64,
    pub m: usize,
    pub abundance: usize,
    /// `n - μ + ρ_m + α(μ)`.
    pub bound: i64,
    /// `n - μ + ρ_{m+α(μ)}`.
    pub bound_shifted: i64,
    pub mu_in_h_star: bool,
    /// `(i, j)` with `n - μ + ρ_{m+α} = iq + j(q+1)`, when that value lies in `H`.
    pub decomposition: Option<(i64, i64)>,
    pub small_i_or_zero_j: bool,
    pub equality: bool,
}

/// Lower bound on `d_m(C(μ))` and the conditions under which it is exact.
pub fn ghw_master(q: i64, orders: &PoleOrders, mu: i64, m: usize) -> Result<GhwReport> {
    let dim = orders.dim(mu);
    if m < 1 || m > dim {
        return Err(Error::range("m", m as i64, 1, dim as i64));
    }
    let h = orders.semigroup();
    let n = orders.len() as i64;
    let abundance = h.count_le(mu) - dim;
    let shifted = n - mu + h.element(m + abundance);
    let mu_in_h_star = orders.in_h_star(mu);
    let decomposition = h.contains(shifted).then(|| decompose(shifted, q)).flatten();
    let small_i_or_zero_j = decomposition.is_some_and(|(i, j)| i < q * q - q || j == 0);
    Ok(GhwReport {
        mu,
        m,
        abundance,
        bound: n - mu + h.element(m) + abundance as i64,
        bound_shifted: shifted,
        mu_in_h_star,
        decomposition,
        small_i_or_zero_j,
        equality: mu_in_h_star && decomposition.is_some() && small_i_or_zero_j,
    })
}

/// `Σ_{s=0}^{m-2}(q - s) - ρ_m` for each requested `m` in `[3, q + 1]`.
pub fn diff_table(q: u32, ms: impl IntoIterator<Item = usize>) -> Result<Vec<(usize, i64)>> {
    let h = NumericalSemigroup::new(&[q as u64, q as u64 + 1])?;
    ms.into_iter()
        .map(|m| {
            if m < 3 || m > q as usize + 1 {
                return Err(Error::range("m", m as i64, 3, q as i64 + 1));
            }
            Ok((m, g1(m as i64, q as i64) - h.element(m)))
        })
        .collect()
}
