//! Linear ramp secret sharing on a nested pair `C2 ⊊ C1`.
//!
//! A secret `s ∈ 𝔽^ℓ` is mapped to `ψ(s) ∈ L` where `C1 = L ⊕ C2`, and the
//! shares are the coordinates of `ψ(s) + c2` for a uniformly drawn `c2 ∈ C2`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ag_bounds::Tier;
use crate::codes::{rghw_oracle, shortened_dim_quotient, CoordinateSet, LinearCode};
use crate::error::{Error, Result};
use crate::fengrao::{rghw_bound_dual, rghw_bound_primary, OrderedBasis, OwbTable};
use crate::field::{Elem, FiniteField};
use crate::hermitian::{g1, HermitianFamily};
use crate::linalg::{EchelonBasis, Matrix};
use crate::search::SearchConfig;

/// How a profile entry was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Exhaustive search.
    ExactOracle,
    /// A closed formula known to be exact for these parameters.
    Exact,
    /// `t_m` entries are lower bounds and `r_m` entries upper bounds.
    Bound,
}

/// Privacy thresholds `t_1..t_ℓ` and reconstruction thresholds `r_1..r_ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeakageProfile {
    pub ell: usize,
    pub t: Vec<i64>,
    pub r: Vec<i64>,
    pub t_provenance: Vec<Provenance>,
    pub r_provenance: Vec<Provenance>,
}

impl LeakageProfile {
    fn uniform(t: Vec<i64>, r: Vec<i64>, p: Provenance) -> Self {
        let ell = t.len();
        LeakageProfile {
            ell,
            t,
            r,
            t_provenance: vec![p; ell],
            r_provenance: vec![p; ell],
        }
    }

    /// `t = t_1`.
    pub fn privacy(&self) -> i64 {
        self.t[0]
    }

    /// `r = r_ℓ`.
    pub fn reconstruction(&self) -> i64 {
        self.r[self.ell - 1]
    }

    pub fn is_exact(&self) -> bool {
        self.t_provenance
            .iter()
            .chain(&self.r_provenance)
            .all(|&p| p != Provenance::Bound)
    }

    /// Checks that both sequences increase strictly and `t_m < r_m`.
    pub fn validate(&self) -> Result<()> {
        let strictly = |v: &[i64]| v.windows(2).all(|w| w[0] < w[1]);
        if !strictly(&self.t) || !strictly(&self.r) {
            return Err(Error::Internal(format!(
                "profile is not strictly increasing: {self:?}"
            )));
        }
        if self.t.iter().zip(&self.r).any(|(t, r)| t >= r) {
            return Err(Error::Internal(format!("t_m ≥ r_m in {self:?}")));
        }
        Ok(())
    }
}

/// Result of [`RampScheme::reconstruct`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reconstruction {
    /// Number of `q`-ary symbols of information the observation carries.
    pub determined: usize,
    /// One secret consistent with the observation.
    pub particular: Vec<Elem>,
    /// Rows spanning the differences between consistent secrets.
    pub ambiguity: Vec<Vec<Elem>>,
    /// The secret, when it is uniquely determined.
    pub secret: Option<Vec<Elem>>,
}

/// Share sets grouped by mutual information for a fixed `m` and size `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AccessStructure {
    pub m: usize,
    pub d: usize,
    /// `A_m^d`: sets of size `d` revealing exactly `m` symbols.
    pub sets: Vec<CoordinateSet>,
    /// Members of `A_m^d` with no proper subset in `A_m`.
    pub minimal: Vec<CoordinateSet>,
    /// Members of `A_m^d` with no proper superset in `A_m`.
    pub maximal: Vec<CoordinateSet>,
}

#[derive(Clone, Debug)]
pub struct RampScheme {
    c1: LinearCode,
    c2: LinearCode,
    /// `ℓ × n` basis of the complement `L`.
    complement: Matrix,
    /// `[L; G2]`, a basis of `C1`.
    stacked: Matrix,
}

impl RampScheme {
    /// Uses the pivot completion of `C2` inside `C1` as the complement.
    pub fn new(c1: LinearCode, c2: LinearCode) -> Result<Self> {
        if !c2.is_subcode_of(&c1) {
            return Err(Error::NotNested);
        }
        if c1.dim() == c2.dim() {
            return Err(Error::Precondition(
                "C2 must be a proper subcode of C1".into(),
            ));
        }
        let f = c1.field().clone();
        let mut basis = EchelonBasis::new(c1.len());
        for row in c2.generator().iter_rows() {
            basis.insert(&f, row);
        }
        let rows: Vec<Vec<Elem>> = c1
            .generator()
            .iter_rows()
            .filter(|row| basis.insert(&f, row))
            .map(<[Elem]>::to_vec)
            .collect();
        Self::with_complement(c1, c2, &rows)
    }

    /// Uses the given rows as complement basis; they must span a complement
    /// of `C2` inside `C1`.
    pub fn with_complement(c1: LinearCode, c2: LinearCode, rows: &[Vec<Elem>]) -> Result<Self> {
        if !c2.is_subcode_of(&c1) {
            return Err(Error::NotNested);
        }
        let f = c1.field();
        let n = c1.len();
        let ell = c1.dim() - c2.dim();
        if rows.len() != ell {
            return Err(Error::InvalidInput(format!(
                "complement needs {ell} rows, got {}",
                rows.len()
            )));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                actual: bad.len(),
            });
        }
        if rows.iter().any(|r| !c1.contains(r)) {
            return Err(Error::InvalidInput("complement rows must lie in C1".into()));
        }
        let complement = Matrix::from_rows(n, rows);
        let stacked = complement.stack(c2.generator());
        if stacked.rank(f) != c1.dim() {
            return Err(Error::InvalidInput(
                "complement rows meet C2 or are dependent".into(),
            ));
        }
        Ok(RampScheme {
            c1,
            c2,
            complement,
            stacked,
        })
    }

    pub fn c1(&self) -> &LinearCode {
        &self.c1
    }

    pub fn c2(&self) -> &LinearCode {
        &self.c2
    }

    pub fn field(&self) -> &FiniteField {
        self.c1.field()
    }

    pub fn len(&self) -> usize {
        self.c1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c1.is_empty()
    }

    /// Secret length `ℓ = k1 - k2`.
    pub fn ell(&self) -> usize {
        self.complement.rows()
    }

    pub fn complement(&self) -> &Matrix {
        &self.complement
    }

    /// `ψ(s)`.
    pub fn embed(&self, secret: &[Elem]) -> Result<Vec<Elem>> {
        if secret.len() != self.ell() {
            return Err(Error::LengthMismatch {
                expected: self.ell(),
                actual: secret.len(),
            });
        }
        let f = self.field();
        if let Some(&bad) = secret.iter().find(|&&s| !f.contains(s as u32)) {
            return Err(Error::InvalidInput(format!(
                "{bad} is not an element of GF({})",
                f.order()
            )));
        }
        Ok(self.complement.left_mul_vec(f, secret))
    }

    /// `ψ(s) + G2ᵀ r` for explicit randomness `r ∈ 𝔽^{k2}`.
    pub fn share_with(&self, secret: &[Elem], randomness: &[Elem]) -> Result<Vec<Elem>> {
        if randomness.len() != self.c2.dim() {
            return Err(Error::LengthMismatch {
                expected: self.c2.dim(),
                actual: randomness.len(),
            });
        }
        let mut msg = secret.to_vec();
        msg.extend_from_slice(randomness);
        self.embed(secret)?;
        Ok(self.stacked.left_mul_vec(self.field(), &msg))
    }

    /// Shares of `secret` with `c2` drawn uniformly from `C2` by a generator seeded with `seed`.
    pub fn share(&self, secret: &[Elem], seed: u64) -> Result<Vec<Elem>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = self.field().order();
        let randomness: Vec<Elem> = (0..self.c2.dim())
            .map(|_| rng.random_range(0..q) as Elem)
            .collect();
        self.share_with(secret, &randomness)
    }

    /// Solves `x ∈ C1`, `x_i = observed_i` and describes the consistent secrets.
    pub fn reconstruct(&self, observed: &[(usize, Elem)]) -> Result<Reconstruction> {
        let n = self.len();
        let f = self.field();
        let mut idx: Vec<usize> = observed.iter().map(|o| o.0).collect();
        let set = CoordinateSet::new(n, idx.clone())?;
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(
                "observed indices must be distinct".into(),
            ));
        }
        if let Some(&(_, bad)) = observed.iter().find(|o| !f.contains(o.1 as u32)) {
            return Err(Error::InvalidInput(format!(
                "{bad} is not an element of GF({})",
                f.order()
            )));
        }
        let ell = self.ell();
        let cols: Vec<usize> = observed.iter().map(|o| o.0).collect();
        let values: Vec<Elem> = observed.iter().map(|o| o.1).collect();
        let (x, kernel) = self
            .stacked
            .select_columns(&cols)
            .solve_left(f, &values)
            .ok_or(Error::InconsistentObservations)?;
        let (ambiguity, _) = Matrix::from_rows(
            ell,
            &kernel
                .iter_rows()
                .map(|r| r[..ell].to_vec())
                .collect::<Vec<_>>(),
        )
        .row_space_basis(f);
        let determined = ell - ambiguity.rows();
        let mi = self.mutual_information(&set)?;
        if mi != determined {
            return Err(Error::Internal(format!(
                "reconstruction determines {determined} symbols but the mutual information is {mi}"
            )));
        }
        let particular = x[..ell].to_vec();
        Ok(Reconstruction {
            determined,
            secret: (determined == ell).then(|| particular.clone()),
            particular,
            ambiguity: ambiguity.to_rows(),
        })
    }

    /// `I(S; X_I)` in `q`-ary symbols, computed both as
    /// `ℓ - dim((C1 ∩ V_Ī)/(C2 ∩ V_Ī))` and as `dim((C2^⊥ ∩ V_I)/(C1^⊥ ∩ V_I))`.
    pub fn mutual_information(&self, i: &CoordinateSet) -> Result<usize> {
        let (a, b) = self.mutual_information_both(i)?;
        if a != b {
            return Err(Error::Internal(format!(
                "mutual information formulas disagree on {i}: {a} vs {b}"
            )));
        }
        Ok(a)
    }

    /// The two mutual information formulas, unchecked.
    pub fn mutual_information_both(&self, i: &CoordinateSet) -> Result<(usize, usize)> {
        let primal = self.ell() - shortened_dim_quotient(&self.c1, &self.c2, &i.complement())?;
        let dual = shortened_dim_quotient(&self.c2.dual(), &self.c1.dual(), i)?;
        Ok((primal, dual))
    }

    /// `t_m = M_m(C2^⊥, C1^⊥) - 1` and `r_m = n - M_{ℓ-m+1}(C1, C2) + 1` by exhaustive search.
    pub fn profile_oracle(&self, cfg: &SearchConfig) -> Result<LeakageProfile> {
        let (d1, d2) = (self.c2.dual(), self.c1.dual());
        let ell = self.ell();
        let n = self.len() as i64;
        let mut t = Vec::with_capacity(ell);
        let mut r = Vec::with_capacity(ell);
        for m in 1..=ell {
            t.push(rghw_oracle(&d1, &d2, m, cfg)? as i64 - 1);
            r.push(n - rghw_oracle(&self.c1, &self.c2, ell - m + 1, cfg)? as i64 + 1);
        }
        Ok(LeakageProfile::uniform(t, r, Provenance::ExactOracle))
    }

    /// Profile from the order bounds on the given basis; each RGHW is bounded
    /// by the larger of the primary bound and the dual bound of the dual pair.
    pub fn profile_bound(
        &self,
        basis: &OrderedBasis,
        cfg: &SearchConfig,
    ) -> Result<LeakageProfile> {
        let table = OwbTable::build(basis, cfg);
        let (d1, d2) = (self.c2.dual(), self.c1.dual());
        let ell = self.ell();
        let n = self.len() as i64;
        let mut t = Vec::with_capacity(ell);
        let mut r = Vec::with_capacity(ell);
        for m in 1..=ell {
            let mt = rghw_bound_primary(&table, basis, &d1, &d2, m, cfg)?
                .value
                .max(rghw_bound_dual(&table, basis, &self.c1, &self.c2, m, cfg)?.value);
            let k = ell - m + 1;
            let mr = rghw_bound_primary(&table, basis, &self.c1, &self.c2, k, cfg)?
                .value
                .max(rghw_bound_dual(&table, basis, &d1, &d2, k, cfg)?.value);
            t.push(mt as i64 - 1);
            r.push(n - mr as i64 + 1);
        }
        Ok(LeakageProfile::uniform(t, r, Provenance::Bound))
    }

    /// `I(S; X_I)` for every subset, indexed by bit mask.
    pub fn mutual_information_table(&self, cfg: &SearchConfig) -> Result<Vec<usize>> {
        let n = self.len();
        if n > cfg.max_access_length {
            return Err(Error::LimitExceeded(format!(
                "enumerating 2^{n} share sets exceeds the cap of 2^{}",
                cfg.max_access_length
            )));
        }
        let masks = 1usize << n;
        let values = crate::search::map_indices(cfg, masks, |mask| {
            self.mutual_information(&CoordinateSet::from_mask(n, mask as u64))
        });
        values.into_iter().collect()
    }

    /// `t_m = min{#I : MI(I) ≥ m} - 1` and `r_m = max{#I : MI(I) < m} + 1` over all subsets.
    pub fn profile_exhaustive(&self, cfg: &SearchConfig) -> Result<LeakageProfile> {
        let table = self.mutual_information_table(cfg)?;
        let ell = self.ell();
        let mut t = vec![i64::MAX; ell];
        let mut r = vec![0i64; ell];
        for (mask, &mi) in table.iter().enumerate() {
            let size = mask.count_ones() as i64;
            for m in 1..=ell {
                if mi >= m {
                    t[m - 1] = t[m - 1].min(size - 1);
                } else {
                    r[m - 1] = r[m - 1].max(size + 1);
                }
            }
        }
        Ok(LeakageProfile::uniform(t, r, Provenance::ExactOracle))
    }

    /// `A_m^d` with its minimal and maximal members, for `0 ≤ m ≤ ℓ`.
    pub fn access_structure(
        &self,
        m: usize,
        d: usize,
        cfg: &SearchConfig,
    ) -> Result<AccessStructure> {
        let n = self.len();
        if m > self.ell() {
            return Err(Error::range("m", m as i64, 0, self.ell() as i64));
        }
        if d > n {
            return Err(Error::range("d", d as i64, 0, n as i64));
        }
        let table = self.mutual_information_table(cfg)?;
        let mut out = AccessStructure {
            m,
            d,
            sets: Vec::new(),
            minimal: Vec::new(),
            maximal: Vec::new(),
        };
        for mask in 0..table.len() {
            if mask.count_ones() as usize != d || table[mask] != m {
                continue;
            }
            // MI is monotone, so one-step neighbours decide extremality
            let bits = (0..n).map(|b| 1usize << b);
            let minimal = bits
                .clone()
                .filter(|b| mask & b != 0)
                .all(|b| table[mask ^ b] < m);
            let maximal = bits.filter(|b| mask & b == 0).all(|b| table[mask | b] > m);
            let set = CoordinateSet::from_mask(n, mask as u64);
            if minimal {
                out.minimal.push(set.clone());
            }
            if maximal {
                out.maximal.push(set.clone());
            }
            out.sets.push(set);
        }
        Ok(out)
    }
}

/// `(M_m(C1, C2), M_m(C2^⊥, C1^⊥)) = (n - k1 + m, k2 + m)` for nested MDS codes.
pub fn mds_rghw(n: usize, k1: usize, k2: usize, m: usize) -> (usize, usize) {
    (n - k1 + m, k2 + m)
}

/// The nested Reed-Solomon scheme `RS(n, k1) / RS(n, k2)` with its profile
/// `t_m = k2 + m - 1`, `r_m = k2 + m`.
pub fn mds_scheme(q: u32, n: usize, k1: usize, k2: usize) -> Result<(RampScheme, LeakageProfile)> {
    let f = FiniteField::with_order(q)?;
    if n > q as usize {
        return Err(Error::Precondition(format!(
            "Reed-Solomon length {n} exceeds q = {q}"
        )));
    }
    if !(k2 < k1 && k1 <= n) {
        return Err(Error::Precondition(format!(
            "need k2 < k1 ≤ n, got k1={k1}, k2={k2}, n={n}"
        )));
    }
    let c1 = LinearCode::reed_solomon(&f, n, k1)?;
    let c2 = LinearCode::reed_solomon(&f, n, k2)?;
    let scheme = RampScheme::new(c1, c2)?;
    let t = (1..=k1 - k2).map(|m| (k2 + m) as i64 - 1).collect();
    let r = (1..=k1 - k2).map(|m| (k2 + m) as i64).collect();
    Ok((scheme, LeakageProfile::uniform(t, r, Provenance::Exact)))
}

/// The scheme `C(μ2)^⊥ / C(μ1)^⊥ = C(n+c-2-μ2) / C(n+c-2-μ1)` on the Hermitian curve.
pub fn hermitian_scheme(h: &HermitianFamily, mu1: i64, mu2: i64) -> Result<RampScheme> {
    let (mu1, mu2) = (h.orders().normalize(mu1), h.orders().normalize(mu2));
    RampScheme::new(h.code(h.dual_mu(mu2)), h.code(h.dual_mu(mu1)))
}

/// One bound entry with the tier that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProfileBound {
    pub m: usize,
    pub t: i64,
    pub t_tier: Tier,
    pub r: i64,
    pub r_tier: Tier,
}

/// Bounds for [`hermitian_scheme`]: `t_m + 1 ≥` the best tier bound on
/// `M_m(C(μ1), C(μ2))` and, by self-duality, `n - r_m + 1 ≥` the best tier
/// bound on `M_{ℓ-m+1}(C(n+c-2-μ2), C(n+c-2-μ1))`.
pub fn hermitian_profile_bound(
    h: &HermitianFamily,
    mu1: i64,
    mu2: i64,
    cfg: &SearchConfig,
) -> Result<(LeakageProfile, Vec<ProfileBound>)> {
    let orders = h.orders();
    let (a1, a2) = (orders.normalize(mu1), orders.normalize(mu2));
    let (b1, b2) = (
        orders.normalize(h.dual_mu(a2)),
        orders.normalize(h.dual_mu(a1)),
    );
    if a1 <= a2 {
        return Err(Error::Precondition(format!(
            "C({mu1}) and C({mu2}) coincide"
        )));
    }
    let ell = orders.dim(a1) - orders.dim(a2);
    let best = |x1: i64, x2: i64, m: usize| -> Result<(i64, Tier)> {
        let mut out: Option<(i64, Tier)> = None;
        for tier in Tier::ALL {
            let v = match orders.rghw_bound(x1, x2, m, tier, cfg) {
                Ok(b) => b.value,
                Err(Error::LimitExceeded(msg)) => {
                    log::debug!("skipping {tier} tier: {msg}");
                    continue;
                }
                Err(e) => return Err(e),
            };
            if out.is_none_or(|(w, _)| v > w) {
                out = Some((v, tier));
            }
        }
        out.ok_or_else(|| {
            Error::LimitExceeded(format!("no tier fits the caps for ({x1}, {x2}, {m})"))
        })
    };
    let n = h.n() as i64;
    let mut entries = Vec::with_capacity(ell);
    for m in 1..=ell {
        let (mt, t_tier) = best(a1, a2, m)?;
        let (mr, r_tier) = best(b1, b2, ell - m + 1)?;
        entries.push(ProfileBound {
            m,
            t: mt - 1,
            t_tier,
            r: n - mr + 1,
            r_tier,
        });
    }
    let profile = LeakageProfile::uniform(
        entries.iter().map(|e| e.t).collect(),
        entries.iter().map(|e| e.r).collect(),
        Provenance::Bound,
    );
    Ok((profile, entries))
}

/// `c + μ̃ - 1 - Σ_{s=0}^{μ̃-m-1}(q - s)`.
pub fn g2(m: i64, mu_tilde: i64, q: i64) -> i64 {
    q * (q - 1) + mu_tilde - 1 - (0..mu_tilde - m).map(|s| q - s).sum::<i64>()
}

/// Profile of the Hermitian scheme with `C1 = C(μ)`, `C2 = C(μ - μ̃)` from the closed formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedProfile {
    pub q: i64,
    pub n: i64,
    pub mu: i64,
    pub mu_tilde: i64,
    pub g1: Vec<i64>,
    pub g2: Vec<i64>,
    pub profile: LeakageProfile,
    /// `2c - 2 + μ̃ < μ < n - c`.
    pub exact: bool,
}

pub fn hermitian_profile_closed(q: i64, mu: i64, mu_tilde: i64) -> Result<ClosedProfile> {
    if q < 2 {
        return Err(Error::range("q", q, 2, i64::MAX));
    }
    let n = q * q * q;
    let c = q * (q - 1);
    if !(1..=q + 1).contains(&mu_tilde) {
        return Err(Error::Precondition(format!(
            "need 1 ≤ μ̃ ≤ q + 1, got {mu_tilde}"
        )));
    }
    if !(c - 1 + mu_tilde <= mu && mu < n) {
        return Err(Error::Precondition(format!(
            "need {} ≤ μ ≤ {}, got {mu}",
            c - 1 + mu_tilde,
            n - 1
        )));
    }
    let g1s: Vec<i64> = (1..=mu_tilde).map(|m| g1(m, q)).collect();
    let g2s: Vec<i64> = (1..=mu_tilde).map(|m| g2(m, mu_tilde, q)).collect();
    let exact = 2 * c - 2 + mu_tilde < mu && mu < n - c;
    let p = if exact {
        Provenance::Exact
    } else {
        Provenance::Bound
    };
    let profile = LeakageProfile::uniform(
        g1s.iter().map(|g| n - mu + g - 1).collect(),
        g2s.iter().map(|g| n - mu + g).collect(),
        p,
    );
    Ok(ClosedProfile {
        q,
        n,
        mu,
        mu_tilde,
        g1: g1s,
        g2: g2s,
        profile,
        exact,
    })
}

/// `r_m - (t_m + 1)` from the closed formulas.
pub fn closed_gap(q: i64, mu_tilde: i64, m: i64) -> i64 {
    g2(m, mu_tilde, q) - g1(m, q)
}

/// `c + μ̃ - 1 - (μ̃ - 1)(2q - μ̃ + 2)/2`, the largest [`closed_gap`] over `m`.
pub fn worst_case_gap(q: i64, mu_tilde: i64) -> i64 {
    q * (q - 1) + mu_tilde - 1 - (mu_tilde - 1) * (2 * q - mu_tilde + 2) / 2
}
