//! Linear codes over small fields, coordinate restrictions and the
//! exhaustive relative weight oracles.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::linalg::Matrix;
use crate::search::{self, SearchConfig};

/// A sorted set of coordinate positions of a length-`n` word.
/// Positions are 0-based; [`fmt::Display`] prints them 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoordinateSet {
    n: usize,
    indices: Vec<usize>,
}

impl CoordinateSet {
    pub fn new(n: usize, mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(
                "coordinate set has repeated indices".into(),
            ));
        }
        if let Some(&last) = indices.last() {
            if last >= n {
                return Err(Error::range("coordinate", last as i64, 0, n as i64 - 1));
            }
        }
        Ok(CoordinateSet { n, indices })
    }

    /// Builds a set from 1-based positions.
    pub fn from_one_based(n: usize, indices: &[usize]) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::range("coordinate", 0, 1, n as i64));
        }
        Self::new(n, indices.iter().map(|i| i - 1).collect())
    }

    pub fn empty(n: usize) -> Self {
        CoordinateSet {
            n,
            indices: Vec::new(),
        }
    }

    pub fn full(n: usize) -> Self {
        CoordinateSet {
            n,
            indices: (0..n).collect(),
        }
    }

    /// The set whose members are the set bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        CoordinateSet {
            n,
            indices: (0..n).filter(|&i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn complement(&self) -> CoordinateSet {
        CoordinateSet {
            n: self.n,
            indices: complement(self.n, &self.indices),
        }
    }

    pub fn to_mask(&self) -> u64 {
        self.indices.iter().fold(0, |m, &i| m | 1 << i)
    }
}

impl fmt::Display for CoordinateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (t, i) in self.indices.iter().enumerate() {
            if t > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

/// Positions of `0..n` not in the sorted slice `set`.
pub(crate) fn complement(n: usize, set: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(n - set.len());
    let mut it = set.iter().peekable();
    for i in 0..n {
        if it.peek() == Some(&&i) {
            it.next();
        } else {
            out.push(i);
        }
    }
    out
}

/// A linear code given by a generator matrix in reduced row echelon form.
#[derive(Clone)]
pub struct LinearCode {
    field: FiniteField,
    n: usize,
    gen: Matrix,
    pivots: Vec<usize>,
    dual: OnceLock<Arc<Matrix>>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.n == other.n && self.gen == other.gen
    }
}

impl Eq for LinearCode {}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] code over {:?}", self.n, self.dim(), self.field)
    }
}

impl LinearCode {
    /// Code with a full-rank generator matrix. Rows must be independent.
    pub fn from_generator(field: &FiniteField, n: usize, rows: &[Vec<Elem>]) -> Result<Self> {
        let code = Self::span(field, n, rows)?;
        if code.dim() != rows.len() {
            return Err(Error::RankDeficient {
                rank: code.dim(),
                expected: rows.len(),
            });
        }
        Ok(code)
    }

    /// Row space of arbitrary (possibly dependent) vectors.
    pub fn span(field: &FiniteField, n: usize, rows: &[Vec<Elem>]) -> Result<Self> {
        for r in rows {
            if r.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    actual: r.len(),
                });
            }
            if let Some(&bad) = r.iter().find(|&&x| !field.contains(x as u32)) {
                return Err(Error::range(
                    "field element",
                    bad,
                    0,
                    field.order() as i64 - 1,
                ));
            }
        }
        Ok(Self::from_matrix(field, Matrix::from_rows(n, rows)))
    }

    pub(crate) fn from_matrix(field: &FiniteField, m: Matrix) -> Self {
        let (gen, pivots) = m.row_space_basis(field);
        LinearCode {
            field: field.clone(),
            n: gen.cols(),
            gen,
            pivots,
            dual: OnceLock::new(),
        }
    }

    pub fn zero(field: &FiniteField, n: usize) -> Self {
        Self::from_matrix(field, Matrix::zeros(0, n))
    }

    pub fn full(field: &FiniteField, n: usize) -> Self {
        Self::from_matrix(field, Matrix::identity(n))
    }

    /// Evaluation code of polynomials of degree `< k` at the first `n`
    /// field elements in encoding order.
    pub fn reed_solomon(field: &FiniteField, n: usize, k: usize) -> Result<Self> {
        let q = field.order() as usize;
        if n > q {
            return Err(Error::range("Reed-Solomon length", n as i64, 1, q as i64));
        }
        if k > n {
            return Err(Error::range(
                "Reed-Solomon dimension",
                k as i64,
                0,
                n as i64,
            ));
        }
        let rows: Vec<Vec<Elem>> = (0..k)
            .map(|d| (0..n).map(|x| field.pow(x as Elem, d as u64)).collect())
            .collect();
        Self::from_generator(field, n, &rows)
    }

    /// Uniformly random `k`-dimensional code (rejection sampling on rank).
    pub fn random<R: Rng + ?Sized>(field: &FiniteField, n: usize, k: usize, rng: &mut R) -> Self {
        assert!(k <= n);
        let q = field.order();
        loop {
            let rows: Vec<Vec<Elem>> = (0..k)
                .map(|_| (0..n).map(|_| rng.random_range(0..q) as Elem).collect())
                .collect();
            let code = Self::from_matrix(field, Matrix::from_rows(n, &rows));
            if code.dim() == k {
                return code;
            }
        }
    }

    /// Random `k`-dimensional subcode.
    pub fn random_subcode<R: Rng + ?Sized>(&self, k: usize, rng: &mut R) -> Self {
        assert!(k <= self.dim());
        let q = self.field.order();
        loop {
            let coeffs: Vec<Vec<Elem>> = (0..k)
                .map(|_| {
                    (0..self.dim())
                        .map(|_| rng.random_range(0..q) as Elem)
                        .collect()
                })
                .collect();
            let m = Matrix::from_rows(self.dim(), &coeffs).mul(&self.field, &self.gen);
            let code = Self::from_matrix(&self.field, m);
            if code.dim() == k {
                return code;
            }
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    /// Generator matrix in reduced row echelon form.
    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dual_generator(&self) -> &Matrix {
        self.dual
            .get_or_init(|| Arc::new(self.gen.nullspace(&self.field)))
    }

    pub fn dual(&self) -> LinearCode {
        let mut d = Self::from_matrix(&self.field, self.dual_generator().clone());
        d.dual = OnceLock::from(Arc::new(self.gen.clone()));
        d
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        if v.len() != self.n {
            return false;
        }
        let h = self.dual_generator();
        h.iter_rows()
            .all(|row| crate::linalg::dot(&self.field, row, v) == 0)
    }

    /// Whether every codeword of `self` lies in `other`.
    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.field == other.field
            && self.n == other.n
            && self.gen.iter_rows().all(|r| other.contains(r))
    }

    /// Codeword with message `msg` in the echelon basis.
    pub fn encode(&self, msg: &[Elem]) -> Result<Vec<Elem>> {
        if msg.len() != self.dim() {
            return Err(Error::LengthMismatch {
                expected: self.dim(),
                actual: msg.len(),
            });
        }
        Ok(self.gen.left_mul_vec(&self.field, msg))
    }

    /// All codewords, in the order of their message vectors read as base-q numbers
    /// (least significant coordinate first).
    pub fn codewords(&self, cfg: &SearchConfig) -> Result<Vec<Vec<Elem>>> {
        let q = self.field.order() as u64;
        let count = q
            .checked_pow(self.dim() as u32)
            .filter(|&c| c <= cfg.max_subspace_space);
        let Some(count) = count else {
            return Err(Error::LimitExceeded(format!(
                "enumerating {}^{} codewords",
                q,
                self.dim()
            )));
        };
        Ok((0..count)
            .map(|mut idx| {
                let msg: Vec<Elem> = (0..self.dim())
                    .map(|_| {
                        let d = idx % q;
                        idx /= q;
                        d as Elem
                    })
                    .collect();
                self.gen.left_mul_vec(&self.field, &msg)
            })
            .collect())
    }

    /// Rank of the generator restricted to `cols`.
    pub fn rank_on(&self, cols: &[usize]) -> usize {
        if self.dim() == 0 || cols.is_empty() {
            return 0;
        }
        self.gen.select_columns(cols).echelon_rank(&self.field)
    }

    /// `dim(C ∩ V_I)`: codewords vanishing outside `I`.
    pub fn shortened_dim(&self, i: &CoordinateSet) -> usize {
        self.dim() - self.rank_on(&complement(self.n, i.indices()))
    }

    /// Basis of `C ∩ V_I`.
    pub fn shortened(&self, i: &CoordinateSet) -> LinearCode {
        let outside = complement(self.n, i.indices());
        let coeffs = self
            .gen
            .select_columns(&outside)
            .transpose()
            .nullspace(&self.field);
        Self::from_matrix(&self.field, coeffs.mul(&self.field, &self.gen))
    }

    /// Union of the supports of all codewords.
    pub fn support(&self) -> CoordinateSet {
        support_of_rows(&self.gen)
    }

    /// Header `q n k` then one row per line.
    pub fn to_code_string(&self) -> String {
        let mut s = format!("{} {} {}\n", self.field.order(), self.n, self.dim());
        for row in self.gen.iter_rows() {
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the `q n k` format. The rows must be independent.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty code file".into()))?;
        let nums = parse_ints(header)?;
        let [q, n, k] = nums[..] else {
            return Err(Error::Parse(format!(
                "expected header `q n k`, got `{header}`"
            )));
        };
        let field = FiniteField::with_order(q as u32)?;
        let mut rows = Vec::with_capacity(k as usize);
        for _ in 0..k {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {k} generator rows")))?;
            let row = parse_ints(line)?;
            if row.len() as u64 != n {
                return Err(Error::Parse(format!(
                    "row `{line}` does not have {n} entries"
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= q) {
                return Err(Error::Parse(format!(
                    "entry {bad} is not an element of GF({q})"
                )));
            }
            rows.push(row.into_iter().map(|x| x as Elem).collect());
        }
        if lines.next().is_some() {
            return Err(Error::Parse(
                "trailing rows after the generator matrix".into(),
            ));
        }
        Self::from_generator(&field, n as usize, &rows)
    }
}

fn parse_ints(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("`{t}` is not a non-negative integer")))
        })
        .collect()
}

pub(crate) fn support_of_rows(m: &Matrix) -> CoordinateSet {
    let indices = (0..m.cols())
        .filter(|&j| m.iter_rows().any(|r| r[j] != 0))
        .collect();
    CoordinateSet {
        n: m.cols(),
        indices,
    }
}

/// Coordinatewise product.
pub fn star_product(f: &FiniteField, u: &[Elem], v: &[Elem]) -> Result<Vec<Elem>> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: u.len(),
            actual: v.len(),
        });
    }
    Ok(u.iter().zip(v).map(|(&a, &b)| f.mul(a, b)).collect())
}

fn check_pair(c1: &LinearCode, c2: &LinearCode) -> Result<()> {
    if c1.field != c2.field {
        return Err(Error::FieldMismatch {
            left: c1.field.order(),
            right: c2.field.order(),
        });
    }
    if c1.n != c2.n {
        return Err(Error::LengthMismatch {
            expected: c1.n,
            actual: c2.n,
        });
    }
    if !c2.is_subcode_of(c1) {
        return Err(Error::NotNested);
    }
    Ok(())
}

/// `dim(C1 ∩ V_J) - dim(C2 ∩ V_J)` where `J` is the complement of `outside`.
fn quotient_outside(c1: &LinearCode, c2: &LinearCode, outside: &[usize]) -> usize {
    (c1.dim() - c1.rank_on(outside)) - (c2.dim() - c2.rank_on(outside))
}

/// `dim((C1 ∩ V_I) / (C2 ∩ V_I))`.
pub fn shortened_dim_quotient(
    c1: &LinearCode,
    c2: &LinearCode,
    i: &CoordinateSet,
) -> Result<usize> {
    check_pair(c1, c2)?;
    if i.n != c1.n {
        return Err(Error::LengthMismatch {
            expected: c1.n,
            actual: i.n,
        });
    }
    Ok(quotient_outside(c1, c2, &complement(c1.n, i.indices())))
}

/// Exact `M_m(C1, C2)` with a minimising coordinate set.
pub fn rghw_oracle_with_support(
    c1: &LinearCode,
    c2: &LinearCode,
    m: usize,
    cfg: &SearchConfig,
) -> Result<(usize, CoordinateSet)> {
    check_pair(c1, c2)?;
    let ell = c1.dim() - c2.dim();
    if m < 1 || m > ell {
        return Err(Error::range("m", m as i64, 1, ell as i64));
    }
    let n = c1.n;
    if n > cfg.max_subset_length {
        return Err(Error::LimitExceeded(format!(
            "subset oracle on length {n} exceeds the cap of {}",
            cfg.max_subset_length
        )));
    }
    for size in m..=n {
        let hit = search::first_subset(cfg, n, size, |set| {
            quotient_outside(c1, c2, &complement(n, set)) >= m
        });
        if let Some(set) = hit {
            let set = CoordinateSet { n, indices: set };
            debug_assert_eq!(quotient_outside(c1, c2, &complement(n, set.indices())), m);
            return Ok((size, set));
        }
    }
    Err(Error::Internal("quotient dimension never reached m".into()))
}

/// Exact relative generalized Hamming weight `M_m(C1, C2)`.
pub fn rghw_oracle(
    c1: &LinearCode,
    c2: &LinearCode,
    m: usize,
    cfg: &SearchConfig,
) -> Result<usize> {
    rghw_oracle_with_support(c1, c2, m, cfg).map(|(v, _)| v)
}

/// Exact generalized Hamming weight `d_m(C)`.
pub fn ghw_oracle(c: &LinearCode, m: usize, cfg: &SearchConfig) -> Result<usize> {
    rghw_oracle(c, &LinearCode::zero(&c.field, c.n), m, cfg)
}

/// Exact relative dimension/length profile `K_j(C1, C2)` with a maximising set.
pub fn rdlp_with_support(
    c1: &LinearCode,
    c2: &LinearCode,
    j: usize,
    cfg: &SearchConfig,
) -> Result<(usize, CoordinateSet)> {
    check_pair(c1, c2)?;
    let n = c1.n;
    if j > n {
        return Err(Error::range("j", j as i64, 0, n as i64));
    }
    if n > cfg.max_subset_length {
        return Err(Error::LimitExceeded(format!(
            "subset oracle on length {n} exceeds the cap of {}",
            cfg.max_subset_length
        )));
    }
    let (neg, set) = search::min_over_subsets(cfg, n, j, |set| {
        -(quotient_outside(c1, c2, &complement(n, set)) as i64)
    })
    .expect("at least one subset of each size");
    Ok(((-neg) as usize, CoordinateSet { n, indices: set }))
}

pub fn rdlp(c1: &LinearCode, c2: &LinearCode, j: usize, cfg: &SearchConfig) -> Result<usize> {
    rdlp_with_support(c1, c2, j, cfg).map(|(v, _)| v)
}

/// `M_m(C1, C2)` as the smallest support of an `m`-dimensional subspace
/// `D ⊆ C1` with `D ∩ C2 = {0}`, by enumerating every such subspace.
pub fn rghw_subspace_oracle(
    c1: &LinearCode,
    c2: &LinearCode,
    m: usize,
    cfg: &SearchConfig,
) -> Result<usize> {
    check_pair(c1, c2)?;
    let ell = c1.dim() - c2.dim();
    if m < 1 || m > ell {
        return Err(Error::range("m", m as i64, 1, ell as i64));
    }
    let f = &c1.field;
    let q = f.order() as u64;
    let k = c1.dim();
    if q.checked_pow(k as u32)
        .is_none_or(|c| c > cfg.max_subspace_space)
    {
        return Err(Error::LimitExceeded(format!(
            "subspace enumeration over {q}^{k} codewords"
        )));
    }
    let mut best = usize::MAX;
    for pivots in search::Combinations::new(k, m) {
        // free entries of an m x k reduced echelon coefficient matrix
        let free: Vec<(usize, usize)> = (0..m)
            .flat_map(|r| {
                ((pivots[r] + 1)..k)
                    .filter(|c| !pivots.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let count = q.pow(free.len() as u32);
        for mut idx in 0..count {
            let mut coeff = Matrix::zeros(m, k);
            for (r, &p) in pivots.iter().enumerate() {
                coeff[(r, p)] = 1;
            }
            for &(r, c) in &free {
                coeff[(r, c)] = (idx % q) as Elem;
                idx /= q;
            }
            let d = coeff.mul(f, &c1.gen);
            if d.stack(&c2.gen).rank(f) != m + c2.dim() {
                continue;
            }
            best = best.min(support_of_rows(&d).len());
        }
    }
    Ok(best)
}

/// Number of `m`-dimensional subspaces of an `n`-dimensional space over GF(q).
pub fn gaussian_binomial(n: usize, m: usize, q: u64) -> u128 {
    if m > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..m {
        num *= (q as u128).pow((n - i) as u32) - 1;
        den *= (q as u128).pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Upper bound `n - k1 + m` (Singleton bound for relative weights).
pub fn singleton_bound(c1: &LinearCode, m: usize) -> usize {
    c1.n - c1.dim() + m
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u32) -> FiniteField {
        FiniteField::with_order(q).unwrap()
    }

    #[test]
    fn dual_of_full_space_is_zero() {
        let f = gf(3);
        let c = LinearCode::full(&f, 5);
        assert_eq!(c.dual().dim(), 0);
        assert_eq!(c.dual().dual(), c);
    }

    #[test]
    fn reed_solomon_dual_is_orthogonal() {
        let f = gf(8);
        let c = LinearCode::reed_solomon(&f, 7, 3).unwrap();
        let d = c.dual();
        assert_eq!(d.dim(), 4);
        for a in c.generator().iter_rows() {
            for b in d.generator().iter_rows() {
                assert_eq!(crate::linalg::dot(&f, a, b), 0);
            }
        }
        assert_eq!(d.dual(), c);
    }

    #[test]
    fn quotient_extremes() {
        let f = gf(4);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c1 = LinearCode::random(&f, 8, 4, &mut rng);
        let c2 = c1.random_subcode(2, &mut rng);
        assert_eq!(
            shortened_dim_quotient(&c1, &c2, &CoordinateSet::empty(8)).unwrap(),
            0
        );
        assert_eq!(
            shortened_dim_quotient(&c1, &c2, &CoordinateSet::full(8)).unwrap(),
            2
        );
        assert_eq!(
            shortened_dim_quotient(&c2, &c1, &CoordinateSet::full(8)),
            Err(Error::NotNested)
        );
    }

    #[test]
    fn quotient_matches_codeword_enumeration() {
        let f = gf(4);
        let cfg = SearchConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let c1 = LinearCode::random(&f, 8, 4, &mut rng);
        let c2 = c1.random_subcode(2, &mut rng);
        for mask in [0b0000_0111u64, 0b1011_0110, 0b1111_1110, 0b0101_0101] {
            let i = CoordinateSet::from_mask(8, mask);
            let inside = |c: &LinearCode| {
                c.codewords(&cfg)
                    .unwrap()
                    .iter()
                    .filter(|w| w.iter().enumerate().all(|(j, &x)| x == 0 || i.contains(j)))
                    .count()
            };
            let log4 = |x: usize| (x as f64).log(4.0).round() as usize;
            let expected = log4(inside(&c1)) - log4(inside(&c2));
            assert_eq!(shortened_dim_quotient(&c1, &c2, &i).unwrap(), expected);
        }
    }

    #[test]
    fn star_with_ones_and_zero() {
        let f = gf(9);
        let u = vec![3, 0, 8, 1];
        assert_eq!(star_product(&f, &u, &[1, 1, 1, 1]).unwrap(), u);
        assert_eq!(star_product(&f, &u, &[0; 4]).unwrap(), vec![0; 4]);
        assert!(star_product(&f, &u, &[1]).is_err());
    }

    #[test]
    fn star_span_dimension_is_support_size() {
        let f = gf(3);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let rows: Vec<Vec<Elem>> = (0..2)
                .map(|_| {
                    (0..7)
                        .map(|_| {
                            if rng.random_bool(0.4) {
                                rng.random_range(0..3)
                            } else {
                                0
                            }
                        })
                        .collect()
                })
                .collect();
            let d = LinearCode::span(&f, 7, &rows).unwrap();
            let mut products = Vec::new();
            for r in d.generator().iter_rows() {
                for i in 0..7 {
                    let mut e = vec![0; 7];
                    e[i] = 1;
                    products.push(star_product(&f, r, &e).unwrap());
                }
            }
            let rank = Matrix::from_rows(7, &products).rank(&f);
            assert_eq!(rank, d.support().len());
        }
    }

    #[test]
    fn reed_solomon_weights() {
        let f = gf(8);
        let cfg = SearchConfig::default();
        let c1 = LinearCode::reed_solomon(&f, 7, 3).unwrap();
        let c2 = LinearCode::reed_solomon(&f, 7, 1).unwrap();
        for m in 1..=2 {
            assert_eq!(rghw_oracle(&c1, &c2, m, &cfg).unwrap(), 4 + m);
        }
        for m in 1..=3 {
            assert_eq!(ghw_oracle(&c1, m, &cfg).unwrap(), 4 + m);
        }
    }

    #[test]
    fn rdlp_extremes_and_inverse_relation() {
        let f = gf(2);
        let cfg = SearchConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c1 = LinearCode::random(&f, 9, 5, &mut rng);
        let c2 = c1.random_subcode(2, &mut rng);
        assert_eq!(rdlp(&c1, &c2, 0, &cfg).unwrap(), 0);
        assert_eq!(rdlp(&c1, &c2, 9, &cfg).unwrap(), 3);
        let k: Vec<usize> = (0..=9).map(|j| rdlp(&c1, &c2, j, &cfg).unwrap()).collect();
        for m in 1..=3 {
            let from_profile = (0..=9).find(|&j| k[j] >= m).unwrap();
            assert_eq!(rghw_oracle(&c1, &c2, m, &cfg).unwrap(), from_profile);
        }
    }

    #[test]
    fn subspace_oracle_agrees() {
        let cfg = SearchConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for q in [2, 3, 4] {
            let f = gf(q);
            let c1 = LinearCode::random(&f, 7, 4, &mut rng);
            let c2 = c1.random_subcode(1, &mut rng);
            for m in 1..=3 {
                assert_eq!(
                    rghw_subspace_oracle(&c1, &c2, m, &cfg).unwrap(),
                    rghw_oracle(&c1, &c2, m, &cfg).unwrap()
                );
            }
        }
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(4, 2, 4), 357);
        assert_eq!(gaussian_binomial(3, 0, 5), 1);
    }

    #[test]
    fn code_file_round_trip() {
        let f = gf(4);
        let c = LinearCode::reed_solomon(&f, 4, 2).unwrap();
        let text = c.to_code_string();
        assert!(text.starts_with("4 4 2\n"));
        let back = LinearCode::parse(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_code_string(), text);
        assert!(LinearCode::parse("4 4 2\n1 0 0 0\n").is_err());
        assert!(LinearCode::parse("4 2 2\n1 1\n2 2\n").is_err());
        assert!(LinearCode::parse("4 2 1\n1 7\n").is_err());
    }

    #[test]
    fn coordinate_sets() {
        let s = CoordinateSet::from_one_based(6, &[5, 2, 3]).unwrap();
        assert_eq!(s.indices(), &[1, 2, 4]);
        assert_eq!(s.to_string(), "{2,3,5}");
        assert_eq!(s.complement().indices(), &[0, 3, 5]);
        assert_eq!(CoordinateSet::from_mask(6, s.to_mask()), s);
        assert!(CoordinateSet::new(3, vec![0, 0]).is_err());
        assert!(CoordinateSet::new(3, vec![3]).is_err());
    }

    #[test]
    fn caps_are_errors() {
        let f = gf(2);
        let c = LinearCode::full(&f, 30);
        let z = LinearCode::zero(&f, 30);
        assert!(matches!(
            rghw_oracle(&c, &z, 1, &SearchConfig::default()),
            Err(Error::LimitExceeded(_))
        ));
    }
}
