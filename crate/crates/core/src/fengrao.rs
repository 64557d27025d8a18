//! Feng-Rao machinery over a fixed ordered basis of `F_q^n`: the leading
//! index function, one-way well-behaving pairs and the resulting lower
//! bounds on relative generalized Hamming weights.
//!
//! Basis indices and leading indices are 1-based; 0 is the leading index of
//! the zero vector.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::field::{Elem, FiniteField};
use crate::linalg::Matrix;
use crate::search::{self, SearchConfig};

#[derive(Clone, Debug)]
pub struct OrderedBasis {
    field: FiniteField,
    id: String,
    basis: Matrix,
    inverse: Matrix,
}

impl OrderedBasis {
    /// `rows[i]` is `b_{i+1}`. The rows must span `F_q^n`.
    pub fn new(field: &FiniteField, id: impl Into<String>, rows: &[Vec<Elem>]) -> Result<Self> {
        let n = rows.len();
        for r in rows {
            if r.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    actual: r.len(),
                });
            }
        }
        Self::from_matrix(field, id, Matrix::from_rows(n, rows))
    }

    pub fn from_matrix(field: &FiniteField, id: impl Into<String>, basis: Matrix) -> Result<Self> {
        if basis.rows() != basis.cols() {
            return Err(Error::LengthMismatch {
                expected: basis.cols(),
                actual: basis.rows(),
            });
        }
        let inverse = basis.inverse(field).ok_or(Error::RankDeficient {
            rank: basis.rank(field),
            expected: basis.rows(),
        })?;
        Ok(OrderedBasis {
            field: field.clone(),
            id: id.into(),
            basis,
            inverse,
        })
    }

    pub fn standard(field: &FiniteField, n: usize) -> Self {
        OrderedBasis {
            field: field.clone(),
            id: format!("standard-{n}"),
            basis: Matrix::identity(n),
            inverse: Matrix::identity(n),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.rows() == 0
    }

    /// `b_i` for `1 ≤ i ≤ n`.
    pub fn vector(&self, i: usize) -> &[Elem] {
        self.basis.row(i - 1)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.basis
    }

    /// Coordinates of `c` in the basis.
    pub fn coordinates(&self, c: &[Elem]) -> Result<Vec<Elem>> {
        if c.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: c.len(),
            });
        }
        Ok(self.inverse.left_mul_vec(&self.field, c))
    }

    /// Leading index of `c` in the basis.
    pub fn rho_bar(&self, c: &[Elem]) -> Result<usize> {
        let x = self.coordinates(c)?;
        Ok(x.iter().rposition(|&v| v != 0).map_or(0, |t| t + 1))
    }

    fn rho_unchecked(&self, c: &[Elem]) -> usize {
        let f = &self.field;
        let n = self.len();
        // leading coordinate first: stop at the first nonzero from the top
        for t in (0..n).rev() {
            let mut acc = 0;
            for (s, &cs) in c.iter().enumerate() {
                if cs != 0 {
                    acc = f.add(acc, f.mul(cs, self.inverse[(s, t)]));
                }
            }
            if acc != 0 {
                return t + 1;
            }
        }
        0
    }

    /// `ρ̄(C ∖ {0})`, ascending. Has exactly `dim C` elements.
    pub fn rho_bar_code(&self, code: &LinearCode) -> Result<Vec<usize>> {
        if code.len() != self.len() || code.field() != &self.field {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: code.len(),
            });
        }
        let n = self.len();
        let coords = code.generator().mul(&self.field, &self.inverse);
        let reversed: Vec<usize> = (0..n).rev().collect();
        let mut m = coords.select_columns(&reversed);
        let pivots = m.rref(&self.field);
        let mut out: Vec<usize> = pivots.into_iter().map(|p| n - p).collect();
        out.sort_unstable();
        Ok(out)
    }
}

/// Leading indices of all basis products with the derived one-way
/// well-behaving structure.
#[derive(Clone, Debug)]
pub struct OwbTable {
    n: usize,
    basis_id: String,
    rho: Vec<Vec<usize>>,
    owb: Vec<Vec<bool>>,
    lambda: Vec<Vec<usize>>,
    v: Vec<Vec<usize>>,
    lambda_bits: Vec<FixedBitSet>,
    v_bits: Vec<FixedBitSet>,
}

#[derive(Serialize)]
struct OwbExport<'a> {
    basis_id: &'a str,
    n: usize,
    lambda: &'a [Vec<usize>],
    v: &'a [Vec<usize>],
}

impl OwbTable {
    pub fn build(basis: &OrderedBasis, cfg: &SearchConfig) -> Self {
        let n = basis.len();
        let f = basis.field();
        let rho: Vec<Vec<usize>> = search::map_indices(cfg, n, |i| {
            let bi = basis.basis.row(i);
            (0..n)
                .map(|j| {
                    let prod: Vec<Elem> = bi
                        .iter()
                        .zip(basis.basis.row(j))
                        .map(|(&a, &b)| f.mul(a, b))
                        .collect();
                    basis.rho_unchecked(&prod)
                })
                .collect()
        });

        let mut owb = vec![vec![false; n]; n];
        for j in 0..n {
            let mut best = 0;
            for i in 0..n {
                if rho[i][j] > best {
                    owb[i][j] = true;
                    best = rho[i][j];
                }
            }
        }

        let mut lambda = vec![Vec::new(); n];
        let mut v = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                if owb[i][j] {
                    lambda[i].push(rho[i][j]);
                    v[rho[i][j] - 1].push(i + 1);
                }
            }
        }
        for s in lambda.iter_mut().chain(v.iter_mut()) {
            s.sort_unstable();
            s.dedup();
        }
        let bits = |sets: &[Vec<usize>]| {
            sets.iter()
                .map(|s| {
                    let mut b = FixedBitSet::with_capacity(n);
                    for &x in s {
                        b.insert(x - 1);
                    }
                    b
                })
                .collect()
        };
        OwbTable {
            n,
            basis_id: basis.id.clone(),
            lambda_bits: bits(&lambda),
            v_bits: bits(&v),
            rho,
            owb,
            lambda,
            v,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `ρ̄(b_i ∗ b_j)`.
    pub fn product_rho(&self, i: usize, j: usize) -> usize {
        self.rho[i - 1][j - 1]
    }

    pub fn is_owb(&self, i: usize, j: usize) -> bool {
        self.owb[i - 1][j - 1]
    }

    /// `Λ_i`, ascending.
    pub fn lambda(&self, i: usize) -> &[usize] {
        &self.lambda[i - 1]
    }

    /// `V_l`, ascending.
    pub fn v_set(&self, l: usize) -> &[usize] {
        &self.v[l - 1]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&OwbExport {
            basis_id: &self.basis_id,
            n: self.n,
            lambda: &self.lambda,
            v: &self.v,
        })
        .expect("serialisable")
    }

    /// `|∪_{i ∈ rho_set} Λ_i|`, a lower bound on the support of any subspace
    /// whose nonzero vectors have exactly these leading indices.
    pub fn support_lower_bound(&self, rho_set: &[usize]) -> Result<usize> {
        if rho_set.is_empty() {
            return Err(Error::InvalidInput("empty index set".into()));
        }
        let mut u = FixedBitSet::with_capacity(self.n);
        for &i in rho_set {
            if i < 1 || i > self.n {
                return Err(Error::range("basis index", i as i64, 1, self.n as i64));
            }
            u.union_with(&self.lambda_bits[i - 1]);
        }
        Ok(u.count_ones(..))
    }
}

/// A bound value with the index set attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexBound {
    pub value: usize,
    pub indices: Vec<usize>,
}

fn check_pair(
    basis: &OrderedBasis,
    c1: &LinearCode,
    c2: &LinearCode,
    m: usize,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if !c2.is_subcode_of(c1) {
        return Err(Error::NotNested);
    }
    let ell = c1.dim() - c2.dim();
    if m < 1 || m > ell {
        return Err(Error::range("m", m as i64, 1, ell as i64));
    }
    Ok((basis.rho_bar_code(c1)?, basis.rho_bar_code(c2)?))
}

fn minimise(
    sets: &[FixedBitSet],
    candidates: &[usize],
    m: usize,
    cfg: &SearchConfig,
) -> Result<IndexBound> {
    cfg.check_combinations(candidates.len(), m, "index-set minimisation")?;
    // sets are indexed by 0-based basis index
    let zero_based: Vec<usize> = candidates.iter().map(|i| i - 1).collect();
    let (value, pos) = search::min_union(cfg, sets, &zero_based, m)
        .ok_or_else(|| Error::Internal("fewer candidates than m".into()))?;
    Ok(IndexBound {
        value,
        indices: pos.into_iter().map(|p| candidates[p]).collect(),
    })
}

/// Lower bound on `M_m(C1, C2)` from the `Λ` sets, with the admissible
/// indices `ρ̄(C1) ∩ [u, n]`, `u = min(ρ̄(C1) ∖ ρ̄(C2))`.
pub fn rghw_bound_primary(
    table: &OwbTable,
    basis: &OrderedBasis,
    c1: &LinearCode,
    c2: &LinearCode,
    m: usize,
    cfg: &SearchConfig,
) -> Result<IndexBound> {
    let (r1, r2) = check_pair(basis, c1, c2, m)?;
    let u = *r1
        .iter()
        .find(|i| r2.binary_search(i).is_err())
        .expect("C2 is a proper subcode");
    let candidates: Vec<usize> = r1.into_iter().filter(|&i| i >= u).collect();
    minimise(&table.lambda_bits, &candidates, m, cfg)
}

/// Lower bound on `M_m(C2^⊥, C1^⊥)` from the `V` sets, with the admissible
/// indices `{1, …, u} ∖ ρ̄(C2)`, `u = max ρ̄(C1)`.
pub fn rghw_bound_dual(
    table: &OwbTable,
    basis: &OrderedBasis,
    c1: &LinearCode,
    c2: &LinearCode,
    m: usize,
    cfg: &SearchConfig,
) -> Result<IndexBound> {
    let (r1, r2) = check_pair(basis, c1, c2, m)?;
    let u = *r1.last().expect("C1 is nonzero");
    let candidates: Vec<usize> = (1..=u).filter(|i| r2.binary_search(i).is_err()).collect();
    minimise(&table.v_bits, &candidates, m, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::rghw_oracle;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u32) -> FiniteField {
        FiniteField::with_order(q).unwrap()
    }

    fn random_basis(f: &FiniteField, n: usize, rng: &mut ChaCha8Rng) -> OrderedBasis {
        let c = LinearCode::random(f, n, n, rng);
        let mut rows = c.generator().to_rows();
        // scramble the echelon basis so the order is not trivial
        for i in 0..n {
            for j in 0..n {
                if i != j && rng.random_bool(0.5) {
                    let a = rng.random_range(0..f.order()) as Elem;
                    let src = rows[j].clone();
                    crate::linalg::axpy(f, &mut rows[i], a, &src);
                }
            }
        }
        rows.reverse();
        OrderedBasis::new(f, "random", &rows).unwrap()
    }

    #[test]
    fn rho_bar_examples() {
        let f = gf(7);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let b = random_basis(&f, 6, &mut rng);
        assert_eq!(b.rho_bar(&[0; 6]).unwrap(), 0);
        for i in 1..=6 {
            assert_eq!(b.rho_bar(b.vector(i)).unwrap(), i);
        }
        let mut c = b.vector(2).to_vec();
        crate::linalg::axpy(&f, &mut c, 3, b.vector(5));
        assert_eq!(b.rho_bar(&c).unwrap(), 5);
        assert!(b.rho_bar(&[1, 2]).is_err());
    }

    #[test]
    fn standard_basis_lambda_is_diagonal() {
        let f = gf(4);
        let t = OwbTable::build(&OrderedBasis::standard(&f, 5), &SearchConfig::default());
        for i in 1..=5 {
            assert_eq!(t.lambda(i), &[i]);
            assert_eq!(t.v_set(i), &[i]);
        }
        assert_eq!(t.support_lower_bound(&[3]).unwrap(), 1);
        assert!(t.support_lower_bound(&[]).is_err());
    }

    #[test]
    fn owb_sets_are_consistent() {
        let f = gf(3);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let b = random_basis(&f, 7, &mut rng);
            let t = OwbTable::build(&b, &SearchConfig::default());
            for i in 1..=7 {
                for l in 1..=7 {
                    assert_eq!(t.lambda(i).contains(&l), t.v_set(l).contains(&i));
                    let witnessed = (1..=7).any(|j| t.is_owb(i, j) && t.product_rho(i, j) == l);
                    assert_eq!(witnessed, t.lambda(i).contains(&l));
                }
                for j in 1..=7 {
                    let owb = (1..i).all(|k| t.product_rho(k, j) < t.product_rho(i, j))
                        && t.product_rho(i, j) > 0;
                    assert_eq!(t.is_owb(i, j), owb);
                }
            }
        }
    }

    #[test]
    fn lambda_contains_i_when_first_vector_is_all_ones() {
        let f = gf(3);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..5 {
            let mut rows = random_basis(&f, 6, &mut rng).matrix().to_rows();
            rows[0] = vec![1; 6];
            let Ok(b) = OrderedBasis::new(&f, "ones-first", &rows) else {
                continue;
            };
            let t = OwbTable::build(&b, &SearchConfig::default());
            for i in 1..=6 {
                assert!(t.lambda(i).contains(&i));
            }
        }
    }

    #[test]
    fn lambda_can_be_empty_for_general_bases() {
        let f = gf(3);
        let rows = vec![
            vec![2, 1, 1, 0, 1, 0, 1],
            vec![1, 0, 2, 2, 0, 1, 1],
            vec![0, 0, 0, 0, 1, 2, 1],
            vec![0, 0, 0, 1, 0, 0, 0],
            vec![0, 0, 1, 0, 0, 0, 1],
            vec![1, 1, 0, 1, 0, 0, 2],
            vec![1, 0, 2, 1, 0, 0, 0],
        ];
        let b = OrderedBasis::new(&f, "counterexample", &rows).unwrap();
        let t = OwbTable::build(&b, &SearchConfig::default());
        assert!(t.lambda(3).is_empty());
        assert_eq!(t.support_lower_bound(&[3]).unwrap(), 0);
    }

    #[test]
    fn rho_bar_of_code_has_dim_elements() {
        let f = gf(4);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = random_basis(&f, 6, &mut rng);
        for k in 0..=6 {
            let c = LinearCode::random(&f, 6, k, &mut rng);
            let r = b.rho_bar_code(&c).unwrap();
            assert_eq!(r.len(), k);
            let words = c.codewords(&SearchConfig::default()).unwrap();
            let mut seen: Vec<usize> = words
                .iter()
                .filter(|w| w.iter().any(|&x| x != 0))
                .map(|w| b.rho_bar(w).unwrap())
                .collect();
            seen.sort_unstable();
            seen.dedup();
            assert_eq!(seen, r);
        }
    }

    #[test]
    fn support_bound_is_below_actual_support() {
        let f = gf(2);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let b = random_basis(&f, 8, &mut rng);
        let t = OwbTable::build(&b, &SearchConfig::default());
        for _ in 0..30 {
            let d = LinearCode::random(&f, 8, rng.random_range(1..4), &mut rng);
            let r = b.rho_bar_code(&d).unwrap();
            assert!(t.support_lower_bound(&r).unwrap() <= d.support().len());
        }
    }

    #[test]
    fn bounds_are_sound_on_random_pairs() {
        let cfg = SearchConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for q in [2, 3, 4] {
            let f = gf(q);
            for _ in 0..4 {
                let n = 7;
                let b = random_basis(&f, n, &mut rng);
                let t = OwbTable::build(&b, &cfg);
                let c1 = LinearCode::random(&f, n, 4, &mut rng);
                let c2 = c1.random_subcode(1, &mut rng);
                for m in 1..=3 {
                    let p = rghw_bound_primary(&t, &b, &c1, &c2, m, &cfg).unwrap();
                    assert!(p.value <= rghw_oracle(&c1, &c2, m, &cfg).unwrap());
                    let d = rghw_bound_dual(&t, &b, &c1, &c2, m, &cfg).unwrap();
                    assert!(d.value <= rghw_oracle(&c2.dual(), &c1.dual(), m, &cfg).unwrap());
                }
            }
        }
    }

    #[test]
    fn json_export_lists_sets() {
        let f = gf(2);
        let t = OwbTable::build(&OrderedBasis::standard(&f, 2), &SearchConfig::default());
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["basis_id"], "standard-2");
        assert_eq!(v["lambda"], serde_json::json!([[1], [2]]));
    }
}
