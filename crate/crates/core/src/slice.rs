//! Matrix polynomials `X = I + Σ X^(s) t^(-s)` and the slice ideal generators.

use std::collections::HashMap;
use std::sync::Arc;

use crate::polynomial::{PolyError, Polynomial, VarTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SliceError {
    #[error("invalid size n={n}, k={k} (need n >= 2, k >= 1)")]
    InvalidSize { n: usize, k: usize },
    #[error("matrix size {n} exceeds the expansion limit {limit}")]
    SizeBudgetExceeded { n: usize, limit: usize },
    #[error("minor size {l} out of range 1..={n}")]
    MinorSizeOutOfRange { n: usize, l: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Largest matrix size accepted by the determinant expansion.
pub const MAX_EXPANSION_SIZE: usize = 6;

/// Polynomial in `t^-1` with polynomial coefficients; `coeffs[r]` multiplies `t^-r`.
#[derive(Clone, Debug)]
pub struct TPoly {
    coeffs: Vec<Polynomial>,
    bound: usize,
}

impl TPoly {
    pub fn zero(table: &Arc<VarTable>, bound: usize) -> Self {
        TPoly { coeffs: vec![Polynomial::zero(table); bound + 1], bound }
    }

    pub fn constant(p: Polynomial, bound: usize) -> Self {
        let mut t = TPoly::zero(p.table(), bound);
        t.coeffs[0] = p;
        t
    }

    /// Builds from coefficients; the bound is raised to fit if needed.
    pub fn from_coeffs(coeffs: Vec<Polynomial>, bound: usize) -> Self {
        assert!(!coeffs.is_empty(), "TPoly needs at least one coefficient");
        let table = coeffs[0].table().clone();
        let bound = bound.max(coeffs.len() - 1);
        let mut out = TPoly::zero(&table, bound);
        for (r, c) in coeffs.into_iter().enumerate() {
            out.coeffs[r] = c;
        }
        out
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.coeffs[0].table()
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Coefficient of `t^-r`; zero beyond the bound.
    pub fn coeff(&self, r: usize) -> Polynomial {
        self.coeffs.get(r).cloned().unwrap_or_else(|| Polynomial::zero(self.table()))
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    /// Actual degree in `t^-1`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let bound = self.bound.max(other.bound);
        let coeffs = (0..=bound).map(|r| &self.coeff(r) + &other.coeff(r)).collect();
        TPoly { coeffs, bound }
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        let bound = self.bound.max(other.bound);
        let coeffs = (0..=bound).map(|r| &self.coeff(r) - &other.coeff(r)).collect();
        TPoly { coeffs, bound }
    }

    /// Exact product; bounds add.
    pub fn mul(&self, other: &TPoly) -> TPoly {
        let bound = self.bound + other.bound;
        let mut out = TPoly::zero(self.table(), bound);
        for (a, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (b, q) in other.coeffs.iter().enumerate() {
                if !q.is_zero() {
                    out.coeffs[a + b] = &out.coeffs[a + b] + &(p * q);
                }
            }
        }
        out
    }

    pub fn neg(&self) -> TPoly {
        TPoly { coeffs: self.coeffs.iter().map(|c| -c).collect(), bound: self.bound }
    }
}

impl PartialEq for TPoly {
    /// Trailing zero coefficients are ignored.
    fn eq(&self, other: &Self) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|r| self.coeff(r) == other.coeff(r))
    }
}

/// Square matrix of [`TPoly`] entries sharing one table and degree bound.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixT {
    n: usize,
    bound: usize,
    entries: Vec<TPoly>,
}

/// Variable name `prefix[i][j][s]`, indices 1-based.
pub fn coefficient_name(prefix: &str, i: usize, j: usize, s: usize) -> String {
    format!("{prefix}[{i}][{j}][{s}]")
}

/// Table of `prefix[i][j][s]` for `1 ≤ i,j ≤ n`, `1 ≤ s ≤ k`, ordered by row,
/// then column, then `s`.
pub fn coefficient_table(prefix: &str, n: usize, k: usize) -> Arc<VarTable> {
    let mut names = Vec::with_capacity(k * n * n);
    for i in 1..=n {
        for j in 1..=n {
            for s in 1..=k {
                names.push(coefficient_name(prefix, i, j, s));
            }
        }
    }
    VarTable::shared(names).expect("generated names are unique")
}

/// Index of `prefix[i][j][s]` in [`coefficient_table`]; indices 1-based.
pub fn coefficient_index(n: usize, k: usize, i: usize, j: usize, s: usize) -> usize {
    ((i - 1) * n + (j - 1)) * k + (s - 1)
}

impl MatrixT {
    pub fn identity(table: &Arc<VarTable>, n: usize, bound: usize) -> Self {
        let entries = (0..n * n)
            .map(|idx| {
                if idx / n == idx % n {
                    TPoly::constant(Polynomial::one(table), bound)
                } else {
                    TPoly::zero(table, bound)
                }
            })
            .collect();
        MatrixT { n, bound, entries }
    }

    /// `I + Σ_{s=1..k} (prefix[i][j][s]) t^-s` over `table`, which must contain
    /// those names.
    pub fn generic(table: &Arc<VarTable>, prefix: &str, n: usize, k: usize) -> Result<Self, SliceError> {
        let mut m = MatrixT::identity(table, n, k);
        for i in 0..n {
            for j in 0..n {
                for s in 1..=k {
                    let v = Polynomial::var_named(table, &coefficient_name(prefix, i + 1, j + 1, s))?;
                    m.entries[i * n + j].coeffs[s] = &m.entries[i * n + j].coeffs[s] + &v;
                }
            }
        }
        Ok(m)
    }

    pub fn from_entries(n: usize, entries: Vec<TPoly>) -> Self {
        assert_eq!(entries.len(), n * n, "need n*n entries");
        let bound = entries.iter().map(TPoly::bound).max().unwrap_or(0);
        MatrixT { n, bound, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.entries[0].table()
    }

    /// Entry at 0-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &TPoly {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &MatrixT) -> MatrixT {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = TPoly::zero(self.table(), self.bound + other.bound);
                for l in 0..n {
                    acc = acc.add(&self.entry(i, l).mul(other.entry(l, j)));
                }
                entries.push(acc);
            }
        }
        MatrixT { n, bound: self.bound + other.bound, entries }
    }

    /// Coefficient matrix of `t^-s` as polynomials.
    pub fn coefficient_matrix(&self, s: usize) -> Vec<Vec<Polynomial>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.entry(i, j).coeff(s)).collect()).collect()
    }

    /// Minor on 0-based sorted `rows` and `cols`, expanded along rows with a
    /// memo over used column sets.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> TPoly {
        assert_eq!(rows.len(), cols.len(), "minor must be square");
        let l = rows.len();
        if l == 0 {
            return TPoly::constant(Polynomial::one(self.table()), 0);
        }
        // memo[mask] = signed sum over injective maps of the first popcount(mask) rows onto mask
        let mut memo: HashMap<u32, TPoly> = HashMap::new();
        memo.insert(0, TPoly::constant(Polynomial::one(self.table()), 0));
        for r in 0..l {
            let mut next: HashMap<u32, TPoly> = HashMap::new();
            let mut masks: Vec<u32> = memo.keys().copied().collect();
            masks.sort_unstable();
            for mask in masks {
                let acc = &memo[&mask];
                for c in 0..l {
                    if mask & (1 << c) != 0 {
                        continue;
                    }
                    let inversions = (mask >> (c + 1)).count_ones();
                    let term = acc.mul(self.entry(rows[r], cols[c]));
                    let term = if inversions % 2 == 1 { term.neg() } else { term };
                    let key = mask | (1 << c);
                    let updated = match next.remove(&key) {
                        Some(prev) => prev.add(&term),
                        None => term,
                    };
                    next.insert(key, updated);
                }
            }
            memo = next;
        }
        memo.remove(&((1u32 << l) - 1)).expect("full mask")
    }
}

/// `X = I_n + Σ_{s=1..k} X^(s) t^-s` over the `kn²` variables `x[i][j][s]`.
#[allow(non_snake_case)]
pub fn build_generic_X(n: usize, k: usize) -> Result<MatrixT, SliceError> {
    if n < 2 || k < 1 {
        return Err(SliceError::InvalidSize { n, k });
    }
    MatrixT::generic(&coefficient_table("x", n, k), "x", n, k)
}

/// Determinant as a polynomial in `t^-1` of degree at most `n·bound`.
pub fn det_t(m: &MatrixT) -> Result<TPoly, SliceError> {
    if m.size() > MAX_EXPANSION_SIZE {
        return Err(SliceError::SizeBudgetExceeded { n: m.size(), limit: MAX_EXPANSION_SIZE });
    }
    let all: Vec<usize> = (0..m.size()).collect();
    Ok(m.minor(&all, &all))
}

/// The `kn` generators `det^(1), …, det^(kn)` of the slice ideal.
pub fn slice_generators(n: usize, k: usize) -> Result<Vec<Polynomial>, SliceError> {
    let x = build_generic_X(n, k)?;
    let d = det_t(&x)?;
    Ok((1..=k * n).map(|r| d.coeff(r)).collect())
}

/// Largest `t^-1`-degree among all `l×l` minors of the generic `X`.
pub fn max_minor_degree(n: usize, k: usize, l: usize) -> Result<usize, SliceError> {
    if l == 0 || l > n {
        return Err(SliceError::MinorSizeOutOfRange { n, l });
    }
    let x = build_generic_X(n, k)?;
    if n > MAX_EXPANSION_SIZE {
        return Err(SliceError::SizeBudgetExceeded { n, limit: MAX_EXPANSION_SIZE });
    }
    let subsets = subsets_of_size(n, l);
    let mut best = 0;
    for rows in &subsets {
        for cols in &subsets {
            if let Some(d) = x.minor(rows, cols).degree() {
                best = best.max(d);
            }
        }
    }
    Ok(best)
}

/// True iff every `l×l` minor of the generic `X` has `t^-1`-degree at most `kl`.
pub fn minor_degree_check(n: usize, k: usize, l: usize) -> Result<bool, SliceError> {
    Ok(max_minor_degree(n, k, l)? <= k * l)
}

/// All sorted `size`-subsets of `0..n` in lexicographic order.
pub fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, t: &Arc<VarTable>) -> Polynomial {
        Polynomial::parse(text, t).unwrap()
    }

    #[test]
    fn generic_entries() {
        let x = build_generic_X(2, 1).unwrap();
        let t = x.table().clone();
        assert_eq!(x.entry(0, 0).coeff(0), Polynomial::one(&t));
        assert_eq!(x.entry(0, 0).coeff(1), p("x[1][1][1]", &t));
        let x = build_generic_X(2, 2).unwrap();
        let t = x.table().clone();
        assert!(x.entry(0, 1).coeff(0).is_zero());
        assert_eq!(x.entry(0, 1).coeff(2), p("x[1][2][2]", &t));
        assert_eq!(build_generic_X(3, 2).unwrap().table().len(), 18);
        assert_eq!(build_generic_X(1, 1), Err(SliceError::InvalidSize { n: 1, k: 1 }));
    }

    #[test]
    fn two_by_two_determinant() {
        let x = build_generic_X(2, 1).unwrap();
        let t = x.table().clone();
        let d = det_t(&x).unwrap();
        assert_eq!(d.coeff(0), Polynomial::one(&t));
        assert_eq!(d.coeff(1), p("x[1][1][1] + x[2][2][1]", &t));
        assert_eq!(d.coeff(2), p("x[1][1][1]*x[2][2][1] + -x[1][2][1]*x[2][1][1]", &t));
        assert_eq!(d.degree(), Some(2));
    }

    #[test]
    fn identity_determinant_is_one() {
        let t = coefficient_table("x", 3, 1);
        let d = det_t(&MatrixT::identity(&t, 3, 0)).unwrap();
        assert_eq!(d, TPoly::constant(Polynomial::one(&t), 0));
    }

    #[test]
    fn minor_degree_examples() {
        assert!(minor_degree_check(2, 1, 1).unwrap());
        assert!(minor_degree_check(3, 2, 2).unwrap());
        assert!(minor_degree_check(3, 1, 3).unwrap());
        assert_eq!(max_minor_degree(3, 2, 2).unwrap(), 4);
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets_of_size(4, 2).len(), 6);
        assert_eq!(subsets_of_size(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(subsets_of_size(3, 0), vec![Vec::<usize>::new()]);
    }
}
