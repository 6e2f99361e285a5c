//! Exterior powers of the vector representation of `sl_n` and the action of
//! matrices on them and on their duals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::polynomial::{ratio, Rational};

/// Element of `Λ^i ℚ^n` in the basis `e_C`, `C` a sorted 0-based index set.
/// Also used for dual vectors in the dual basis `e_C*`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtVec {
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl ExtVec {
    pub fn zero() -> Self {
        ExtVec::default()
    }

    /// `e_C` for a sorted 0-based set.
    pub fn basis(set: Vec<usize>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(set, Rational::one());
        ExtVec { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, set: Vec<usize>, c: Rational) {
        let slot = self.terms.entry(set.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&set);
        }
    }

    pub fn scale(&self, c: &Rational) -> ExtVec {
        let mut out = ExtVec::zero();
        for (s, v) in &self.terms {
            out.add_term(s.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &ExtVec) -> ExtVec {
        let mut out = self.clone();
        for (s, v) in &other.terms {
            out.add_term(s.clone(), v.clone());
        }
        out
    }
}

/// Sparse `n×n` rational matrix, an element of `gl_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieElem {
    pub entries: Vec<(usize, usize, Rational)>,
}

impl LieElem {
    /// Matrix unit `E_pq`, 0-based.
    pub fn unit(p: usize, q: usize) -> Self {
        LieElem { entries: vec![(p, q, Rational::one())] }
    }

    pub fn transpose(&self) -> LieElem {
        LieElem { entries: self.entries.iter().map(|(p, q, c)| (*q, *p, c.clone())).collect() }
    }

    pub fn scale(&self, c: &Rational) -> LieElem {
        LieElem { entries: self.entries.iter().map(|(p, q, v)| (*p, *q, v * c)).collect() }
    }

    pub fn dense(&self, n: usize) -> Vec<Vec<Rational>> {
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (p, q, c) in &self.entries {
            m[*p][*q] += c;
        }
        m
    }

    /// Derivation action on `Λ^i`.
    pub fn act(&self, v: &ExtVec) -> ExtVec {
        let mut out = ExtVec::zero();
        for (set, coeff) in v.terms() {
            for (p, q, c) in &self.entries {
                if let Some((sign, image)) = replace(set, *q, *p) {
                    out.add_term(image, coeff * c * Rational::from_integer(sign.into()));
                }
            }
        }
        out
    }
}

/// `E_pq e_C`: replace `q` by `p` in `C`, returning the sign of the sort.
fn replace(set: &[usize], q: usize, p: usize) -> Option<(i32, Vec<usize>)> {
    let pos = set.iter().position(|&c| c == q)?;
    if p == q {
        return Some((1, set.to_vec()));
    }
    if set.contains(&p) {
        return None;
    }
    let between = set.iter().filter(|&&c| c != q && ((p < c && c < q) || (q < c && c < p))).count();
    let mut image = set.to_vec();
    image[pos] = p;
    image.sort_unstable();
    Some((if between % 2 == 0 { 1 } else { -1 }, image))
}

/// Convention for the action of `gl_n` on dual vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DualAction {
    /// `(x·β)(v) = −β(x·v)`.
    #[default]
    Contragredient,
    /// `(x·β)(v) = β(x·v)`.
    Transpose,
}

impl DualAction {
    /// Action on a dual vector written in the dual basis `e_C*`.
    pub fn act(self, x: &LieElem, beta: &ExtVec) -> ExtVec {
        let image = x.transpose().act(beta);
        match self {
            DualAction::Contragredient => image.scale(&-Rational::one()),
            DualAction::Transpose => image,
        }
    }
}

/// Dual bases of `sl_n` for the trace form:
/// `{h_i, e_α, f_α}` and `{h^i, f_α, e_α}`.
#[derive(Clone, Debug)]
pub struct DualBasisTable {
    pub n: usize,
    pub lower: Vec<LieElem>,
    pub upper: Vec<LieElem>,
}

impl DualBasisTable {
    pub fn sl(n: usize) -> Self {
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        for i in 0..n - 1 {
            lower.push(LieElem { entries: vec![(i, i, Rational::one()), (i + 1, i + 1, -Rational::one())] });
            upper.push(fundamental_coweight_matrix(n, i + 1));
        }
        for (p, q) in positive_roots(n) {
            lower.push(LieElem::unit(p, q));
            upper.push(LieElem::unit(q, p));
            lower.push(LieElem::unit(q, p));
            upper.push(LieElem::unit(p, q));
        }
        DualBasisTable { n, lower, upper }
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }
}

/// `diag(1,…,1,0,…,0) − (i/n) I` with `i` ones, the traceless matrix of `ϖ_i`.
pub fn fundamental_coweight_matrix(n: usize, i: usize) -> LieElem {
    let shift = ratio(i as i64, n as i64);
    LieElem {
        entries: (0..n)
            .map(|m| (m, m, if m < i { Rational::one() - &shift } else { -shift.clone() }))
            .collect(),
    }
}

/// Positive roots `(p, q)`, `p < q`, 0-based; `e_α = E_pq`, `f_α = E_qp`.
pub fn positive_roots(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).collect()
}
