//! Rational r-matrix Poisson structure on the first congruence subgroup
//! `G_1[[t^-1]]` of `SL_n`, truncated at a fixed order in `t^-1`.
//!
//! Everything lives on a [`GroupChart`]: the variables `g[i][j][s]`,
//! `1 ≤ s ≤ N`, with `g(t) = I + Σ g^(s) t^-s` and relations `det g(t) = 1`.

mod bracket;
mod exterior;
mod series;
mod verify;

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::groebner::{buchberger, Budget, GroebnerBasis, GroebnerError, TermOrder};
use crate::lattice::LatticeError;
use crate::polynomial::{PolyError, Polynomial, VarTable};
use crate::slice::{coefficient_index, coefficient_table, det_t, MatrixT, SliceError};

pub use bracket::{bracket, BracketEngine, PoissonConfig};
pub use exterior::{fundamental_coweight_matrix, positive_roots, DualAction, DualBasisTable, ExtVec, LieElem};
pub use series::{residue, residue_plus, Laurent, SeriesU};
pub use verify::{
    closure_generators, compare_ideals_mu_zero, delta_series, f_series, generalized_minor, lemma_labels,
    slice_generator_set, verify_axioms, verify_closure, verify_lemma_bracket_f, verify_minor_bracket_identity,
    AxiomSampling, CompareReport, SliceGeneratorSet, Threshold,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PoissonError {
    #[error("bracket needs order {required} but the chart is truncated at {truncation}")]
    TruncationExceeded { required: usize, truncation: usize },
    #[error("invalid minor label: {0}")]
    LabelInvalid(String),
    #[error("chart needs n >= 2 and N >= 1, got n = {n}, N = {truncation}")]
    InvalidChart { n: usize, truncation: usize },
    #[error("series has no multiplicative inverse")]
    NotInvertible,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Slice(#[from] SliceError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Coordinates `g[i][j][s]` on `G_1[[t^-1]]` for `SL_n` up to order `N`.
#[derive(Debug)]
pub struct GroupChart {
    n: usize,
    truncation: usize,
    table: Arc<VarTable>,
    matrix: MatrixT,
    relations: Vec<Polynomial>,
    budget: Budget,
    relation_basis: OnceLock<Result<GroebnerBasis, GroebnerError>>,
}

impl GroupChart {
    pub fn new(n: usize, truncation: usize) -> Result<Self, PoissonError> {
        GroupChart::with_budget(n, truncation, Budget::default())
    }

    /// Chart whose relation basis, if ever needed, is computed under `budget`.
    pub fn with_budget(n: usize, truncation: usize, budget: Budget) -> Result<Self, PoissonError> {
        if n < 2 || truncation < 1 {
            return Err(PoissonError::InvalidChart { n, truncation });
        }
        let table = coefficient_table("g", n, truncation);
        let matrix = MatrixT::generic(&table, "g", n, truncation)?;
        let det = det_t(&matrix)?;
        // every coefficient of det g(t) − 1, the chart polynomial having degree nN
        let relations = (1..=n * truncation).map(|r| det.coeff(r)).filter(|p| !p.is_zero()).collect();
        Ok(GroupChart { n, truncation, table, matrix, relations, budget, relation_basis: OnceLock::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn matrix(&self) -> &MatrixT {
        &self.matrix
    }

    /// Coefficients `det^(r)`, `r = 1..nN`.
    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    /// Index of `g[i][j][s]`, 1-based.
    pub fn var_index(&self, i: usize, j: usize, s: usize) -> usize {
        coefficient_index(self.n, self.truncation, i, j, s)
    }

    pub fn var(&self, i: usize, j: usize, s: usize) -> Polynomial {
        Polynomial::var(&self.table, self.var_index(i, j, s))
    }

    /// `(i, j, s)` of a variable index, 1-based.
    pub fn var_label(&self, index: usize) -> (usize, usize, usize) {
        let s = index % self.truncation + 1;
        let ij = index / self.truncation;
        (ij / self.n + 1, ij % self.n + 1, s)
    }

    /// Largest order `s` among the variables of `p`; 0 for constants.
    pub fn order_of(&self, p: &Polynomial) -> usize {
        p.variables().into_iter().map(|v| self.var_label(v).2).max().unwrap_or(0)
    }

    /// `T^(s)_{ij}` with `T^(0) = I`; indices 1-based.
    pub fn entry(&self, i: usize, j: usize, s: usize) -> Polynomial {
        match s {
            0 if i == j => Polynomial::one(&self.table),
            0 => Polynomial::zero(&self.table),
            _ => self.var(i, j, s),
        }
    }

    /// All variables of order `s`.
    pub fn order_variables(&self, s: usize) -> Vec<usize> {
        (1..=self.n).flat_map(|i| (1..=self.n).map(move |j| (i, j))).map(|(i, j)| self.var_index(i, j, s)).collect()
    }

    /// Gröbner basis of the relations, computed on first use.
    pub fn relation_basis(&self) -> Result<&GroebnerBasis, PoissonError> {
        self.relation_basis
            .get_or_init(|| buchberger(&self.relations, TermOrder::Grevlex, &self.budget))
            .as_ref()
            .map_err(|e| PoissonError::Groebner(e.clone()))
    }

    /// Normal form modulo the relations; zero stays zero without a basis.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial, PoissonError> {
        if p.is_zero() {
            return Ok(p.clone());
        }
        Ok(self.relation_basis()?.normal_form(p))
    }

    /// Minor series on 0-based `rows` and `cols`, truncated at the chart order.
    pub fn minor_series(&self, rows: &[usize], cols: &[usize]) -> SeriesU {
        verify::truncated_minor(self, rows, cols)
    }
}

/// `Δ_{e_R*, e_C}` for `i`-element sets `R`, `C ⊂ {1..n}` (1-based, sorted).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MinorLabel {
    pub i: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// `ε`-coordinates of the weight of `e_C`.
    pub weight: Vec<i64>,
}

impl MinorLabel {
    pub fn new(n: usize, rows: Vec<usize>, cols: Vec<usize>) -> Result<Self, PoissonError> {
        let valid = |s: &[usize]| s.windows(2).all(|w| w[0] < w[1]) && s.iter().all(|&x| (1..=n).contains(&x));
        if rows.len() != cols.len() || rows.is_empty() || !valid(&rows) || !valid(&cols) {
            return Err(PoissonError::LabelInvalid(format!("rows {rows:?}, cols {cols:?} for n = {n}")));
        }
        let weight = (1..=n).map(|m| i64::from(cols.contains(&m))).collect();
        Ok(MinorLabel { i: rows.len(), rows, cols, weight })
    }

    /// `Δ_{v_i*, e_C}` with `v_i* = e_{1..i}*`.
    pub fn highest_row(n: usize, cols: Vec<usize>) -> Result<Self, PoissonError> {
        MinorLabel::new(n, (1..=cols.len()).collect(), cols)
    }

    pub fn n(&self) -> usize {
        self.weight.len()
    }

    /// `e_R*` in 0-based indices.
    pub fn beta(&self) -> ExtVec {
        ExtVec::basis(self.rows.iter().map(|r| r - 1).collect())
    }

    /// `e_C` in 0-based indices.
    pub fn gamma(&self) -> ExtVec {
        ExtVec::basis(self.cols.iter().map(|c| c - 1).collect())
    }

    fn check(&self, chart: &GroupChart) -> Result<(), PoissonError> {
        if self.n() != chart.n() {
            return Err(PoissonError::LabelInvalid(format!("label for n = {} on chart n = {}", self.n(), chart.n())));
        }
        Ok(())
    }
}

/// JSON verdict of one verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub check: String,
    pub parameters: BTreeMap<String, String>,
    pub truncation: usize,
    pub verdict: bool,
    /// Number of individual identities compared.
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl VerificationRecord {
    pub(crate) fn new(check: &str, truncation: usize) -> Self {
        VerificationRecord {
            check: check.to_string(),
            parameters: BTreeMap::new(),
            truncation,
            verdict: true,
            checked: 0,
            witness: None,
        }
    }

    pub(crate) fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    /// Counts one comparison; the first nonzero residual becomes the witness.
    pub(crate) fn record(&mut self, context: &str, residual: &Polynomial) {
        self.checked += 1;
        if !residual.is_zero() {
            if self.verdict {
                self.witness = Some(format!("{context}: {residual}"));
            }
            self.verdict = false;
        }
    }

    pub(crate) fn fail(&mut self, reason: String) {
        if self.verdict {
            self.witness = Some(reason);
        }
        self.verdict = false;
    }
}
