//! Reducedness certificates for the slice ideals.
//!
//! A complete intersection is Cohen–Macaulay, hence satisfies S1. If in
//! addition its singular locus has smaller dimension than the variety, it is
//! generically smooth (R0), and Serre's criterion gives reducedness.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::groebner::{buchberger, krull_dimension, Budget, BudgetLimit, GroebnerError, GroebnerStats, TermOrder};
use crate::polynomial::{rat, rational_str, Polynomial, Rational};
use crate::slice::{coefficient_index, slice_generators, subsets_of_size, SliceError};

/// Default cap on the number of Jacobian minors formed.
pub const DEFAULT_MINOR_CAP: u64 = 5000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CertifyError {
    #[error(transparent)]
    Slice(#[from] SliceError),
    #[error("Gröbner budget exceeded ({limit:?})")]
    BudgetExceeded { limit: BudgetLimit, partial: Box<Certificate> },
    #[error(transparent)]
    Groebner(GroebnerError),
    #[error("{count} Jacobian minors of size {codim} exceed the cap {cap}")]
    MinorExplosion { codim: usize, count: u64, cap: u64, partial: Option<Box<Certificate>> },
    #[error("point does not satisfy generator {index}")]
    PointNotOnVariety { index: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    PointDimensionMismatch { expected: usize, got: usize },
    #[error("no smooth point found after {attempts} candidates")]
    SearchExhausted { attempts: usize },
}

impl CertifyError {
    /// The certificate as far as it got, when the pipeline stopped early.
    pub fn partial(&self) -> Option<&Certificate> {
        match self {
            CertifyError::BudgetExceeded { partial, .. } => Some(partial),
            CertifyError::MinorExplosion { partial, .. } => partial.as_deref(),
            _ => None,
        }
    }
}

impl From<GroebnerError> for CertifyError {
    fn from(e: GroebnerError) -> Self {
        CertifyError::Groebner(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyOptions {
    pub budget: Budget,
    pub minor_cap: u64,
    /// Also search for a smooth point and record its tangent dimension.
    pub smooth_point: bool,
    pub seed: u64,
    pub max_attempts: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { budget: Budget::default(), minor_cap: DEFAULT_MINOR_CAP, smooth_point: true, seed: 0, max_attempts: 200 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CertificateStats {
    pub dimension: GroebnerStats,
    pub singular_locus: Option<GroebnerStats>,
    pub jacobian_minors: u64,
    pub smooth_point_attempts: Option<usize>,
}

/// Outcome of the reducedness pipeline on an arbitrary generator list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReducednessReport {
    pub ambient_dim: usize,
    pub generator_count: usize,
    pub variety_dim: Option<i64>,
    pub is_complete_intersection: bool,
    pub singular_locus_dim: Option<i64>,
    pub is_reduced_certified: bool,
    pub stats: CertificateStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub n: usize,
    pub k: usize,
    pub ambient_dim: usize,
    pub generator_count: usize,
    pub variety_dim: Option<i64>,
    pub is_complete_intersection: bool,
    pub singular_locus_dim: Option<i64>,
    pub is_reduced_certified: bool,
    /// Coefficient matrices `X^(1), …, X^(k)` of the smooth witness.
    #[serde(serialize_with = "optional_matrices")]
    pub tangent_point: Option<Vec<Vec<Vec<Rational>>>>,
    pub tangent_dim: Option<usize>,
    pub stats: CertificateStats,
}

fn optional_matrices<S: serde::Serializer>(v: &Option<Vec<Vec<Vec<Rational>>>>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(m) => rational_str::matrices(m, s),
        None => s.serialize_none(),
    }
}

impl Certificate {
    fn from_report(n: usize, k: usize, r: ReducednessReport) -> Self {
        Certificate {
            n,
            k,
            ambient_dim: r.ambient_dim,
            generator_count: r.generator_count,
            variety_dim: r.variety_dim,
            is_complete_intersection: r.is_complete_intersection,
            singular_locus_dim: r.singular_locus_dim,
            is_reduced_certified: r.is_reduced_certified,
            tangent_point: None,
            tangent_dim: None,
            stats: r.stats,
        }
    }
}

/// `∂ gen_i / ∂ var_j` for every variable of the shared table.
pub fn jacobian(gens: &[Polynomial]) -> Vec<Vec<Polynomial>> {
    gens.iter().map(|g| (0..g.table().len()).map(|v| g.derivative(v)).collect()).collect()
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

/// All `c×c` minors of `m` on the given rows, one per sorted column subset,
/// by expansion along rows with a memo over used columns.
fn minors_for_rows(m: &[Vec<Polynomial>], rows: &[usize], ncols: usize) -> Vec<Polynomial> {
    use std::collections::BTreeMap;
    let table = m[rows[0]][0].table().clone();
    let mut memo: BTreeMap<Vec<usize>, Polynomial> = BTreeMap::new();
    memo.insert(Vec::new(), Polynomial::one(&table));
    for &r in rows {
        let mut next: BTreeMap<Vec<usize>, Polynomial> = BTreeMap::new();
        for (used, acc) in &memo {
            for c in 0..ncols {
                if used.contains(&c) || m[r][c].is_zero() {
                    continue;
                }
                let inversions = used.iter().filter(|&&u| u > c).count();
                let mut term = acc * &m[r][c];
                if inversions % 2 == 1 {
                    term = -term;
                }
                let mut key = used.clone();
                key.push(c);
                key.sort_unstable();
                let slot = next.entry(key).or_insert_with(|| Polynomial::zero(&table));
                *slot = &*slot + &term;
            }
        }
        memo = next;
    }
    memo.into_values().filter(|p| !p.is_zero()).collect()
}

/// Dimension of `V(I + codim×codim Jacobian minors)`, `-1` if empty.
pub fn singular_locus_dim(gens: &[Polynomial], codim: usize, budget: &Budget) -> Result<i64, CertifyError> {
    Ok(singular_locus_dim_with(gens, codim, budget, DEFAULT_MINOR_CAP)?.0)
}

/// As [`singular_locus_dim`], also returning statistics and the minor count.
pub fn singular_locus_dim_with(
    gens: &[Polynomial],
    codim: usize,
    budget: &Budget,
    cap: u64,
) -> Result<(i64, GroebnerStats, u64), CertifyError> {
    let Some(first) = gens.first() else {
        return Err(GroebnerError::EmptyInput.into());
    };
    let table = first.table().clone();
    if codim == 0 {
        return Ok((-1, GroebnerStats::default(), 0));
    }
    let nvars = table.len();
    let count = binomial(gens.len(), codim).saturating_mul(binomial(nvars, codim));
    if count > cap {
        return Err(CertifyError::MinorExplosion { codim, count, cap, partial: None });
    }
    let jac = jacobian(gens);
    let mut ideal: Vec<Polynomial> = gens.to_vec();
    if codim <= gens.len() && codim <= nvars {
        for rows in subsets_of_size(gens.len(), codim) {
            ideal.extend(minors_for_rows(&jac, &rows, nvars));
        }
    }
    let gb = buchberger(&ideal, TermOrder::Grevlex, budget)?;
    Ok((krull_dimension(&gb), gb.stats().clone(), count))
}

fn budget_error(e: GroebnerError, partial: &ReducednessReport, n: usize, k: usize) -> CertifyError {
    match e {
        GroebnerError::BudgetExceeded { limit, stats } => {
            let mut cert = Certificate::from_report(n, k, partial.clone());
            if cert.variety_dim.is_none() {
                cert.stats.dimension = stats;
            } else {
                cert.stats.singular_locus = Some(stats);
            }
            CertifyError::BudgetExceeded { limit, partial: Box::new(cert) }
        }
        other => CertifyError::Groebner(other),
    }
}

fn dimension_stage(gens: &[Polynomial], opts: &CertifyOptions) -> Result<ReducednessReport, GroebnerError> {
    let ambient_dim = gens.first().map_or(0, |g| g.table().len());
    let gb = buchberger(gens, TermOrder::Grevlex, &opts.budget)?;
    let dim = krull_dimension(&gb);
    Ok(ReducednessReport {
        ambient_dim,
        generator_count: gens.len(),
        variety_dim: Some(dim),
        is_complete_intersection: dim >= 0 && ambient_dim as i64 - dim == gens.len() as i64,
        singular_locus_dim: None,
        is_reduced_certified: false,
        stats: CertificateStats { dimension: gb.stats().clone(), ..Default::default() },
    })
}

fn empty_report(gens: &[Polynomial]) -> ReducednessReport {
    ReducednessReport {
        ambient_dim: gens.first().map_or(0, |g| g.table().len()),
        generator_count: gens.len(),
        variety_dim: None,
        is_complete_intersection: false,
        singular_locus_dim: None,
        is_reduced_certified: false,
        stats: CertificateStats::default(),
    }
}

/// Full R0 + S1 pipeline on an arbitrary generator list.
pub fn certify_generators(gens: &[Polynomial], opts: &CertifyOptions) -> Result<ReducednessReport, CertifyError> {
    certify_inner(gens, opts, 0, 0)
}

fn certify_inner(gens: &[Polynomial], opts: &CertifyOptions, n: usize, k: usize) -> Result<ReducednessReport, CertifyError> {
    let mut report = dimension_stage(gens, opts).map_err(|e| budget_error(e, &empty_report(gens), n, k))?;
    if !report.is_complete_intersection {
        return Ok(report);
    }
    let dim = report.variety_dim.expect("set by dimension stage");
    let codim = report.ambient_dim - dim as usize;
    let (sing, stats, minors) =
        singular_locus_dim_with(gens, codim, &opts.budget, opts.minor_cap).map_err(|e| match e {
            CertifyError::Groebner(g) => budget_error(g, &report, n, k),
            CertifyError::MinorExplosion { codim, count, cap, .. } => {
                let partial = Some(Box::new(Certificate::from_report(n, k, report.clone())));
                CertifyError::MinorExplosion { codim, count, cap, partial }
            }
            other => other,
        })?;
    report.singular_locus_dim = Some(sing);
    report.stats.singular_locus = Some(stats);
    report.stats.jacobian_minors = minors;
    report.is_reduced_certified = sing < dim;
    Ok(report)
}

/// Dimension and complete-intersection status of the `(n, k)` slice ideal.
pub fn complete_intersection_cert(n: usize, k: usize, opts: &CertifyOptions) -> Result<Certificate, CertifyError> {
    let gens = slice_generators(n, k)?;
    let report = dimension_stage(&gens, opts).map_err(|e| budget_error(e, &empty_report(&gens), n, k))?;
    Ok(Certificate::from_report(n, k, report))
}

/// Complete-intersection check, singular-locus check and, if requested, a
/// smooth witness point.
pub fn certify_reduced(n: usize, k: usize, opts: &CertifyOptions) -> Result<Certificate, CertifyError> {
    let gens = slice_generators(n, k)?;
    let report = certify_inner(&gens, opts, n, k)?;
    let mut cert = Certificate::from_report(n, k, report);
    if opts.smooth_point {
        let p = find_smooth_point_with(n, k, opts.seed, opts.max_attempts)?;
        cert.tangent_point = Some(p.matrices);
        cert.tangent_dim = Some(p.tangent_dim);
        cert.stats.smooth_point_attempts = Some(p.attempts);
    }
    Ok(cert)
}

/// Exact rank by Gauss–Jordan elimination over ℚ.
pub fn rational_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = rows[rank][col].recip();
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] * &inv;
                for c in col..ncols {
                    let delta = &f * &rows[rank][c];
                    rows[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `#vars − rank J(point)`; the point must satisfy every generator.
pub fn tangent_dim_at(gens: &[Polynomial], point: &[Rational]) -> Result<usize, CertifyError> {
    let Some(first) = gens.first() else {
        return Ok(point.len());
    };
    let nvars = first.table().len();
    if point.len() != nvars {
        return Err(CertifyError::PointDimensionMismatch { expected: nvars, got: point.len() });
    }
    for (index, g) in gens.iter().enumerate() {
        if !g.eval_dense(point).is_zero() {
            return Err(CertifyError::PointNotOnVariety { index });
        }
    }
    let rows = jacobian(gens).iter().map(|row| row.iter().map(|p| p.eval_dense(point)).collect()).collect();
    Ok(nvars - rational_rank(rows))
}

/// A point of the `(n, k)` slice variety with its tangent dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothPoint {
    /// `X^(1), …, X^(k)`.
    pub matrices: Vec<Vec<Vec<Rational>>>,
    /// Coordinates in the order of the slice variable table.
    pub coordinates: Vec<Rational>,
    pub tangent_dim: usize,
    pub attempts: usize,
}

type Matrix = Vec<Vec<Rational>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|l| &a[i][l] * &b[l][j]).sum()).collect()).collect()
}

fn jordan_block(n: usize, transpose: bool) -> Matrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let on = if transpose { i == j + 1 } else { j == i + 1 };
                    if on {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

fn is_nilpotent(m: &Matrix) -> bool {
    let mut p = m.clone();
    for _ in 1..m.len() {
        p = mat_mul(&p, m);
    }
    p.iter().all(|row| row.iter().all(Zero::is_zero))
}

fn random_nilpotent(n: usize, rng: &mut ChaCha8Rng) -> Option<Matrix> {
    for _ in 0..100_000 {
        let m: Matrix = (0..n).map(|_| (0..n).map(|_| rat(rng.random_range(-2..=2))).collect()).collect();
        if m.iter().any(|row| row.iter().any(|x| !x.is_zero())) && is_nilpotent(&m) {
            return Some(m);
        }
    }
    None
}

/// Coefficients `X^(1..k)` of `(I + N_1 t⁻¹) ⋯ (I + N_k t⁻¹)`.
fn unipotent_product(factors: &[Matrix]) -> Vec<Matrix> {
    let n = factors[0].len();
    let identity: Matrix = jordan_block(n, false)
        .iter()
        .enumerate()
        .map(|(i, _)| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    // coefficients of t^{-s}, s = 0..
    let mut acc: Vec<Matrix> = vec![identity];
    for f in factors {
        let mut next = acc.clone();
        next.push(vec![vec![Rational::zero(); n]; n]);
        for (s, c) in acc.iter().enumerate() {
            let prod = mat_mul(c, f);
            for i in 0..n {
                for j in 0..n {
                    next[s + 1][i][j] += &prod[i][j];
                }
            }
        }
        acc = next;
    }
    acc.split_off(1)
}

fn flatten(n: usize, k: usize, mats: &[Matrix]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); k * n * n];
    for (s, m) in mats.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                out[coefficient_index(n, k, i + 1, j + 1, s + 1)] = m[i][j].clone();
            }
        }
    }
    out
}

/// Smooth point of the `(n, k)` slice variety using the default seed.
pub fn find_smooth_point(n: usize, k: usize) -> Result<SmoothPoint, CertifyError> {
    let d = CertifyOptions::default();
    find_smooth_point_with(n, k, d.seed, d.max_attempts)
}

/// Tries alternating Jordan-block products first, then seeded random
/// nilpotent factors, until the tangent dimension equals `kn(n−1)`.
pub fn find_smooth_point_with(n: usize, k: usize, seed: u64, max_attempts: usize) -> Result<SmoothPoint, CertifyError> {
    let gens = slice_generators(n, k)?;
    let target = k * n * (n - 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_attempts {
        let factors: Vec<Matrix> = if attempt == 1 {
            (0..k).map(|j| jordan_block(n, j % 2 == 1)).collect()
        } else {
            match (0..k).map(|_| random_nilpotent(n, &mut rng)).collect::<Option<Vec<_>>>() {
                Some(f) => f,
                None => continue,
            }
        };
        let matrices = unipotent_product(&factors);
        let coordinates = flatten(n, k, &matrices);
        let tangent_dim = tangent_dim_at(&gens, &coordinates)?;
        if tangent_dim == target {
            return Ok(SmoothPoint { matrices, coordinates, tangent_dim, attempts: attempt });
        }
    }
    Err(CertifyError::SearchExhausted { attempts: max_attempts })
}
