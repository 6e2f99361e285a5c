//! Root data and coweight combinatorics: dominance, meets, summands, duality,
//! orbit dimensions and the closure set generated by meets and summands.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::polynomial::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("simple root index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("difference does not lie in the coroot lattice")]
    DifferenceNotInCorootLattice,
    #[error("input coweight is not dominant")]
    NonDominantInput,
    #[error("operation only implemented for type A")]
    UnsupportedType,
    #[error("coweight has non-integral coroot coordinates")]
    NonIntegralCoweight,
    #[error("triangle apex ({a}, {b}) out of range for n = {n}")]
    ApexOutOfRange { n: usize, a: String, b: String },
    #[error("lambda - mu is not a nonnegative integral coroot combination")]
    NotDominated,
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid Cartan data: {0}")]
    InvalidCartan(String),
    #[error("malformed coordinate list `{0}`")]
    Malformed(String),
}

/// Cartan matrix with symmetrizers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootDatum {
    rank: usize,
    cartan: Vec<Vec<i64>>,
    symmetrizers: Vec<i64>,
}

impl RootDatum {
    pub fn new(cartan: Vec<Vec<i64>>, symmetrizers: Vec<i64>) -> Result<Self, LatticeError> {
        let rank = cartan.len();
        if rank == 0 {
            return Err(LatticeError::InvalidCartan("rank must be positive".into()));
        }
        if cartan.iter().any(|row| row.len() != rank) || symmetrizers.len() != rank {
            return Err(LatticeError::InvalidCartan("shape mismatch".into()));
        }
        for i in 0..rank {
            if cartan[i][i] != 2 {
                return Err(LatticeError::InvalidCartan(format!("a_{i}{i} != 2")));
            }
            if symmetrizers[i] <= 0 {
                return Err(LatticeError::InvalidCartan("symmetrizers must be positive".into()));
            }
            for j in 0..rank {
                if i != j && cartan[i][j] > 0 {
                    return Err(LatticeError::InvalidCartan(format!("a_{i}{j} > 0")));
                }
                if symmetrizers[i] * cartan[i][j] != symmetrizers[j] * cartan[j][i] {
                    return Err(LatticeError::InvalidCartan("not symmetrizable by d".into()));
                }
            }
        }
        Ok(RootDatum { rank, cartan, symmetrizers })
    }

    /// Type `A_rank`, the root datum of `SL_{rank+1}`.
    pub fn type_a(rank: usize) -> Self {
        let cartan = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| match i.abs_diff(j) {
                        0 => 2,
                        1 => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        RootDatum::new(cartan, vec![1; rank]).expect("type A is valid")
    }

    /// Root datum of `SL_n`.
    pub fn sl(n: usize) -> Arc<Self> {
        Arc::new(Self::type_a(n - 1))
    }

    /// Type `B_rank` (`rank ≥ 2`) with `a_{r−1,r} = −2`.
    pub fn type_b(rank: usize) -> Self {
        let mut d = Self::type_a(rank);
        d.cartan[rank - 2][rank - 1] = -2;
        d.symmetrizers = (0..rank).map(|i| if i + 1 == rank { 2 } else { 1 }).collect();
        Self::new(d.cartan, d.symmetrizers).expect("type B is valid")
    }

    /// Type `C_rank` (`rank ≥ 2`) with `a_{r,r−1} = −2`.
    pub fn type_c(rank: usize) -> Self {
        let mut d = Self::type_a(rank);
        d.cartan[rank - 1][rank - 2] = -2;
        d.symmetrizers = (0..rank).map(|i| if i + 1 == rank { 1 } else { 2 }).collect();
        Self::new(d.cartan, d.symmetrizers).expect("type C is valid")
    }

    pub fn type_g2() -> Self {
        Self::new(vec![vec![2, -1], vec![-3, 2]], vec![3, 1]).expect("G2 is valid")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `a_{ij}`, 0-based.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.symmetrizers
    }

    pub fn is_type_a(&self) -> bool {
        *self == Self::type_a(self.rank)
    }

    /// `n` for `SL_n`.
    pub fn sl_size(&self) -> usize {
        self.rank + 1
    }

    fn inverse_cartan_transpose(&self) -> Vec<Vec<Rational>> {
        // solve Σ_l c_l a_{jl} = δ_ij for each i, i.e. A c = e_i
        let r = self.rank;
        let mut m: Vec<Vec<Rational>> = (0..r)
            .map(|j| {
                let mut row: Vec<Rational> = (0..r).map(|l| rat(self.cartan[j][l])).collect();
                row.extend((0..r).map(|i| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        for col in 0..r {
            let piv = (col..r).find(|&i| !m[i][col].is_zero()).expect("Cartan matrices are invertible");
            m.swap(col, piv);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x *= &inv;
            }
            for i in 0..r {
                if i != col && !m[i][col].is_zero() {
                    let f = m[i][col].clone();
                    for c in 0..2 * r {
                        let delta = &f * &m[col][c];
                        m[i][c] -= delta;
                    }
                }
            }
        }
        // column i of the inverse is the coordinate vector of ϖ_i
        (0..r).map(|i| (0..r).map(|l| m[l][r + i].clone()).collect()).collect()
    }
}

/// `λ = Σ c_i α_i` in the simple-coroot basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coweight {
    coords: Vec<Rational>,
    datum: Arc<RootDatum>,
}

impl Coweight {
    pub fn new(datum: &Arc<RootDatum>, coords: Vec<Rational>) -> Result<Self, LatticeError> {
        if coords.len() != datum.rank {
            return Err(LatticeError::DimensionMismatch { expected: datum.rank, got: coords.len() });
        }
        Ok(Coweight { coords, datum: datum.clone() })
    }

    pub fn from_ints(datum: &Arc<RootDatum>, coords: &[i64]) -> Result<Self, LatticeError> {
        Self::new(datum, coords.iter().map(|&c| rat(c)).collect())
    }

    /// Parses `"c1,c2,…"` with each entry an integer or `p/q`.
    pub fn parse(datum: &Arc<RootDatum>, text: &str) -> Result<Self, LatticeError> {
        Self::new(datum, parse_coords(text)?)
    }

    pub fn zero(datum: &Arc<RootDatum>) -> Self {
        Coweight { coords: vec![Rational::zero(); datum.rank], datum: datum.clone() }
    }

    /// `α_j` for 1-based `j`.
    pub fn simple_coroot(datum: &Arc<RootDatum>, j: usize) -> Result<Self, LatticeError> {
        check_index(datum, j)?;
        let mut c = Self::zero(datum);
        c.coords[j - 1] = Rational::one();
        Ok(c)
    }

    /// Fundamental coweight `ϖ_i` for 1-based `i`.
    pub fn fundamental(datum: &Arc<RootDatum>, i: usize) -> Result<Self, LatticeError> {
        check_index(datum, i)?;
        let inv = datum.inverse_cartan_transpose();
        Ok(Coweight { coords: inv[i - 1].clone(), datum: datum.clone() })
    }

    /// `Σ a_i ϖ_i`.
    pub fn from_fundamental(datum: &Arc<RootDatum>, a: &[Rational]) -> Result<Self, LatticeError> {
        if a.len() != datum.rank {
            return Err(LatticeError::DimensionMismatch { expected: datum.rank, got: a.len() });
        }
        let inv = datum.inverse_cartan_transpose();
        let coords = (0..datum.rank)
            .map(|l| a.iter().zip(&inv).map(|(ai, w)| ai * &w[l]).sum())
            .collect();
        Ok(Coweight { coords, datum: datum.clone() })
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// `⟨λ, α_j∨⟩` for 1-based `j`.
    pub fn pairing(&self, j: usize) -> Result<Rational, LatticeError> {
        check_index(&self.datum, j)?;
        Ok(self.pairing0(j - 1))
    }

    fn pairing0(&self, j: usize) -> Rational {
        self.coords.iter().enumerate().map(|(i, c)| c * rat(self.datum.cartan[j][i])).sum()
    }

    /// Fundamental-coweight coordinates `(⟨λ, α_1∨⟩, …)`.
    pub fn pairings(&self) -> Vec<Rational> {
        (0..self.rank()).map(|j| self.pairing0(j)).collect()
    }

    pub fn is_dominant(&self) -> bool {
        (0..self.rank()).all(|j| !self.pairing0(j).is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// `Σ c_i`.
    pub fn height(&self) -> Rational {
        self.coords.iter().sum()
    }

    pub fn add(&self, other: &Coweight) -> Coweight {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Coweight) -> Coweight {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Rational) -> Coweight {
        Coweight { coords: self.coords.iter().map(|c| c * s).collect(), datum: self.datum.clone() }
    }

    fn zip(&self, other: &Coweight, f: impl Fn(&Rational, &Rational) -> Rational) -> Coweight {
        assert_eq!(self.datum, other.datum, "coweights over different root data");
        Coweight { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect(), datum: self.datum.clone() }
    }

    /// Type A diagonal form `(d_1, …, d_n)` with `d_m = c_m − c_{m−1}`, `c_0 = c_n = 0`.
    pub fn diagonal(&self) -> Result<Vec<Rational>, LatticeError> {
        if !self.datum.is_type_a() {
            return Err(LatticeError::UnsupportedType);
        }
        let n = self.rank() + 1;
        let c = |m: usize| if m == 0 || m == n { Rational::zero() } else { self.coords[m - 1].clone() };
        Ok((1..=n).map(|m| c(m) - c(m - 1)).collect())
    }
}

fn check_index(datum: &RootDatum, j: usize) -> Result<(), LatticeError> {
    if j == 0 || j > datum.rank {
        return Err(LatticeError::IndexOutOfRange { index: j, rank: datum.rank });
    }
    Ok(())
}

/// Parses a comma-separated list of rationals.
pub fn parse_coords(text: &str) -> Result<Vec<Rational>, LatticeError> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<Rational>().ok().filter(|_| !s.is_empty()).ok_or_else(|| LatticeError::Malformed(text.to_string()))
        })
        .collect()
}

impl Ord for Coweight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl PartialOrd for Coweight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coweight({self})")
    }
}

impl Serialize for Coweight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coords.iter().map(|c| c.to_string()))
    }
}

/// `⟨λ, α_j∨⟩` for 1-based `j`.
pub fn pair_simple_root(lambda: &Coweight, j: usize) -> Result<Rational, LatticeError> {
    lambda.pairing(j)
}

pub fn is_dominant(lambda: &Coweight) -> bool {
    lambda.is_dominant()
}

/// Coordinatewise minimum; requires `λ − μ` in the coroot lattice.
pub fn meet(lambda: &Coweight, mu: &Coweight) -> Result<Coweight, LatticeError> {
    if !lambda.sub(mu).is_integral() {
        return Err(LatticeError::DifferenceNotInCorootLattice);
    }
    Ok(meet_rational(lambda, mu))
}

/// Coordinatewise minimum without the lattice condition.
pub fn meet_rational(lambda: &Coweight, mu: &Coweight) -> Coweight {
    lambda.zip(mu, |a, b| a.min(b).clone())
}

/// True iff `λ − μ` is dominant.
pub fn is_summand(mu: &Coweight, lambda: &Coweight) -> Result<bool, LatticeError> {
    if !mu.is_dominant() || !lambda.is_dominant() {
        return Err(LatticeError::NonDominantInput);
    }
    Ok(lambda.sub(mu).is_dominant())
}

/// `λ* = −w₀λ`; coordinate reversal in type A.
pub fn dual_star(lambda: &Coweight) -> Result<Coweight, LatticeError> {
    if !lambda.datum.is_type_a() {
        return Err(LatticeError::UnsupportedType);
    }
    let mut coords = lambda.coords.clone();
    coords.reverse();
    Ok(Coweight { coords, datum: lambda.datum.clone() })
}

/// `⟨λ, 2ρ∨⟩ = 2 Σ c_i`.
pub fn dim_orbit(lambda: &Coweight) -> Result<i64, LatticeError> {
    if !lambda.is_integral() {
        return Err(LatticeError::NonIntegralCoweight);
    }
    if !lambda.is_dominant() {
        return Err(LatticeError::NonDominantInput);
    }
    let h = lambda.height();
    Ok(2 * i64::try_from(h.to_integer()).map_err(|_| LatticeError::NonIntegralCoweight)?)
}

/// Piecewise-linear function on `[0, n]` through `(0,0)`, `(a,b)`, `(n,0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleFunction {
    pub n: usize,
    pub apex_a: Rational,
    pub apex_b: Rational,
}

impl TriangleFunction {
    pub fn new(n: usize, apex_a: Rational, apex_b: Rational) -> Result<Self, LatticeError> {
        if n < 2 || apex_a < Rational::one() || apex_a > rat(n as i64 - 1) || apex_b.is_negative() {
            return Err(LatticeError::ApexOutOfRange { n, a: apex_a.to_string(), b: apex_b.to_string() });
        }
        Ok(TriangleFunction { n, apex_a, apex_b })
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let n = rat(self.n as i64);
        if *x <= self.apex_a {
            &self.apex_b * x / &self.apex_a
        } else {
            &self.apex_b * (&n - x) / (&n - &self.apex_a)
        }
    }
}

/// Pointwise minimum of finitely many triangle functions on a common `[0, n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleEnvelope {
    n: usize,
    pieces: Vec<TriangleFunction>,
}

impl TriangleEnvelope {
    pub fn new(pieces: Vec<TriangleFunction>) -> Self {
        assert!(!pieces.is_empty(), "envelope needs a piece");
        let n = pieces[0].n;
        assert!(pieces.iter().all(|p| p.n == n), "triangles over different intervals");
        TriangleEnvelope { n, pieces }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.pieces.iter().map(|p| p.eval(x)).min().expect("nonempty")
    }

    pub fn min(&self, other: &TriangleEnvelope) -> TriangleEnvelope {
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        TriangleEnvelope::new(pieces)
    }

    /// The sampling map `f ↦ Σ_{i=1}^{n−1} f(i) α_i`.
    pub fn sample(&self) -> Coweight {
        let datum = RootDatum::sl(self.n);
        let coords = (1..self.n).map(|i| self.eval(&rat(i as i64))).collect();
        Coweight { coords, datum }
    }
}

impl From<TriangleFunction> for TriangleEnvelope {
    fn from(t: TriangleFunction) -> Self {
        TriangleEnvelope::new(vec![t])
    }
}

/// Samples the triangle with apex `(a, b)` on `[0, n]`.
pub fn triangle_coweight(n: usize, apex_a: Rational, apex_b: Rational) -> Result<Coweight, LatticeError> {
    Ok(TriangleEnvelope::from(TriangleFunction::new(n, apex_a, apex_b)?).sample())
}

/// True iff the fundamental coordinates are supported on at most two adjacent indices.
pub fn is_two_adjacent_fundamental(lambda: &Coweight) -> bool {
    let support: Vec<usize> =
        lambda.pairings().iter().enumerate().filter(|(_, p)| !p.is_zero()).map(|(i, _)| i).collect();
    match support.as_slice() {
        [] | [_] => true,
        [a, b] => b - a == 1,
        _ => false,
    }
}

/// Two-adjacent shape and integral coroot coordinates.
pub fn is_integral_two_adjacent(lambda: &Coweight) -> bool {
    lambda.is_integral() && is_two_adjacent_fundamental(lambda)
}

/// Integral dominant summands `μ` of `λ` (both bounds inclusive) with height at most `bound`.
pub fn integral_summands(lambda: &Coweight, bound: &Rational) -> Vec<Coweight> {
    let caps: Vec<i64> = lambda
        .coords
        .iter()
        .map(|c| i64::try_from(c.floor().to_integer()).unwrap_or(i64::MAX).max(-1))
        .collect();
    if caps.iter().any(|&c| c < 0) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64; caps.len()];
    loop {
        let mu = Coweight { coords: cur.iter().map(|&c| rat(c)).collect(), datum: lambda.datum.clone() };
        if mu.height() <= *bound && mu.is_dominant() && lambda.sub(&mu).is_dominant() {
            out.push(mu);
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == cur.len() {
                return out;
            }
            if cur[pos] < caps[pos] {
                cur[pos] += 1;
                break;
            }
            cur[pos] = 0;
            pos += 1;
        }
    }
}

/// Smallest set containing `seeds` and closed under meets and dominant
/// integral summands, keeping generated elements of height at most
/// `height_bound`. Returned sorted.
pub fn generate_closure(seeds: &[Coweight], height_bound: i64) -> Vec<Coweight> {
    let bound = rat(height_bound);
    let mut set: BTreeSet<Coweight> = BTreeSet::new();
    let mut queue: Vec<Coweight> = Vec::new();
    for s in seeds {
        if set.insert(s.clone()) {
            queue.push(s.clone());
        }
    }
    while let Some(x) = queue.pop() {
        let mut found = integral_summands(&x, &bound);
        for y in &set {
            if let Ok(m) = meet(&x, y) {
                if m.height() <= bound && m.is_dominant() {
                    found.push(m);
                }
            }
        }
        for f in found {
            if !set.contains(&f) {
                set.insert(f.clone());
                queue.push(f);
            }
        }
    }
    set.into_iter().collect()
}

/// Threshold data of a pair `μ ≤ λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThresholdData {
    /// `m_i` with `λ − μ = Σ m_i α_{i*}`, indexed by `i = 1..rank`.
    pub m: Vec<i64>,
    /// `μ_i = ⟨μ*, α_i∨⟩`.
    #[serde(serialize_with = "crate::polynomial::rational_str::vec")]
    pub mu_star_pairings: Vec<Rational>,
}

pub fn threshold_data(lambda: &Coweight, mu: &Coweight) -> Result<ThresholdData, LatticeError> {
    if !lambda.datum.is_type_a() {
        return Err(LatticeError::UnsupportedType);
    }
    if !lambda.is_dominant() || !mu.is_dominant() {
        return Err(LatticeError::NonDominantInput);
    }
    let diff = lambda.sub(mu);
    if diff.coords.iter().any(|c| c.is_negative() || !c.is_integer()) {
        return Err(LatticeError::NotDominated);
    }
    let r = lambda.rank();
    let n = r + 1;
    let m = (1..=r)
        .map(|i| i64::try_from(diff.coords[n - i - 1].to_integer()).map_err(|_| LatticeError::NotDominated))
        .collect::<Result<Vec<_>, _>>()?;
    let mu_star_pairings = dual_star(mu)?.pairings();
    Ok(ThresholdData { m, mu_star_pairings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::ratio;

    fn cw(n: usize, c: &[i64]) -> Coweight {
        Coweight::from_ints(&RootDatum::sl(n), c).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let d = RootDatum::sl(3);
        assert_eq!(pair_simple_root(&Coweight::simple_coroot(&d, 1).unwrap(), 1).unwrap(), rat(2));
        let w1 = Coweight::fundamental(&d, 1).unwrap();
        assert_eq!(w1.coords(), &[ratio(2, 3), ratio(1, 3)]);
        assert_eq!(pair_simple_root(&w1, 1).unwrap(), rat(1));
        assert!(pair_simple_root(&w1, 3).is_err());
        for n in 2..=5 {
            let nw1 = Coweight::fundamental(&RootDatum::sl(n), 1).unwrap().scale(&rat(n as i64));
            let expected: Vec<Rational> = (1..n).rev().map(|c| rat(c as i64)).collect();
            assert_eq!(nw1.coords(), expected.as_slice());
            assert_eq!(pair_simple_root(&nw1, 1).unwrap(), rat(n as i64));
        }
    }

    #[test]
    fn dominance_examples() {
        let d3 = RootDatum::sl(3);
        assert!(Coweight::fundamental(&d3, 1).unwrap().is_dominant());
        assert!(!cw(2, &[-1]).is_dominant());
        assert!(cw(3, &[1, 1]).is_dominant());
    }

    #[test]
    fn meet_examples() {
        let l = cw(3, &[2, 1]);
        assert_eq!(meet(&l, &l).unwrap(), l);
        assert_eq!(meet(&cw(3, &[2, 1]), &cw(3, &[1, 2])).unwrap(), cw(3, &[1, 1]));
        let d2 = RootDatum::sl(2);
        let half = Coweight::new(&d2, vec![ratio(1, 2)]).unwrap();
        assert_eq!(meet(&cw(2, &[1]), &half), Err(LatticeError::DifferenceNotInCorootLattice));
    }

    #[test]
    fn summand_examples() {
        let l = cw(3, &[2, 1]);
        assert!(is_summand(&cw(3, &[0, 0]), &l).unwrap());
        assert!(!is_summand(&cw(3, &[1, 1]), &l).unwrap());
        assert!(is_summand(&cw(2, &[1]), &cw(2, &[3])).unwrap());
        assert_eq!(is_summand(&cw(2, &[-1]), &l), Err(LatticeError::NonDominantInput));
    }

    #[test]
    fn dual_and_dimension_examples() {
        assert_eq!(dual_star(&cw(2, &[5])).unwrap(), cw(2, &[5]));
        assert_eq!(dual_star(&cw(3, &[2, 1])).unwrap(), cw(3, &[1, 2]));
        assert_eq!(dual_star(&cw(4, &[3, 2, 1])).unwrap(), cw(4, &[1, 2, 3]));
        let b2 = Arc::new(RootDatum::type_b(2));
        assert_eq!(dual_star(&Coweight::zero(&b2)), Err(LatticeError::UnsupportedType));
        assert_eq!(dim_orbit(&cw(2, &[1])).unwrap(), 2);
        assert_eq!(dim_orbit(&cw(3, &[2, 1])).unwrap(), 6);
        assert_eq!(dim_orbit(&cw(3, &[0, 0])).unwrap(), 0);
        let w1 = Coweight::fundamental(&RootDatum::sl(3), 1).unwrap();
        assert_eq!(dim_orbit(&w1), Err(LatticeError::NonIntegralCoweight));
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(triangle_coweight(3, rat(1), ratio(2, 3)).unwrap().coords(), &[ratio(2, 3), ratio(1, 3)]);
        assert_eq!(triangle_coweight(3, rat(2), ratio(2, 3)).unwrap().coords(), &[ratio(1, 3), ratio(2, 3)]);
        assert_eq!(triangle_coweight(2, rat(1), rat(1)).unwrap().coords(), &[rat(1)]);
        assert!(matches!(triangle_coweight(3, rat(3), rat(1)), Err(LatticeError::ApexOutOfRange { .. })));
        assert!(matches!(triangle_coweight(3, rat(1), rat(-1)), Err(LatticeError::ApexOutOfRange { .. })));
    }

    #[test]
    fn closure_examples() {
        assert!(generate_closure(&[], 5).is_empty());
        let c = generate_closure(&[cw(3, &[2, 1]), cw(3, &[1, 2])], 3);
        assert!(c.contains(&cw(3, &[1, 1])));
        let c = generate_closure(&[cw(2, &[1])], 10);
        assert_eq!(c, vec![cw(2, &[0]), cw(2, &[1])]);
    }

    #[test]
    fn two_adjacent_examples() {
        let d4 = RootDatum::sl(4);
        let l = Coweight::from_fundamental(&d4, &[rat(1), rat(0), rat(1)]).unwrap();
        assert!(!is_two_adjacent_fundamental(&l));
        assert!(is_two_adjacent_fundamental(&cw(3, &[1, 1])));
        assert!(is_two_adjacent_fundamental(&cw(3, &[0, 0])));
    }

    #[test]
    fn threshold_examples() {
        let t = threshold_data(&cw(2, &[1]), &cw(2, &[0])).unwrap();
        assert_eq!(t.m, vec![1]);
        assert_eq!(t.mu_star_pairings, vec![rat(0)]);
        for n in 2..=4usize {
            for k in 1..=3i64 {
                let lam = Coweight::fundamental(&RootDatum::sl(n), 1).unwrap().scale(&rat(k * n as i64));
                let t = threshold_data(&lam, &Coweight::zero(lam.datum())).unwrap();
                assert_eq!(t.m, (1..n as i64).map(|i| k * i).collect::<Vec<_>>());
            }
        }
        let l = cw(3, &[2, 1]);
        assert_eq!(threshold_data(&l, &l).unwrap().m, vec![0, 0]);
        assert_eq!(threshold_data(&cw(3, &[1, 1]), &cw(3, &[2, 1])), Err(LatticeError::NotDominated));
    }

    #[test]
    fn diagonal_view() {
        // n ϖ_1 for SL_3 is diag(2, -1, -1)
        assert_eq!(cw(3, &[2, 1]).diagonal().unwrap(), vec![rat(2), rat(-1), rat(-1)]);
    }

    #[test]
    fn other_types_validate() {
        for d in [RootDatum::type_b(3), RootDatum::type_c(3), RootDatum::type_g2(), RootDatum::type_b(2)] {
            let d = Arc::new(d);
            for i in 1..=d.rank() {
                let w = Coweight::fundamental(&d, i).unwrap();
                let p = w.pairings();
                for (j, pj) in p.iter().enumerate() {
                    assert_eq!(*pj, if j + 1 == i { rat(1) } else { rat(0) });
                }
            }
        }
        assert!(RootDatum::new(vec![vec![2, 1], vec![1, 2]], vec![1, 1]).is_err());
    }
}
