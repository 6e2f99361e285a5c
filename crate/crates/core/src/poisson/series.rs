//! Truncated series in `u^-1` and two-sided Laurent series with a known floor.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::polynomial::{Polynomial, Rational, VarTable};

use super::PoissonError;

/// `Σ_{s=0..N} c_s u^-s`; products drop everything above `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesU {
    coeffs: Vec<Polynomial>,
}

impl SeriesU {
    pub fn zero(table: &Arc<VarTable>, truncation: usize) -> Self {
        SeriesU { coeffs: vec![Polynomial::zero(table); truncation + 1] }
    }

    pub fn one(table: &Arc<VarTable>, truncation: usize) -> Self {
        let mut s = SeriesU::zero(table, truncation);
        s.coeffs[0] = Polynomial::one(table);
        s
    }

    /// Pads or cuts `coeffs` to length `truncation + 1`.
    pub fn from_coeffs(table: &Arc<VarTable>, mut coeffs: Vec<Polynomial>, truncation: usize) -> Self {
        coeffs.resize(truncation + 1, Polynomial::zero(table));
        SeriesU { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.coeffs[0].table()
    }

    pub fn coeff(&self, s: usize) -> &Polynomial {
        &self.coeffs[s]
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &SeriesU) -> SeriesU {
        SeriesU { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &SeriesU) -> SeriesU {
        SeriesU { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &Rational) -> SeriesU {
        SeriesU { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn mul(&self, other: &SeriesU) -> SeriesU {
        let n = self.truncation().min(other.truncation());
        let mut out = SeriesU::zero(self.table(), n);
        for (a, x) in self.coeffs.iter().enumerate().take(n + 1) {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate().take(n + 1 - a) {
                if !y.is_zero() {
                    out.coeffs[a + b] = &out.coeffs[a + b] + &(x * y);
                }
            }
        }
        out
    }

    /// Multiplicative inverse; the constant term must be a nonzero rational.
    pub fn inverse(&self) -> Result<SeriesU, PoissonError> {
        let c0 = &self.coeffs[0];
        if !c0.is_constant() || c0.is_zero() {
            return Err(PoissonError::NotInvertible);
        }
        let inv0 = c0.constant_term().recip();
        let n = self.truncation();
        let mut out = SeriesU::zero(self.table(), n);
        out.coeffs[0] = Polynomial::constant(self.table(), inv0.clone());
        for s in 1..=n {
            let mut acc = Polynomial::zero(self.table());
            for t in 1..=s {
                acc = &acc + &(&self.coeffs[t] * &out.coeffs[s - t]);
            }
            out.coeffs[s] = acc.scale(&-inv0.clone());
        }
        Ok(out)
    }

    pub fn to_laurent(&self) -> Laurent {
        let terms = self.coeffs.iter().enumerate().map(|(s, c)| (-(s as i64), c.clone())).collect();
        Laurent::new(self.table(), terms, Some(-(self.truncation() as i64)))
    }
}

/// `Σ_e c_e u^e`, exact for exponents `≥ floor`; `floor = None` means exact
/// everywhere, so the series is a Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    table: Arc<VarTable>,
    terms: BTreeMap<i64, Polynomial>,
    floor: Option<i64>,
}

impl Laurent {
    pub fn new(table: &Arc<VarTable>, terms: BTreeMap<i64, Polynomial>, floor: Option<i64>) -> Self {
        let mut l = Laurent { table: table.clone(), terms, floor };
        l.normalize();
        l
    }

    pub fn zero(table: &Arc<VarTable>) -> Self {
        Laurent::new(table, BTreeMap::new(), None)
    }

    /// Single exact term `c u^e`.
    pub fn monomial(table: &Arc<VarTable>, e: i64, c: Polynomial) -> Self {
        Laurent::new(table, BTreeMap::from([(e, c)]), None)
    }

    fn normalize(&mut self) {
        let floor = self.floor;
        self.terms.retain(|e, c| !c.is_zero() && floor.map_or(true, |f| *e >= f));
    }

    pub fn floor(&self) -> Option<i64> {
        self.floor
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn coeff(&self, e: i64) -> Polynomial {
        self.terms.get(&e).cloned().unwrap_or_else(|| Polynomial::zero(&self.table))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Polynomial)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn top(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn shift(&self, k: i64) -> Laurent {
        Laurent {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            floor: self.floor.map(|f| f + k),
        }
    }

    pub fn scale(&self, c: &Rational) -> Laurent {
        let terms = self.terms.iter().map(|(e, p)| (*e, p.scale(c))).collect();
        Laurent::new(&self.table, terms, self.floor)
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let floor = match (self.floor, other.floor) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let slot = terms.entry(*e).or_insert_with(|| Polynomial::zero(&self.table));
            *slot = &*slot + c;
        }
        Laurent::new(&self.table, terms, floor)
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        // a truncated factor hides terms below floor + (top of the other)
        let floor = match (self.floor, other.floor) {
            (None, None) => None,
            (a, b) => {
                let reach = |l: &Laurent| l.top().or(l.floor).unwrap_or(i64::MIN / 4);
                let from_a = a.map(|f| f + reach(other));
                let from_b = b.map(|f| f + reach(self));
                Some(from_a.into_iter().chain(from_b).max().expect("one floor is set"))
            }
        };
        let mut terms: BTreeMap<i64, Polynomial> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                if floor.is_some_and(|f| e < f) {
                    continue;
                }
                let slot = terms.entry(e).or_insert_with(|| Polynomial::zero(&self.table));
                *slot = &*slot + &(ca * cb);
            }
        }
        Laurent::new(&self.table, terms, floor)
    }

    /// `T_+ = Σ_{e≥0} T_e u^e`.
    pub fn plus_part(&self) -> Laurent {
        let terms = self.terms.range(0..).map(|(e, c)| (*e, c.clone())).collect();
        let floor = self.floor.filter(|&f| f > 0);
        Laurent::new(&self.table, terms, floor)
    }

    /// Largest exponent present, `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.top()
    }
}

/// `[u^k T(u)]_+`, equal to `Res_u(u^{k-1} (1 − u^-1 v)^{-1} T(u))` read in `v`.
pub fn residue_plus(t: &Laurent, k: i64) -> Laurent {
    t.shift(k).plus_part()
}

/// Coefficient of `u^-1` in a Laurent series; the floor must reach it.
pub fn residue(t: &Laurent) -> Option<Polynomial> {
    match t.floor() {
        Some(f) if f > -1 => None,
        _ => Some(t.coeff(-1)),
    }
}
