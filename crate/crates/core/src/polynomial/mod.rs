//! Sparse multivariate polynomials with arbitrary-precision rational coefficients.
//!
//! Every polynomial carries a shared [`VarTable`]; arithmetic between
//! polynomials over different tables is an error. Terms live in a
//! `BTreeMap` keyed by [`Monomial`], whose order is grevlex, so iteration
//! order (and therefore printing and every algorithm built on top) is
//! deterministic.

mod monomial;
mod text;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use monomial::Monomial;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomials are defined over different variable tables")]
    VarTableMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("cannot parse polynomial term `{term}`: {reason}")]
    Parse { term: String, reason: String },
}

/// Ordered list of variable names. Index 0 is the largest variable in every
/// term order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarTable {
    pub fn new<I, S>(names: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(VarTable { names, index })
    }

    pub fn shared<I, S>(names: I) -> Result<Arc<Self>, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::new(names).map(Arc::new)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }
}

fn same_table(a: &Arc<VarTable>, b: &Arc<VarTable>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

#[derive(Clone)]
pub struct Polynomial {
    table: Arc<VarTable>,
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Exact `p op q`, failing when the operands use different tables.
pub fn poly_arith(p: &Polynomial, q: &Polynomial, op: ArithOp) -> Result<Polynomial, PolyError> {
    p.check_table(q)?;
    Ok(match op {
        ArithOp::Add => p.add_ref(q),
        ArithOp::Sub => p.sub_ref(q),
        ArithOp::Mul => p.mul_ref(q),
    })
}

/// Formal partial derivative with respect to the variable named `var`.
pub fn poly_diff(p: &Polynomial, var: &str) -> Result<Polynomial, PolyError> {
    let idx = p.table.require(var)?;
    Ok(p.derivative(idx))
}

/// Evaluates `p` at a named point. Only variables occurring in `p` need values.
pub fn poly_eval(p: &Polynomial, point: &HashMap<String, Rational>) -> Result<Rational, PolyError> {
    let mut values: Vec<Option<&Rational>> = vec![None; p.table.len()];
    for v in p.variables() {
        let name = p.table.name(v);
        values[v] = Some(point.get(name).ok_or_else(|| PolyError::MissingAssignment(name.to_string()))?);
    }
    let mut acc = Rational::zero();
    for (m, c) in &p.terms {
        let mut t = c.clone();
        for (v, e) in m.iter() {
            t *= pow_rat(values[v].expect("assigned above"), e);
        }
        acc += t;
    }
    Ok(acc)
}

pub(crate) fn pow_rat(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

/// Integer to rational shorthand.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` shorthand; panics on `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

impl Polynomial {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        Polynomial { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, Rational::one())
    }

    pub fn constant(table: &Arc<VarTable>, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Polynomial { table: table.clone(), terms }
    }

    pub fn var(table: &Arc<VarTable>, index: usize) -> Self {
        assert!(index < table.len(), "variable index {index} out of range");
        Self::monomial(table, Monomial::var(index, 1), Rational::one())
    }

    pub fn var_named(table: &Arc<VarTable>, name: &str) -> Result<Self, PolyError> {
        Ok(Self::var(table, table.require(name)?))
    }

    pub fn monomial(table: &Arc<VarTable>, m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { table: table.clone(), terms }
    }

    /// Collects terms, summing repeated monomials and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(table: &Arc<VarTable>, terms: I) -> Self {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            add_term(&mut map, m, c);
        }
        Polynomial { table: table.clone(), terms: map }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Sorted list of variable indices that occur in the polynomial.
    pub fn variables(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.terms.keys().flat_map(|m| m.support().collect::<Vec<_>>()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn check_table(&self, other: &Polynomial) -> Result<(), PolyError> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(PolyError::VarTableMismatch)
        }
    }

    fn assert_table(&self, other: &Polynomial) {
        assert!(same_table(&self.table, &other.table), "polynomials over different variable tables");
    }

    fn add_ref(&self, other: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), c.clone());
        }
        Polynomial { table: self.table.clone(), terms }
    }

    fn sub_ref(&self, other: &Polynomial) -> Polynomial {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, m.clone(), -c.clone());
        }
        Polynomial { table: self.table.clone(), terms }
    }

    fn mul_ref(&self, other: &Polynomial) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                add_term(&mut terms, ma.mul(mb), ca * cb);
            }
        }
        Polynomial { table: self.table.clone(), terms }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.table);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Polynomial { table: self.table.clone(), terms }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.table);
        }
        let terms = self.terms.iter().map(|(a, x)| (a.mul(m), x * c)).collect();
        Polynomial { table: self.table.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.table);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative by variable index.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derivative(var) {
                add_term(&mut terms, dm, c * rat(e as i64));
            }
        }
        Polynomial { table: self.table.clone(), terms }
    }

    /// Evaluates at a dense point indexed like the table.
    pub fn eval_dense(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.iter() {
                t *= pow_rat(&point[v], e);
            }
            acc += t;
        }
        acc
    }

    /// Moves the polynomial to `table`, renumbering variable `i` as `f(i)`.
    pub fn map_variables(&self, table: &Arc<VarTable>, f: impl Fn(usize) -> usize) -> Polynomial {
        Polynomial::from_terms(table, self.terms.iter().map(|(m, c)| (m.map_vars(&f), c.clone())))
    }

    /// Moves the polynomial to `table` by matching variable names.
    pub fn rename_into(&self, table: &Arc<VarTable>, rename: impl Fn(&str) -> String) -> Result<Polynomial, PolyError> {
        let mut map = HashMap::new();
        for v in self.variables() {
            let new_name = rename(self.table.name(v));
            map.insert(v, table.require(&new_name)?);
        }
        Ok(self.map_variables(table, |i| map[&i]))
    }

    /// Replaces variable `var` by `value` (a polynomial over the same table).
    pub fn substitute(&self, var: usize, value: &Polynomial) -> Polynomial {
        self.assert_table(value);
        let mut out = Polynomial::zero(&self.table);
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(&self.table)];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            while powers.len() <= e {
                let next = powers.last().expect("nonempty") * value;
                powers.push(next);
            }
            let rest = Monomial::from_pairs(m.iter().filter(|&(v, _)| v != var));
            out = &out + &powers[e].mul_monomial(&rest, c);
        }
        out
    }

    /// Scales so the grevlex-leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.terms.iter().next_back() {
            None => self.clone(),
            Some((_, lc)) => self.scale(&lc.recip()),
        }
    }

    /// True iff all terms have equal weighted degree under `weight`.
    pub fn is_weighted_homogeneous(&self, weight: impl Fn(usize) -> u64) -> Option<u64> {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(&weight));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).max().unwrap_or_else(Rational::zero)
    }
}

fn add_term(map: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        self.assert_table(rhs);
        self.add_ref(rhs)
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        self.assert_table(rhs);
        self.sub_ref(rhs)
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        self.assert_table(rhs);
        self.mul_ref(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}


/// Serde helpers writing rationals as `"p"` or `"p/q"` strings.
pub mod rational_str {
    use serde::Serializer;

    use super::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn vec<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.to_string()))
    }

    pub fn matrices<S: Serializer>(v: &[Vec<Vec<Rational>>], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<Vec<Vec<String>>> =
            v.iter().map(|m| m.iter().map(|row| row.iter().map(|r| r.to_string()).collect()).collect()).collect();
        s.collect_seq(strings)
    }
}
