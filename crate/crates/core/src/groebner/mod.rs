//! Exact Gröbner bases over ℚ.
//!
//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer–Möller installation of Buchberger's two criteria. Every run is
//! deterministic: pairs are selected by `(deg lcm, lcm, i, j)` and no hash
//! iteration order leaks into the result.

mod dimension;
mod order;

use std::cmp::Ordering;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::polynomial::{Monomial, PolyError, Polynomial, Rational, VarTable};

pub use dimension::krull_dimension;
pub use order::TermOrder;

/// Resource caps for a single basis computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_pair_reductions: u64,
    pub max_degree: u32,
    pub time_limit: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_pair_reductions: 1_000_000, max_degree: 40, time_limit: None }
    }
}

impl Budget {
    pub fn with_max_pairs(mut self, n: u64) -> Self {
        self.max_pair_reductions = n;
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerStats {
    /// S-pairs that were actually formed and reduced.
    pub spairs_reduced: u64,
    /// S-pairs discarded by the product or chain criterion.
    pub spairs_eliminated: u64,
    pub zero_reductions: u64,
    pub max_degree: u32,
    pub basis_size: usize,
}

impl GroebnerStats {
    pub fn absorb(&mut self, other: &GroebnerStats) {
        self.spairs_reduced += other.spairs_reduced;
        self.spairs_eliminated += other.spairs_eliminated;
        self.zero_reductions += other.zero_reductions;
        self.max_degree = self.max_degree.max(other.max_degree);
        self.basis_size = self.basis_size.max(other.basis_size);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetLimit {
    PairReductions,
    Degree,
    Time,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GroebnerError {
    #[error("Gröbner budget exceeded ({limit:?}) after {} S-pair reductions", stats.spairs_reduced)]
    BudgetExceeded { limit: BudgetLimit, stats: GroebnerStats },
    #[error("empty generator list")]
    EmptyInput,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Polynomial with terms sorted ascending in the active order (leader last).
#[derive(Clone, Debug)]
pub(crate) struct SortedPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl SortedPoly {
    fn from_poly(p: &Polynomial, order: TermOrder) -> Self {
        let mut terms: Vec<(Monomial, Rational)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        SortedPoly { terms }
    }

    fn to_poly(&self, table: &Arc<VarTable>) -> Polynomial {
        Polynomial::from_terms(table, self.terms.iter().cloned())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero polynomial").0
    }

    fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.last() {
            if !lc.is_one() {
                let inv = lc.recip();
                for (_, c) in &mut self.terms {
                    *c *= &inv;
                }
            }
        }
    }

    /// `self - c * m * g`, assuming both are sorted ascending.
    fn sub_scaled(&self, c: &Rational, m: &Monomial, g: &SortedPoly, order: TermOrder) -> SortedPoly {
        let a = &self.terms;
        let b: Vec<(Monomial, Rational)> = g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc * c)).collect();
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0.clone(), -b[j].1.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].1 - &b[j].1;
                    if !s.is_zero() {
                        out.push((a[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(bm, bc)| (bm.clone(), -bc.clone())));
        SortedPoly { terms: out }
    }
}

struct Reducer<'a> {
    order: TermOrder,
    polys: &'a [SortedPoly],
    masks: Vec<u64>,
    active: &'a [usize],
}

impl<'a> Reducer<'a> {
    fn new(order: TermOrder, polys: &'a [SortedPoly], active: &'a [usize]) -> Self {
        let masks = polys.iter().map(|p| p.lm().mask()).collect();
        Reducer { order, polys, masks, active }
    }

    fn find_divisor(&self, m: &Monomial, skip: Option<usize>) -> Option<usize> {
        let mm = m.mask();
        self.active.iter().copied().find(|&g| {
            Some(g) != skip && self.masks[g] & !mm == 0 && self.polys[g].lm().divides(m)
        })
    }

    /// Full reduction; reducers are assumed monic.
    fn reduce(&self, f: SortedPoly, skip: Option<usize>) -> SortedPoly {
        let mut p = f;
        let mut rem: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((m, c)) = p.terms.last() {
            match self.find_divisor(m, skip) {
                Some(g) => {
                    let q = m.div(self.polys[g].lm()).expect("divisor");
                    let c = c.clone();
                    p = p.sub_scaled(&c, &q, &self.polys[g], self.order);
                }
                None => rem.push(p.terms.pop().expect("nonempty")),
            }
        }
        rem.reverse();
        SortedPoly { terms: rem }
    }
}

/// Reduced, monic Gröbner basis together with the run statistics.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    table: Arc<VarTable>,
    order: TermOrder,
    generators: Vec<Polynomial>,
    sorted: Vec<SortedPoly>,
    stats: GroebnerStats,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn stats(&self) -> &GroebnerStats {
        &self.stats
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|p| p.lm().clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.sorted.iter().any(|p| p.lm().is_one())
    }

    /// Unique remainder of `p` modulo the ideal.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        assert!(p.check_table(&Polynomial::zero(&self.table)).is_ok(), "variable table mismatch");
        let active: Vec<usize> = (0..self.sorted.len()).collect();
        let r = Reducer::new(self.order, &self.sorted, &active);
        r.reduce(SortedPoly::from_poly(p, self.order), None).to_poly(&self.table)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Post-hoc Buchberger criterion: every S-polynomial reduces to zero.
    pub fn verify(&self) -> bool {
        let active: Vec<usize> = (0..self.sorted.len()).collect();
        let r = Reducer::new(self.order, &self.sorted, &active);
        for i in 0..self.sorted.len() {
            for j in (i + 1)..self.sorted.len() {
                let s = spoly(&self.sorted[i], &self.sorted[j], self.order);
                if !r.reduce(s, None).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

fn spoly(f: &SortedPoly, g: &SortedPoly, order: TermOrder) -> SortedPoly {
    let l = f.lm().lcm(g.lm());
    let mf = l.div(f.lm()).expect("lcm");
    let mg = l.div(g.lm()).expect("lcm");
    let scaled_f = SortedPoly {
        terms: f.terms.iter().map(|(m, c)| (m.mul(&mf), c / &f.terms.last().expect("nonzero").1)).collect(),
    };
    let lcg = g.terms.last().expect("nonzero").1.recip();
    scaled_f.sub_scaled(&lcg, &mg, g, order)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'b> {
    order: TermOrder,
    budget: &'b Budget,
    start: Instant,
    polys: Vec<SortedPoly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    stats: GroebnerStats,
}

impl<'b> Engine<'b> {
    fn check_budget(&self) -> Result<(), GroebnerError> {
        let fail = |limit| Err(GroebnerError::BudgetExceeded { limit, stats: self.stats.clone() });
        if self.stats.spairs_reduced > self.budget.max_pair_reductions {
            return fail(BudgetLimit::PairReductions);
        }
        if self.stats.max_degree > self.budget.max_degree {
            return fail(BudgetLimit::Degree);
        }
        if let Some(t) = self.budget.time_limit {
            if self.start.elapsed() > t {
                return fail(BudgetLimit::Time);
            }
        }
        Ok(())
    }

    /// Gebauer–Möller update for a new basis element `h`.
    fn update(&mut self, h: usize) {
        let lm_h = self.polys[h].lm().clone();
        let cands: Vec<(usize, Monomial)> =
            self.active.iter().map(|&g| (g, lm_h.lcm(self.polys[g].lm()))).collect();
        let mut kept: Vec<usize> = Vec::new();
        for idx in 0..cands.len() {
            let (g, l) = &cands[idx];
            let coprime = lm_h.is_coprime(self.polys[*g].lm());
            let dominated = cands[idx + 1..].iter().any(|(_, l2)| l2.divides(l))
                || kept.iter().any(|&k| cands[k].1.divides(l));
            if coprime || !dominated {
                kept.push(idx);
            } else {
                self.stats.spairs_eliminated += 1;
            }
        }
        let before = self.pairs.len();
        let polys = &self.polys;
        self.pairs.retain(|p| {
            let li = lm_h.lcm(polys[p.i].lm());
            let lj = lm_h.lcm(polys[p.j].lm());
            !(lm_h.divides(&p.lcm) && li != p.lcm && lj != p.lcm)
        });
        self.stats.spairs_eliminated += (before - self.pairs.len()) as u64;
        for idx in kept {
            let (g, l) = &cands[idx];
            if lm_h.is_coprime(self.polys[*g].lm()) {
                self.stats.spairs_eliminated += 1;
            } else {
                self.pairs.push(Pair { i: *g, j: h, lcm: l.clone() });
            }
        }
        let polys = &self.polys;
        self.active.retain(|&g| !lm_h.divides(polys[g].lm()));
        self.active.push(h);
    }

    fn select_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.lcm
                .degree()
                .cmp(&pb.lcm.degree())
                .then_with(|| order.cmp(&pa.lcm, &pb.lcm))
                .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn push(&mut self, p: SortedPoly) -> usize {
        self.stats.max_degree = self.stats.max_degree.max(p.degree());
        self.polys.push(p);
        self.polys.len() - 1
    }
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Polynomial], order: TermOrder, budget: &Budget) -> Result<GroebnerBasis, GroebnerError> {
    let first = gens.first().ok_or(GroebnerError::EmptyInput)?;
    let table = first.table().clone();
    for g in gens {
        first.check_table(g)?;
    }
    let mut engine = Engine {
        order,
        budget,
        start: Instant::now(),
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        stats: GroebnerStats::default(),
    };
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let mut s = SortedPoly::from_poly(g, order);
        s.make_monic();
        let h = engine.push(s);
        engine.check_budget()?;
        engine.update(h);
    }
    while let Some(pair) = engine.select_pair() {
        engine.stats.spairs_reduced += 1;
        engine.check_budget()?;
        let s = spoly(&engine.polys[pair.i], &engine.polys[pair.j], order);
        engine.stats.max_degree = engine.stats.max_degree.max(s.degree());
        let h = {
            let r = Reducer::new(order, &engine.polys, &engine.active);
            r.reduce(s, None)
        };
        if h.is_zero() {
            engine.stats.zero_reductions += 1;
            continue;
        }
        let mut h = h;
        h.make_monic();
        let idx = engine.push(h);
        engine.check_budget()?;
        engine.update(idx);
    }
    finish(&table, order, engine)
}

fn finish(table: &Arc<VarTable>, order: TermOrder, engine: Engine<'_>) -> Result<GroebnerBasis, GroebnerError> {
    let Engine { polys, active, mut stats, .. } = engine;
    // minimalize: drop elements whose leader is divisible by another leader
    let mut minimal: Vec<usize> = Vec::new();
    for &g in &active {
        let lm = polys[g].lm();
        let redundant = active.iter().any(|&h| {
            h != g && polys[h].lm().divides(lm) && (polys[h].lm() != lm || h < g)
        });
        if !redundant {
            minimal.push(g);
        }
    }
    let mut reduced: Vec<SortedPoly> = Vec::with_capacity(minimal.len());
    {
        let r = Reducer::new(order, &polys, &minimal);
        for &g in &minimal {
            let mut p = r.reduce(polys[g].clone(), Some(g));
            p.make_monic();
            reduced.push(p);
        }
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    if reduced.iter().any(|p| p.lm().is_one()) {
        reduced = vec![SortedPoly { terms: vec![(Monomial::one(), Rational::one())] }];
    }
    stats.basis_size = reduced.len();
    let generators = reduced.iter().map(|p| p.to_poly(table)).collect();
    Ok(GroebnerBasis { table: table.clone(), order, generators, sorted: reduced, stats })
}

/// Remainder of `p` modulo `gb`.
pub fn normal_form(p: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial, GroebnerError> {
    p.check_table(&Polynomial::zero(gb.table()))?;
    Ok(gb.normal_form(p))
}

/// Mutual membership of two generator lists.
pub fn ideal_equal(a: &[Polynomial], b: &[Polynomial], order: TermOrder, budget: &Budget) -> Result<bool, GroebnerError> {
    let nonzero = |v: &[Polynomial]| v.iter().any(|p| !p.is_zero());
    match (nonzero(a), nonzero(b)) {
        (false, false) => return Ok(true),
        (x, y) if x != y => return Ok(false),
        _ => {}
    }
    let ga = buchberger(a, order, budget)?;
    let gb = buchberger(b, order, budget)?;
    Ok(b.iter().all(|p| ga.contains(p)) && a.iter().all(|p| gb.contains(p)))
}

/// Generators of the elimination ideal `⟨gens⟩ ∩ ℚ[keep]`, returned over the
/// original table.
pub fn eliminate(gens: &[Polynomial], keep: &[usize], budget: &Budget) -> Result<Vec<Polynomial>, GroebnerError> {
    let first = gens.first().ok_or(GroebnerError::EmptyInput)?;
    let table = first.table().clone();
    let nvars = table.len();
    let keep_set: Vec<bool> = (0..nvars).map(|i| keep.contains(&i)).collect();
    let mut perm: Vec<usize> = (0..nvars).filter(|&i| !keep_set[i]).collect();
    let split = perm.len();
    perm.extend((0..nvars).filter(|&i| keep_set[i]));
    // perm[new] = old
    let mut inverse = vec![0; nvars];
    for (new, &old) in perm.iter().enumerate() {
        inverse[old] = new;
    }
    let permuted = VarTable::shared(perm.iter().map(|&o| table.name(o).to_string()))?;
    let moved: Vec<Polynomial> = gens
        .iter()
        .map(|g| {
            first.check_table(g)?;
            Ok(g.map_variables(&permuted, |i| inverse[i]))
        })
        .collect::<Result<_, GroebnerError>>()?;
    let gb = buchberger(&moved, TermOrder::Block(split), budget)?;
    Ok(gb
        .generators()
        .iter()
        .filter(|p| p.variables().iter().all(|&v| v >= split))
        .map(|p| p.map_variables(&table, |i| perm[i]))
        .collect())
}

/// Variant of [`eliminate`] taking variable names.
pub fn eliminate_named(gens: &[Polynomial], keep: &[&str], budget: &Budget) -> Result<Vec<Polynomial>, GroebnerError> {
    let table = gens.first().ok_or(GroebnerError::EmptyInput)?.table().clone();
    let idx = keep.iter().map(|n| table.require(n)).collect::<Result<Vec<_>, _>>()?;
    eliminate(gens, &idx, budget)
}
