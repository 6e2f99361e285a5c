//! Minor series, the series `f_i(u)`, and the symbolic checks built on them.

use std::collections::HashMap;

use num_traits::One;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::groebner::{buchberger, eliminate, ideal_equal, Budget, TermOrder};
use crate::lattice::{dual_star, threshold_data, Coweight, RootDatum};
use crate::polynomial::{rat, Polynomial, Rational};
use crate::slice::{slice_generators, subsets_of_size};

use super::{
    residue_plus, BracketEngine, DualBasisTable, ExtVec, GroupChart, Laurent, LieElem, MinorLabel, PoissonConfig,
    PoissonError, SeriesU, VerificationRecord,
};

/// Minor of `g(u)` on 0-based `rows`, `cols`, truncated at the chart order.
pub(crate) fn truncated_minor(chart: &GroupChart, rows: &[usize], cols: &[usize]) -> SeriesU {
    let table = chart.table();
    let n_trunc = chart.truncation();
    let entry = |i: usize, j: usize| {
        SeriesU::from_coeffs(table, (0..=n_trunc).map(|s| chart.entry(i + 1, j + 1, s)).collect(), n_trunc)
    };
    let l = rows.len();
    let mut memo: HashMap<u32, SeriesU> = HashMap::from([(0, SeriesU::one(table, n_trunc))]);
    for &row in rows {
        let mut next: HashMap<u32, SeriesU> = HashMap::new();
        for (mask, acc) in &memo {
            for (c, &col) in cols.iter().enumerate() {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let mut term = acc.mul(&entry(row, col));
                if (mask >> (c + 1)).count_ones() % 2 == 1 {
                    term = term.scale(&-Rational::one());
                }
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

/// Bracket engine plus a per-task cache of minor series.
struct Session<'a> {
    chart: &'a GroupChart,
    engine: BracketEngine<'a>,
    minors: HashMap<(Vec<usize>, Vec<usize>), SeriesU>,
}

impl<'a> Session<'a> {
    fn new(chart: &'a GroupChart, config: PoissonConfig) -> Self {
        Session { chart, engine: BracketEngine::with_config(chart, config), minors: HashMap::new() }
    }

    fn minor(&mut self, rows: &[usize], cols: &[usize]) -> SeriesU {
        let key = (rows.to_vec(), cols.to_vec());
        if let Some(s) = self.minors.get(&key) {
            return s.clone();
        }
        let s = truncated_minor(self.chart, rows, cols);
        self.minors.insert(key, s.clone());
        s
    }

    /// `Δ_{β,γ}(u) = Σ β_R γ_C Δ_{R,C}(u)`.
    fn generalized(&mut self, beta: &ExtVec, gamma: &ExtVec) -> SeriesU {
        let mut acc = SeriesU::zero(self.chart.table(), self.chart.truncation());
        for (r, b) in beta.terms() {
            for (c, g) in gamma.terms() {
                acc = acc.add(&self.minor(r, c).scale(&(b * g)));
            }
        }
        acc
    }

    fn bracket(&mut self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial, PoissonError> {
        self.engine.bracket(p, q)
    }

    fn f_series(&mut self, i: usize) -> Result<SeriesU, PoissonError> {
        let n = self.chart.n();
        if i == 0 || i >= n {
            return Err(PoissonError::LabelInvalid(format!("fundamental index {i} for n = {n}")));
        }
        let vi: Vec<usize> = (0..i).collect();
        let mut shifted = vi.clone();
        shifted[i - 1] = i;
        let num = self.minor(&vi, &shifted);
        let den = self.minor(&vi, &vi).inverse()?;
        Ok(num.mul(&den))
    }
}

/// `Δ_{label}(u)` truncated at the chart order.
pub fn delta_series(label: &MinorLabel, chart: &GroupChart) -> Result<SeriesU, PoissonError> {
    label.check(chart)?;
    let rows: Vec<usize> = label.rows.iter().map(|r| r - 1).collect();
    let cols: Vec<usize> = label.cols.iter().map(|c| c - 1).collect();
    Ok(truncated_minor(chart, &rows, &cols))
}

/// `Δ_{β,γ}(u)` for dual vector `β` and vector `γ` in `Λ^i`.
pub fn generalized_minor(beta: &ExtVec, gamma: &ExtVec, chart: &GroupChart) -> SeriesU {
    Session::new(chart, PoissonConfig::default()).generalized(beta, gamma)
}

/// `f_i(u) = Δ_{v_i*, f_i v_i}(u) / Δ_{v_i*, v_i}(u)`.
pub fn f_series(i: usize, chart: &GroupChart) -> Result<SeriesU, PoissonError> {
    Session::new(chart, PoissonConfig::default()).f_series(i)
}

/// All labels `Δ_{v_i*, e_C}` with `|C| = i`.
pub fn lemma_labels(n: usize, i: usize) -> Vec<MinorLabel> {
    subsets_of_size(n, i)
        .into_iter()
        .map(|c| MinorLabel::highest_row(n, c.into_iter().map(|x| x + 1).collect()).expect("valid subset"))
        .collect()
}

fn reduce_into(chart: &GroupChart, rec: &mut VerificationRecord, context: &str, residual: Polynomial) -> Result<(), PoissonError> {
    let r = chart.reduce(&residual)?;
    rec.record(context, &r);
    Ok(())
}

/// Checks `(u−v){Δ_1(u), Δ_2(v)} = Σ_a (Δ_{β1,J_aγ1}(u)Δ_{β2,J^aγ2}(v) − Δ_{J_aβ1,γ1}(u)Δ_{J^aβ2,γ2}(v))`
/// at every `u^-r v^-s` with `r, s < N` and `r + s ≤ N`.
pub fn verify_minor_bracket_identity(
    label1: &MinorLabel,
    label2: &MinorLabel,
    chart: &GroupChart,
    config: PoissonConfig,
) -> Result<VerificationRecord, PoissonError> {
    label1.check(chart)?;
    label2.check(chart)?;
    let n_trunc = chart.truncation();
    let mut rec = VerificationRecord::new("minors", n_trunc)
        .param("n", chart.n())
        .param("label1", format!("{:?}|{:?}", label1.rows, label1.cols))
        .param("label2", format!("{:?}|{:?}", label2.rows, label2.cols));
    let mut sess = Session::new(chart, config);
    let (b1, g1, b2, g2) = (label1.beta(), label1.gamma(), label2.beta(), label2.gamma());
    let d1 = sess.generalized(&b1, &g1);
    let d2 = sess.generalized(&b2, &g2);
    let basis = DualBasisTable::sl(chart.n());
    let dual = config.dual_action;
    let mut pairs = Vec::with_capacity(basis.len());
    for (lo, up) in basis.lower.iter().zip(&basis.upper) {
        pairs.push((
            sess.generalized(&b1, &lo.act(&g1)),
            sess.generalized(&b2, &up.act(&g2)),
            sess.generalized(&dual.act(lo, &b1), &g1),
            sess.generalized(&dual.act(up, &b2), &g2),
        ));
    }
    for r in 0..n_trunc {
        for s in 0..n_trunc.min(n_trunc + 1 - r) {
            let lhs = &sess.bracket(d1.coeff(r + 1), d2.coeff(s))? - &sess.bracket(d1.coeff(r), d2.coeff(s + 1))?;
            let mut rhs = Polynomial::zero(chart.table());
            for (a, b, c, d) in &pairs {
                rhs = &rhs + &(&(a.coeff(r) * b.coeff(s)) - &(c.coeff(r) * d.coeff(s)));
            }
            reduce_into(chart, &mut rec, &format!("u^-{r} v^-{s}"), &lhs - &rhs)?;
        }
    }
    Ok(rec)
}

/// Checks `{f_j^(k+1), Δ_{v_i*,γ}(v)} = v^k Δ_{v_i*, f_jγ}(v) + (α_j, wt γ) p(v) Δ_{v_i*,γ}(v)
/// + Σ_α q_α(v) Δ_{v_i*, e_α γ}(v)` at every power of `v` from `v^k` down to
/// `v^(k−N)`, together with `deg p, deg q_α ≤ k − 1`.
pub fn verify_lemma_bracket_f(
    j: usize,
    k: usize,
    label: &MinorLabel,
    chart: &GroupChart,
    config: PoissonConfig,
) -> Result<VerificationRecord, PoissonError> {
    label.check(chart)?;
    let n = chart.n();
    let n_trunc = chart.truncation();
    if label.rows != (1..=label.i).collect::<Vec<_>>() {
        return Err(PoissonError::LabelInvalid(format!("rows {:?} are not 1..{}", label.rows, label.i)));
    }
    if k == 0 {
        return Err(PoissonError::LabelInvalid("k must be at least 1".into()));
    }
    if k + 1 > n_trunc {
        return Err(PoissonError::TruncationExceeded { required: k + 1, truncation: n_trunc });
    }
    let mut rec = VerificationRecord::new("lemma-f", n_trunc)
        .param("n", n)
        .param("j", j)
        .param("k", k)
        .param("label", format!("{:?}|{:?}", label.rows, label.cols));
    let mut sess = Session::new(chart, config);
    let f = sess.f_series(j)?;
    let table = chart.table().clone();
    let (ki, top) = (k as i64, (n_trunc - k) as i64);

    let vi_star = label.beta();
    let gamma = label.gamma();
    let delta = sess.generalized(&vi_star, &gamma);
    let mut lhs = Laurent::new(&table, Default::default(), Some(-top));
    for s in 0..=n_trunc - k {
        let b = sess.bracket(f.coeff(k + 1), delta.coeff(s))?;
        lhs = lhs.add(&Laurent::monomial(&table, -(s as i64), b));
    }

    let fj = LieElem::unit(j, j - 1);
    let mut rhs = sess.generalized(&vi_star, &fj.act(&gamma)).to_laurent().shift(ki);

    let p = residue_plus(&f.to_laurent(), ki).scale(&-Rational::one());
    if p.degree().is_some_and(|d| d > ki - 1) || p.floor().is_some() {
        rec.fail(format!("deg p exceeds {}", k - 1));
    }
    let pairing = label.weight[j - 1] - label.weight[j];
    rhs = rhs.add(&p.mul(&delta.to_laurent()).scale(&rat(pairing)));

    let vj: Vec<usize> = (0..j).collect();
    let vj_vec = ExtVec::basis(vj.clone());
    let vj_star = ExtVec::basis(vj);
    let inv = sess.generalized(&vj_star, &vj_vec).inverse()?;
    let fj_vj = fj.act(&vj_vec);
    let b_series = sess.generalized(&vj_star, &fj_vj);
    for (a, b) in super::positive_roots(n) {
        let f_alpha = LieElem::unit(b, a);
        let first = sess.generalized(&vj_star, &f_alpha.act(&fj_vj)).mul(&inv);
        let second = b_series.mul(&sess.generalized(&vj_star, &f_alpha.act(&vj_vec))).mul(&inv).mul(&inv);
        let q = residue_plus(&first.sub(&second).to_laurent(), ki);
        if q.degree().is_some_and(|d| d > ki - 1) || q.floor().is_some() {
            rec.fail(format!("deg q for root ({}, {}) exceeds {}", a + 1, b + 1, k - 1));
        }
        let e_gamma = LieElem::unit(a, b).act(&gamma);
        if !e_gamma.is_zero() {
            rhs = rhs.add(&q.mul(&sess.generalized(&vi_star, &e_gamma).to_laurent()));
        }
    }

    if rhs.floor().is_some_and(|fl| fl > -top) {
        rec.fail(format!("right side only known down to v^{}", rhs.floor().unwrap_or_default()));
    }
    for e in (-top..=ki).rev() {
        reduce_into(chart, &mut rec, &format!("v^{e}"), &lhs.coeff(e) - &rhs.coeff(e))?;
    }
    Ok(rec)
}

/// How [`verify_axioms`] chooses generator tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomSampling {
    Exhaustive,
    /// Up to `samples` tuples per axiom, drawn without replacement.
    Sampled { seed: u64, samples: usize },
}

fn pick<T: Clone>(all: Vec<T>, sampling: AxiomSampling, salt: u64) -> Vec<T> {
    match sampling {
        AxiomSampling::Exhaustive => all,
        AxiomSampling::Sampled { seed, samples } if samples < all.len() => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ salt);
            let mut idx = sample(&mut rng, all.len(), samples).into_vec();
            idx.sort_unstable();
            idx.into_iter().map(|i| all[i].clone()).collect()
        }
        AxiomSampling::Sampled { .. } => all,
    }
}

/// Antisymmetry, Leibniz and Jacobi on generators within the truncation, and
/// Poisson-centrality of the determinant coefficients. One record per axiom.
pub fn verify_axioms(
    chart: &GroupChart,
    sampling: AxiomSampling,
    config: PoissonConfig,
) -> Result<Vec<VerificationRecord>, PoissonError> {
    let n_trunc = chart.truncation();
    let nv = chart.table().len();
    let ord = |x: usize| chart.var_label(x).2;
    let var = |x: usize| Polynomial::var(chart.table(), x);
    let mut engine = BracketEngine::with_config(chart, config);
    let base = |name: &str| {
        let mut r = VerificationRecord::new(name, n_trunc).param("n", chart.n());
        r = match sampling {
            AxiomSampling::Exhaustive => r.param("mode", "exhaustive"),
            AxiomSampling::Sampled { seed, samples } => r.param("mode", "sampled").param("seed", seed).param("samples", samples),
        };
        r
    };

    let mut anti = base("antisymmetry");
    let pairs: Vec<(usize, usize)> =
        (0..nv).flat_map(|x| (x..nv).map(move |y| (x, y))).filter(|&(x, y)| ord(x) + ord(y) <= n_trunc + 1).collect();
    for (x, y) in pick(pairs, sampling, 1) {
        let r = &engine.bracket(&var(x), &var(y))? + &engine.bracket(&var(y), &var(x))?;
        reduce_into(chart, &mut anti, &format!("{{{}, {}}}", chart.table().name(x), chart.table().name(y)), r)?;
    }

    let mut leibniz = base("leibniz");
    let triples: Vec<(usize, usize, usize)> = (0..nv)
        .flat_map(|x| (0..nv).flat_map(move |y| (y..nv).map(move |z| (x, y, z))))
        .filter(|&(x, y, z)| ord(x) + ord(y) <= n_trunc + 1 && ord(x) + ord(z) <= n_trunc + 1)
        .collect();
    for (x, y, z) in pick(triples, sampling, 2) {
        let (px, py, pz) = (var(x), var(y), var(z));
        let lhs = engine.bracket(&px, &(&py * &pz))?;
        let rhs = &(&engine.bracket(&px, &py)? * &pz) + &(&py * &engine.bracket(&px, &pz)?);
        let names = [x, y, z].map(|v| chart.table().name(v).to_string());
        reduce_into(chart, &mut leibniz, &format!("{{{}, {}*{}}}", names[0], names[1], names[2]), &lhs - &rhs)?;
    }

    let mut jacobi = base("jacobi");
    let triples: Vec<(usize, usize, usize)> = (0..nv)
        .flat_map(|x| (x..nv).flat_map(move |y| (y..nv).map(move |z| (x, y, z))))
        .filter(|&(x, y, z)| ord(x) + ord(y) + ord(z) <= n_trunc + 2)
        .collect();
    for (x, y, z) in pick(triples, sampling, 3) {
        let (px, py, pz) = (var(x), var(y), var(z));
        let (yz, zx, xy) = (engine.bracket(&py, &pz)?, engine.bracket(&pz, &px)?, engine.bracket(&px, &py)?);
        let a = engine.bracket(&px, &yz)?;
        let b = engine.bracket(&py, &zx)?;
        let c = engine.bracket(&pz, &xy)?;
        let names = [x, y, z].map(|v| chart.table().name(v).to_string());
        reduce_into(chart, &mut jacobi, &format!("({}, {}, {})", names[0], names[1], names[2]), &(&a + &b) + &c)?;
    }

    let mut central = base("det-central");
    let det = chart.minor_series(&(0..chart.n()).collect::<Vec<_>>(), &(0..chart.n()).collect::<Vec<_>>());
    for r in 1..=n_trunc {
        for x in (0..nv).filter(|&x| r + ord(x) <= n_trunc + 1) {
            let b = engine.bracket(det.coeff(r), &var(x))?;
            reduce_into(chart, &mut central, &format!("{{det^({r}), {}}}", chart.table().name(x)), b)?;
        }
        for s in (1..=n_trunc).filter(|&s| r + s <= n_trunc + 1) {
            let b = engine.bracket(det.coeff(r), det.coeff(s))?;
            reduce_into(chart, &mut central, &format!("{{det^({r}), det^({s})}}"), b)?;
        }
    }
    Ok(vec![anti, leibniz, jacobi, central])
}

/// Threshold `θ` below which `Δ^(s)_{β, e_C}` is not an ideal generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub i: usize,
    /// 1-based column set `C`.
    pub cols: Vec<usize>,
    pub theta: i64,
}

/// Ideal generators `Δ^(s)_{β,γ}`, `θ < s ≤ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceGeneratorSet {
    pub generators: Vec<Polynomial>,
    /// `(label, s)` for each entry of `generators`.
    pub labels: Vec<(MinorLabel, usize)>,
    pub thresholds: Vec<Threshold>,
    /// Generators with `s > truncation` are cut.
    pub truncation: usize,
}

/// Generators `Δ^(s)_{β,γ}` with `s > m_i + ⟨μ*, ϖ_i∨ − wt γ⟩`, over all
/// fundamental `i` and weight vectors `β`, `γ`.
pub fn slice_generator_set(lambda: &Coweight, mu: &Coweight, chart: &GroupChart) -> Result<SliceGeneratorSet, PoissonError> {
    let n = chart.n();
    if lambda.rank() + 1 != n || mu.rank() + 1 != n {
        return Err(PoissonError::LabelInvalid(format!("coweights of rank {} on chart n = {n}", lambda.rank())));
    }
    let td = threshold_data(lambda, mu)?;
    let d = dual_star(mu)?.diagonal()?;
    let mut out = SliceGeneratorSet { generators: Vec::new(), labels: Vec::new(), thresholds: Vec::new(), truncation: chart.truncation() };
    let mut sess = Session::new(chart, PoissonConfig::default());
    for i in 1..n {
        let head: Rational = d[..i].iter().sum();
        let subsets = subsets_of_size(n, i);
        for cols in &subsets {
            let shift: Rational = &head - cols.iter().map(|&c| &d[c]).sum::<Rational>();
            let theta = Rational::from_integer(td.m[i - 1].into()) + shift;
            let theta = i64::try_from(theta.floor().to_integer()).expect("threshold fits in i64");
            out.thresholds.push(Threshold { i, cols: cols.iter().map(|c| c + 1).collect(), theta });
            let start = usize::try_from(theta + 1).unwrap_or(0).max(1);
            for rows in &subsets {
                let series = sess.minor(rows, cols);
                for s in start..=chart.truncation() {
                    if !series.coeff(s).is_zero() {
                        let label =
                            MinorLabel::new(n, rows.iter().map(|r| r + 1).collect(), cols.iter().map(|c| c + 1).collect())?;
                        out.generators.push(series.coeff(s).clone());
                        out.labels.push((label, s));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Poisson generators of `O(Gr_μ)` within the truncation:
/// `Δ_{e_i v_i*, v_i}^(s)`, `Δ_{v_i*, v_i}^(s)` and `f_i^(s)` for `s > μ_i`.
pub fn closure_generators(
    mu: &Coweight,
    chart: &GroupChart,
    config: PoissonConfig,
) -> Result<Vec<(String, Polynomial)>, PoissonError> {
    let n = chart.n();
    let mu_i = dual_star(mu)?.pairings();
    let mut sess = Session::new(chart, config);
    let mut out = Vec::new();
    for i in 1..n {
        let vi = ExtVec::basis((0..i).collect());
        let e_vi_star = config.dual_action.act(&LieElem::unit(i - 1, i), &vi);
        let raised = sess.generalized(&e_vi_star, &vi);
        let principal = sess.generalized(&vi, &vi);
        let f = sess.f_series(i)?;
        for s in 1..=chart.truncation() {
            out.push((format!("D(e{i} v{i}*, v{i})^({s})"), raised.coeff(s).clone()));
            out.push((format!("D(v{i}*, v{i})^({s})"), principal.coeff(s).clone()));
            if Rational::from_integer((s as i64).into()) > mu_i[i - 1] {
                out.push((format!("f{i}^({s})"), f.coeff(s).clone()));
            }
        }
    }
    Ok(out)
}

/// Brackets of every [`closure_generators`] element with every ideal
/// generator, where the truncation allows, reduce to zero modulo the ideal
/// and the chart relations.
pub fn verify_closure(
    lambda: &Coweight,
    mu: &Coweight,
    chart: &GroupChart,
    config: PoissonConfig,
    budget: &Budget,
) -> Result<VerificationRecord, PoissonError> {
    let ideal = slice_generator_set(lambda, mu, chart)?;
    let gens = closure_generators(mu, chart, config)?;
    let mut all = ideal.generators.clone();
    all.extend(chart.relations().iter().cloned());
    let gb = buchberger(&all, TermOrder::Grevlex, budget)?;
    let mut rec = VerificationRecord::new("closure", chart.truncation())
        .param("n", chart.n())
        .param("lambda", lambda)
        .param("mu", mu);
    let mut engine = BracketEngine::with_config(chart, config);
    let limit = chart.truncation() + 1;
    for (name, x) in &gens {
        for (y, (label, s)) in ideal.generators.iter().zip(&ideal.labels) {
            if chart.order_of(x) + chart.order_of(y) > limit {
                continue;
            }
            let b = engine.bracket(x, y)?;
            rec.record(&format!("{{{name}, D{:?}|{:?}^({s})}}", label.rows, label.cols), &gb.normal_form(&b));
        }
    }
    Ok(rec)
}

/// Outcome of [`compare_ideals_mu_zero`].
#[derive(Clone, Debug)]
pub struct CompareReport {
    pub record: VerificationRecord,
    /// Generators of the elimination ideal in the order-`≤ k` chart variables.
    pub eliminated: Vec<Polynomial>,
    /// `slice_generators(n, k)` with `x ↦ g`.
    pub expected: Vec<Polynomial>,
}

/// Eliminates every `g^(s)`, `s > k`, from the threshold generators for
/// `λ = knϖ_1`, `μ = 0` plus the chart relations, and compares the result
/// with the determinant ideal of `I + Σ_{s≤k} x^(s) t^-s`.
pub fn compare_ideals_mu_zero(n: usize, k: usize, truncation: usize, budget: &Budget) -> Result<CompareReport, PoissonError> {
    if truncation < k + 1 {
        return Err(PoissonError::TruncationExceeded { required: k + 1, truncation });
    }
    let chart = GroupChart::with_budget(n, truncation, budget.clone())?;
    let datum = RootDatum::sl(n);
    let lambda = Coweight::fundamental(&datum, 1)?.scale(&rat((k * n) as i64));
    let set = slice_generator_set(&lambda, &Coweight::zero(&datum), &chart)?;
    let mut gens = set.generators;
    gens.extend(chart.relations().iter().cloned());
    let keep: Vec<usize> = (0..chart.table().len()).filter(|&v| chart.var_label(v).2 <= k).collect();
    let eliminated = eliminate(&gens, &keep, budget)?;
    let expected = slice_generators(n, k)?
        .iter()
        .map(|p| p.rename_into(chart.table(), |name| format!("g{}", &name[1..])))
        .collect::<Result<Vec<_>, _>>()?;
    let equal = ideal_equal(&eliminated, &expected, TermOrder::Grevlex, budget)?;
    let mut record = VerificationRecord::new("ideal-compare", truncation).param("n", n).param("k", k);
    record.checked = 1;
    if !equal {
        let stray: Vec<String> = eliminated.iter().map(ToString::to_string).collect();
        record.fail(format!("elimination ideal generated by [{}]", stray.join(", ")));
    }
    Ok(CompareReport { record, eliminated, expected })
}
