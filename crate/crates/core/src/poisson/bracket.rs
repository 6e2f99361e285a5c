//! The Poisson bracket on the chart, from generators up to polynomials.

use std::collections::HashMap;

use crate::polynomial::{rat, Polynomial};

use super::{DualAction, GroupChart, PoissonError};

/// Sign and dual-action conventions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PoissonConfig {
    /// Global sign of the generator bracket; `+1` reproduces
    /// `(u−v){T_ij(u), T_kl(v)} = T_il(u)T_kj(v) − T_kj(u)T_il(v)`.
    pub sign: i8,
    pub dual_action: DualAction,
}

impl Default for PoissonConfig {
    fn default() -> Self {
        PoissonConfig { sign: 1, dual_action: DualAction::Contragredient }
    }
}

/// Per-task bracket evaluator with a memo of generator brackets.
pub struct BracketEngine<'a> {
    chart: &'a GroupChart,
    config: PoissonConfig,
    memo: HashMap<(usize, usize), Polynomial>,
}

impl<'a> BracketEngine<'a> {
    pub fn new(chart: &'a GroupChart) -> Self {
        BracketEngine::with_config(chart, PoissonConfig::default())
    }

    pub fn with_config(chart: &'a GroupChart, config: PoissonConfig) -> Self {
        BracketEngine { chart, config, memo: HashMap::new() }
    }

    pub fn chart(&self) -> &'a GroupChart {
        self.chart
    }

    pub fn config(&self) -> PoissonConfig {
        self.config
    }

    /// `{g[i][j][r], g[k][l][s]} = Σ_{a<r} (T_il^(a) T_kj^(r+s−1−a) − T_kj^(a) T_il^(r+s−1−a))`.
    pub fn generator_bracket(&mut self, x: usize, y: usize) -> Result<Polynomial, PoissonError> {
        if let Some(p) = self.memo.get(&(x, y)) {
            return Ok(p.clone());
        }
        let c = self.chart;
        let (i, j, r) = c.var_label(x);
        let (k, l, s) = c.var_label(y);
        let top = r + s - 1;
        if top > c.truncation() {
            return Err(PoissonError::TruncationExceeded { required: top, truncation: c.truncation() });
        }
        let mut acc = Polynomial::zero(c.table());
        for a in 0..r {
            let b = top - a;
            acc = &acc + &(&(&c.entry(i, l, a) * &c.entry(k, j, b)) - &(&c.entry(k, j, a) * &c.entry(i, l, b)));
        }
        let acc = acc.scale(&rat(self.config.sign.into()));
        self.memo.insert((x, y), acc.clone());
        Ok(acc)
    }

    /// `{p, q} = Σ_{x,y} ∂_x p ∂_y q {x, y}`.
    pub fn bracket(&mut self, p: &Polynomial, q: &Polynomial) -> Result<Polynomial, PoissonError> {
        let table = self.chart.table().clone();
        p.check_table(q)?;
        Polynomial::zero(&table).check_table(p)?;
        let dq: Vec<(usize, Polynomial)> = q.variables().into_iter().map(|y| (y, q.derivative(y))).collect();
        let mut acc = Polynomial::zero(&table);
        for x in p.variables() {
            let dx = p.derivative(x);
            for (y, dy) in &dq {
                let g = self.generator_bracket(x, *y)?;
                if !g.is_zero() {
                    acc = &acc + &(&(&dx * dy) * &g);
                }
            }
        }
        Ok(acc)
    }
}

/// One-shot bracket with a fresh memo.
pub fn bracket(p: &Polynomial, q: &Polynomial, chart: &GroupChart) -> Result<Polynomial, PoissonError> {
    BracketEngine::new(chart).bracket(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_examples() {
        let c = GroupChart::new(2, 3).unwrap();
        let g = |i, j, s| c.var(i, j, s);
        assert!(bracket(&g(1, 1, 1), &g(1, 1, 1), &c).unwrap().is_zero());
        assert_eq!(bracket(&g(1, 1, 1), &g(1, 2, 1), &c).unwrap(), -&g(1, 2, 1));
        let one = Polynomial::one(c.table()).scale(&rat(7));
        assert!(bracket(&one, &g(2, 1, 2), &c).unwrap().is_zero());
        assert_eq!(
            bracket(&g(1, 2, 2), &g(1, 1, 1), &c).unwrap(),
            g(1, 2, 2),
        );
        assert!(matches!(
            bracket(&g(1, 2, 2), &g(1, 1, 3), &c),
            Err(PoissonError::TruncationExceeded { required: 4, truncation: 3 })
        ));
    }

    #[test]
    fn sign_is_configurable() {
        let c = GroupChart::new(2, 2).unwrap();
        let mut e = BracketEngine::with_config(&c, PoissonConfig { sign: -1, ..Default::default() });
        assert_eq!(e.bracket(&c.var(1, 1, 1), &c.var(1, 2, 1)).unwrap(), c.var(1, 2, 1));
    }

    #[test]
    fn leibniz_extension_by_hand() {
        // {g11, g12 g21} = {g11, g12} g21 + g12 {g11, g21} = −g12 g21 + g12 g21
        let c = GroupChart::new(2, 2).unwrap();
        let (a, b, d) = (c.var(1, 1, 1), c.var(1, 2, 1), c.var(2, 1, 1));
        assert!(bracket(&a, &(&b * &d), &c).unwrap().is_zero());
    }
}
