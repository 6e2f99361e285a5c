//! Text format: terms in descending grevlex order joined by `" + "`.
//!
//! A term is `c*v1^e1*v2*...`, where the coefficient is `p` or `p/q`, a unit
//! coefficient is omitted (`-` for minus one), and exponents equal to one are
//! omitted. The zero polynomial prints as `0`. Printing and parsing round-trip
//! bit-exactly.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{Monomial, PolyError, Polynomial, Rational, VarTable};

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write_term(f, self.table(), m, c)?;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, table: &VarTable, m: &Monomial, c: &Rational) -> fmt::Result {
    if m.is_one() {
        return write!(f, "{c}");
    }
    if c.is_one() {
        // nothing
    } else if (-c).is_one() {
        write!(f, "-")?;
    } else {
        write!(f, "{c}*")?;
    }
    let mut first = true;
    for (v, e) in m.iter() {
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", table.name(v))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

pub(crate) fn parse_rational(s: &str) -> Option<Rational> {
    Rational::from_str(s.trim()).ok()
}

fn parse_err(term: &str, reason: impl Into<String>) -> PolyError {
    PolyError::Parse { term: term.to_string(), reason: reason.into() }
}

impl Polynomial {
    /// Parses the text format against an existing table.
    pub fn parse(text: &str, table: &Arc<VarTable>) -> Result<Polynomial, PolyError> {
        let text = text.trim();
        if text == "0" {
            return Ok(Polynomial::zero(table));
        }
        let mut terms = Vec::new();
        for raw in text.split(" + ") {
            terms.push(parse_term(raw.trim(), table)?);
        }
        Ok(Polynomial::from_terms(table, terms))
    }
}

fn parse_term(raw: &str, table: &VarTable) -> Result<(Monomial, Rational), PolyError> {
    if raw.is_empty() {
        return Err(parse_err(raw, "empty term"));
    }
    let mut coeff = Rational::one();
    let mut body = raw;
    if let Some(rest) = body.strip_prefix('-') {
        if !rest.starts_with(|c: char| c.is_ascii_digit()) {
            coeff = -coeff;
            body = rest;
        }
    }
    let mut pairs = Vec::new();
    for (k, factor) in body.split('*').enumerate() {
        if factor.is_empty() {
            return Err(parse_err(raw, "empty factor"));
        }
        let looks_numeric = factor.starts_with(|c: char| c.is_ascii_digit() || c == '-');
        if k == 0 && looks_numeric {
            coeff *= parse_rational(factor).ok_or_else(|| parse_err(raw, format!("bad coefficient `{factor}`")))?;
            continue;
        }
        let (name, exp) = match factor.rsplit_once('^') {
            Some((n, e)) => (n, e.parse::<u32>().map_err(|_| parse_err(raw, format!("bad exponent `{e}`")))?),
            None => (factor, 1),
        };
        let idx = table.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        pairs.push((idx, exp));
    }
    if coeff.is_zero() {
        return Err(parse_err(raw, "zero coefficient"));
    }
    Ok((Monomial::from_pairs(pairs), coeff))
}
