use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::polynomial::Monomial;

/// Monomial orders. Variable index 0 is always the largest variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum TermOrder {
    #[default]
    Grevlex,
    Lex,
    /// Grevlex on variables `0..split`, ties broken by grevlex on the rest.
    /// Eliminates the first block.
    Block(usize),
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            TermOrder::Grevlex => a.cmp(b),
            TermOrder::Lex => a.cmp_lex(b),
            TermOrder::Block(split) => a
                .cmp_grevlex_range(b, 0, split)
                .then_with(|| a.cmp_grevlex_range(b, split, usize::MAX)),
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Grevlex => write!(f, "grevlex"),
            TermOrder::Lex => write!(f, "lex"),
            TermOrder::Block(s) => write!(f, "block({s})"),
        }
    }
}

impl std::str::FromStr for TermOrder {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "grevlex" => Ok(TermOrder::Grevlex),
            "lex" => Ok(TermOrder::Lex),
            _ => s
                .strip_prefix("block(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|n| n.parse().ok())
                .map(TermOrder::Block)
                .ok_or_else(|| format!("unknown term order `{s}`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, 4).prop_map(|e| Monomial::from_dense(&e))
    }

    proptest! {
        // total, multiplicative, 1 minimal
        #[test]
        fn orders_are_admissible(a in mono(), b in mono(), c in mono()) {
            for ord in [TermOrder::Grevlex, TermOrder::Lex, TermOrder::Block(2)] {
                let ab = ord.cmp(&a, &b);
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                prop_assert_eq!(ab, ord.cmp(&a.mul(&c), &b.mul(&c)));
                prop_assert_ne!(ord.cmp(&Monomial::one(), &a.mul(&Monomial::var(0, 1))), Ordering::Greater);
                if ab == Ordering::Less && ord.cmp(&b, &c) == Ordering::Less {
                    prop_assert_eq!(ord.cmp(&a, &c), Ordering::Less);
                }
            }
        }
    }

    #[test]
    fn block_eliminates_first_block() {
        // any monomial containing x0 beats every monomial free of x0
        let ord = TermOrder::Block(1);
        let a = Monomial::var(0, 1);
        let b = Monomial::var(1, 9);
        assert_eq!(ord.cmp(&a, &b), Ordering::Greater);
        assert_eq!("block(3)".parse::<TermOrder>().unwrap(), TermOrder::Block(3));
    }
}
