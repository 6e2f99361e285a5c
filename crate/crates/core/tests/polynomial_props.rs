use std::collections::HashMap;
use std::sync::Arc;

use grslice_core::polynomial::{rat, ratio};
use grslice_core::{poly_arith, poly_diff, poly_eval, ArithOp, Monomial, Polynomial, Rational, VarTable};
use proptest::prelude::*;

const NVARS: usize = 4;

fn table() -> Arc<VarTable> {
    VarTable::shared(["a", "b", "x[1]", "y_2"]).unwrap()
}

fn coefficient() -> impl Strategy<Value = Rational> {
    (-9i64..10, 1i64..5).prop_map(|(p, q)| ratio(p, q))
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..3, NVARS)
        .prop_filter("degree at most 4", |e| e.iter().sum::<u32>() <= 4)
        .prop_map(|e| Monomial::from_dense(&e))
}

prop_compose! {
    fn poly()(terms in prop::collection::vec((monomial(), coefficient()), 0..6)) -> Polynomial {
        Polynomial::from_terms(&table(), terms)
    }
}

fn point() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-4i64..5, 1i64..4).prop_map(|(p, q)| ratio(p, q)), NVARS)
}

// dense evaluation by summing terms directly
fn eval_oracle(p: &Polynomial, x: &[Rational]) -> Rational {
    let mut acc = rat(0);
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (v, e) in m.to_dense(NVARS).into_iter().enumerate() {
            for _ in 0..e {
                t *= &x[v];
            }
        }
        acc += t;
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        let zero = Polynomial::zero(&table());
        let one = Polynomial::one(&table());
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p + &zero, p.clone());
        prop_assert_eq!(&p * &one, p.clone());
        prop_assert!((&p - &p).is_zero());
        prop_assert!((&p + &(-&p)).is_zero());
        prop_assert_eq!(p.pow(2), &p * &p);
    }

    #[test]
    fn evaluation_is_a_homomorphism(p in poly(), q in poly(), x in point()) {
        prop_assert_eq!(p.eval_dense(&x), eval_oracle(&p, &x));
        prop_assert_eq!((&p + &q).eval_dense(&x), p.eval_dense(&x) + q.eval_dense(&x));
        prop_assert_eq!((&p * &q).eval_dense(&x), p.eval_dense(&x) * q.eval_dense(&x));
        let named: HashMap<String, Rational> =
            table().names().iter().cloned().zip(x.iter().cloned()).collect();
        prop_assert_eq!(poly_eval(&p, &named).unwrap(), p.eval_dense(&x));
    }

    #[test]
    fn derivative_is_a_derivation(p in poly(), q in poly(), v in 0..NVARS) {
        let lhs = (&p * &q).derivative(v);
        let rhs = &(&p.derivative(v) * &q) + &(&p * &q.derivative(v));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!((&p + &q).derivative(v), &p.derivative(v) + &q.derivative(v));
        prop_assert_eq!(p.derivative(v).derivative((v + 1) % NVARS), p.derivative((v + 1) % NVARS).derivative(v));
    }

    #[test]
    fn text_round_trip(p in poly()) {
        let text = p.to_string();
        prop_assert_eq!(Polynomial::parse(&text, &table()).unwrap(), p.clone());
        prop_assert_eq!(Polynomial::parse(&text, &table()).unwrap().to_string(), text);
    }

    #[test]
    fn string_entry_points_agree(p in poly(), q in poly()) {
        prop_assert_eq!(poly_arith(&p, &q, ArithOp::Add).unwrap(), &p + &q);
        prop_assert_eq!(poly_arith(&p, &q, ArithOp::Sub).unwrap(), &p - &q);
        prop_assert_eq!(poly_arith(&p, &q, ArithOp::Mul).unwrap(), &p * &q);
        prop_assert_eq!(poly_diff(&p, "x[1]").unwrap(), p.derivative(2));
    }

    #[test]
    fn terms_are_sorted_descending_in_grevlex(p in poly()) {
        let ms: Vec<&Monomial> = p.terms().map(|(m, _)| m).collect();
        prop_assert!(ms.windows(2).all(|w| w[0] > w[1]));
    }
}

#[test]
fn grevlex_on_small_examples() {
    // x0 > x1 > x2; within a degree the smaller power of the last variable wins
    let m = |e: &[u32]| Monomial::from_dense(e);
    assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
    assert!(m(&[0, 2, 0]) > m(&[1, 0, 1]));
    assert!(m(&[0, 0, 3]) > m(&[2, 0, 0]));
    assert!(m(&[2, 0, 0]) > m(&[1, 1, 0]));
}

#[test]
fn mismatched_tables_are_rejected() {
    let other = VarTable::shared(["a", "b"]).unwrap();
    let p = Polynomial::var(&table(), 0);
    let q = Polynomial::var(&other, 0);
    assert!(poly_arith(&p, &q, ArithOp::Add).is_err());
    assert!(poly_diff(&p, "zz").is_err());
}
