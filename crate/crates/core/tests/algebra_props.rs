use std::sync::Arc;

use grslice_core::groebner::{buchberger, eliminate, normal_form, Budget, TermOrder};
use grslice_core::polynomial::{rat, ratio};
use grslice_core::slice::{coefficient_index, coefficient_table};
use grslice_core::{
    build_generic_X, det_t, slice_generators, tangent_dim_at, MatrixT, Monomial, Polynomial, Rational, TPoly,
    VarTable,
};
use proptest::prelude::*;

type Mat = Vec<Vec<i64>>;

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|l| a[i][l] * b[l][j]).sum()).collect()).collect()
}

fn mat_add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect()).collect()
}

/// Coefficients `X^(1..k)` of `Π (I + N_j t^-1)`, by plain integer arithmetic.
fn product_coefficients(factors: &[Mat]) -> Vec<Mat> {
    let n = factors[0].len();
    let zero = vec![vec![0; n]; n];
    let id: Mat = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    // series[s] is the coefficient of t^-s
    let mut series = vec![id];
    for f in factors {
        let mut next = vec![zero.clone(); series.len() + 1];
        for (s, c) in series.iter().enumerate() {
            next[s] = mat_add(&next[s], c);
            next[s + 1] = mat_add(&next[s + 1], &mat_mul(c, f));
        }
        series = next;
    }
    series.remove(0);
    series
}

fn coordinates(n: usize, coeffs: &[Mat]) -> Vec<Rational> {
    let k = coeffs.len();
    let mut out = vec![rat(0); k * n * n];
    for (s, m) in coeffs.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                out[coefficient_index(n, k, i + 1, j + 1, s + 1)] = rat(m[i][j]);
            }
        }
    }
    out
}

fn triangular(n: usize, upper: bool, values: &[i64]) -> Mat {
    let mut it = values.iter().cycle();
    (0..n)
        .map(|i| (0..n).map(|j| if (upper && j > i) || (!upper && j < i) { *it.next().unwrap() } else { 0 }).collect())
        .collect()
}

fn nilpotent_factors(n: usize, k: usize, values: &[i64]) -> Vec<Mat> {
    (0..k).map(|j| triangular(n, j % 2 == 0, &values[j..])).collect()
}

/// Leibniz permutation expansion of a constant matrix.
fn det_oracle(m: &[Vec<Rational>]) -> Rational {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    let n = m.len();
    perms(n)
        .into_iter()
        .map(|p| {
            let inv = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| p[a] > p[b]).count();
            let prod: Rational = (0..n).map(|i| m[i][p[i]].clone()).product();
            if inv % 2 == 0 {
                prod
            } else {
                -prod
            }
        })
        .sum()
}

fn constant_matrix(table: &Arc<VarTable>, n: usize, coeffs: &[Mat]) -> MatrixT {
    let entries = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            let mut cs = vec![Polynomial::constant(table, rat(i64::from(i == j)))];
            cs.extend(coeffs.iter().map(|c| Polynomial::constant(table, rat(c[i][j]))));
            TPoly::from_coeffs(cs, coeffs.len())
        })
        .collect();
    MatrixT::from_entries(n, entries)
}

#[test]
fn slice_generators_are_weighted_homogeneous() {
    for n in 2..=4 {
        for k in 1..=3 {
            let gens = slice_generators(n, k).unwrap();
            assert_eq!(gens.len(), k * n);
            for (r, g) in gens.iter().enumerate() {
                let w = g.is_weighted_homogeneous(|v| (v % k + 1) as u64);
                assert_eq!(w, Some(r as u64 + 1), "n = {n}, k = {k}, r = {}", r + 1);
            }
        }
    }
}

#[test]
fn generic_determinant_has_degree_kn() {
    for n in 2..=4 {
        for k in 1..=2 {
            let d = det_t(&build_generic_X(n, k).unwrap()).unwrap();
            assert_eq!(d.degree(), Some(k * n));
            assert_eq!(d.coeff(0), Polynomial::one(d.table()));
        }
    }
}

#[test]
fn generic_determinant_is_multiplicative() {
    for (n, k) in [(2, 1), (2, 2), (3, 1)] {
        let mut names = coefficient_table("x", n, k).names().to_vec();
        names.extend(coefficient_table("y", n, k).names().iter().cloned());
        let table = VarTable::shared(names).unwrap();
        let x = MatrixT::generic(&table, "x", n, k).unwrap();
        let y = MatrixT::generic(&table, "y", n, k).unwrap();
        let lhs = det_t(&x.mul(&y)).unwrap();
        let rhs = det_t(&x).unwrap().mul(&det_t(&y).unwrap());
        assert_eq!(lhs, rhs, "n = {n}, k = {k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn determinant_is_multiplicative_on_constant_matrices(
        n in 2usize..5,
        a in prop::collection::vec(-3i64..4, 32),
        b in prop::collection::vec(-3i64..4, 32),
    ) {
        let table = VarTable::shared(["z"]).unwrap();
        let block = |v: &[i64], s: usize| -> Mat {
            (0..n).map(|i| (0..n).map(|j| v[s * n * n + i * n + j]).collect()).collect()
        };
        let am = constant_matrix(&table, n, &[block(&a, 0)]);
        let bm = constant_matrix(&table, n, &[block(&b, 0)]);
        let lhs = det_t(&am.mul(&bm)).unwrap();
        let rhs = det_t(&am).unwrap().mul(&det_t(&bm).unwrap());
        prop_assert_eq!(lhs, rhs);
        // the top coefficient of det(I + A t^-1) is det A
        let dense: Vec<Vec<Rational>> = block(&a, 0).iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        prop_assert_eq!(det_t(&am).unwrap().coeff(n).constant_term(), det_oracle(&dense));
    }

    #[test]
    fn products_of_unipotent_factors_lie_on_the_slice(
        n in 2usize..5,
        k in 1usize..4,
        values in prop::collection::vec(-2i64..3, 16),
    ) {
        let coeffs = product_coefficients(&nilpotent_factors(n, k, &values));
        let point = coordinates(n, &coeffs);
        for g in slice_generators(n, k).unwrap() {
            prop_assert_eq!(g.eval_dense(&point), rat(0));
        }
    }

    #[test]
    fn tangent_space_is_at_least_the_variety_dimension(
        n in 2usize..4,
        k in 1usize..3,
        values in prop::collection::vec(-2i64..3, 16),
    ) {
        let coeffs = product_coefficients(&nilpotent_factors(n, k, &values));
        let gens = slice_generators(n, k).unwrap();
        let td = tangent_dim_at(&gens, &coordinates(n, &coeffs)).unwrap();
        prop_assert!(td >= k * n * (n - 1));
        prop_assert!(td <= k * n * n);
    }
}

fn ring3() -> Arc<VarTable> {
    VarTable::shared(["a", "b", "c"]).unwrap()
}

fn small_poly() -> impl Strategy<Value = Polynomial> {
    let mono = prop::collection::vec(0u32..3, 3)
        .prop_filter("degree at most 2", |e| e.iter().sum::<u32>() <= 2)
        .prop_map(|e| Monomial::from_dense(&e));
    prop::collection::vec((mono, (-3i64..4).prop_map(rat)), 1..4)
        .prop_map(|terms| Polynomial::from_terms(&ring3(), terms))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn normal_form_is_a_ring_map_modulo_the_ideal(
        gens in prop::collection::vec(small_poly(), 1..4),
        p in small_poly(),
        q in small_poly(),
        order in prop_oneof![Just(TermOrder::Grevlex), Just(TermOrder::Lex)],
    ) {
        let budget = Budget::default().with_max_pairs(2_000);
        let Ok(gb) = buchberger(&gens, order, &budget) else { return Ok(()) };
        prop_assert!(gb.verify());
        for g in &gens {
            prop_assert!(gb.contains(g));
        }
        let nf = |x: &Polynomial| normal_form(x, &gb).unwrap();
        prop_assert_eq!(nf(&(&p * &q)), nf(&(&nf(&p) * &nf(&q))));
        prop_assert_eq!(nf(&(&p + &q)), &nf(&p) + &nf(&q));
        prop_assert_eq!(nf(&nf(&p)), nf(&p));
        // a second run is identical
        let again = buchberger(&gens, order, &budget).unwrap();
        prop_assert_eq!(again.generators(), gb.generators());
    }
}

#[test]
fn reduced_basis_does_not_depend_on_generator_order() {
    let gens = slice_generators(2, 2).unwrap();
    let mut rev = gens.clone();
    rev.reverse();
    let budget = Budget::default();
    let a = buchberger(&gens, TermOrder::Grevlex, &budget).unwrap();
    let b = buchberger(&rev, TermOrder::Grevlex, &budget).unwrap();
    assert_eq!(a.generators(), b.generators());
}

#[test]
fn elimination_of_a_parametrised_curve() {
    // (t, t^2, t^3) eliminates to the twisted cubic
    let t = VarTable::shared(["s", "x", "y", "z"]).unwrap();
    let v = |i| Polynomial::var(&t, i);
    let gens = vec![&v(1) - &v(0), &v(2) - &v(0).pow(2), &v(3) - &v(0).pow(3)];
    let elim = eliminate(&gens, &[1, 2, 3], &Budget::default()).unwrap();
    assert!(elim.iter().all(|p| !p.variables().contains(&0)));
    let gb = buchberger(&elim, TermOrder::Grevlex, &Budget::default()).unwrap();
    for p in [&v(2) - &v(1).pow(2), &v(3) - &(&v(1) * &v(2)), &(&v(1) * &v(3)) - &v(2).pow(2)] {
        assert!(gb.contains(&p), "{p}");
    }
    assert!(!gb.contains(&(&v(3) - &v(1))));
    let half = Polynomial::constant(&t, ratio(1, 2));
    assert!(!gb.contains(&half));
}
