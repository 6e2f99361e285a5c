use grslice_core::certify::{
    certify_reduced, complete_intersection_cert, find_smooth_point, rational_rank, singular_locus_dim, tangent_dim_at,
    CertifyOptions,
};
use grslice_core::groebner::{buchberger, krull_dimension, Budget, TermOrder};
use grslice_core::lattice::{dim_orbit, Coweight, RootDatum};
use grslice_core::polynomial::{rat, Polynomial, Rational};
use grslice_core::slice::{build_generic_X, slice_generators};

fn no_witness() -> CertifyOptions {
    CertifyOptions { smooth_point: false, ..Default::default() }
}

#[test]
fn complete_intersection_dimensions() {
    for (n, k, dim) in [(2, 1, 2), (3, 1, 6), (2, 2, 4)] {
        let c = complete_intersection_cert(n, k, &no_witness()).unwrap();
        assert_eq!(c.variety_dim, Some(dim), "({n},{k})");
        assert!(c.is_complete_intersection);
        assert_eq!(c.ambient_dim, k * n * n);
        assert_eq!(c.generator_count, k * n);
    }
}

#[test]
fn dimension_does_not_depend_on_order() {
    for (n, k) in [(2, 1), (2, 2)] {
        let g = slice_generators(n, k).unwrap();
        let a = buchberger(&g, TermOrder::Grevlex, &Budget::default()).unwrap();
        let b = buchberger(&g, TermOrder::Lex, &Budget::default()).unwrap();
        assert!(a.verify() && b.verify());
        assert_eq!(krull_dimension(&a), krull_dimension(&b));
    }
}

#[test]
fn reducedness_certificates() {
    for (n, k, dim, sing) in [(2, 1, 2, 0), (3, 1, 6, 4)] {
        let c = certify_reduced(n, k, &no_witness()).unwrap();
        assert!(c.is_reduced_certified, "({n},{k})");
        assert_eq!(c.variety_dim, Some(dim));
        assert_eq!(c.singular_locus_dim, Some(sing));
    }
    let c = certify_reduced(2, 2, &no_witness()).unwrap();
    assert!(c.is_reduced_certified);
}

#[test]
fn singular_locus_of_nilpotent_cone_matches_rank_one_locus() {
    // non-regular 3×3 nilpotents are those of rank ≤ 1
    let g = slice_generators(3, 1).unwrap();
    let x = build_generic_X(3, 1).unwrap();
    let a = x.coefficient_matrix(1);
    let mut ideal = g.clone();
    for (r1, r2) in [(0, 1), (0, 2), (1, 2)] {
        for (c1, c2) in [(0, 1), (0, 2), (1, 2)] {
            ideal.push(&(&a[r1][c1] * &a[r2][c2]) - &(&a[r1][c2] * &a[r2][c1]));
        }
    }
    let gb = buchberger(&ideal, TermOrder::Grevlex, &Budget::default()).unwrap();
    let oracle = krull_dimension(&gb);
    assert_eq!(oracle, 4);
    assert_eq!(singular_locus_dim(&g, 3, &Budget::default()).unwrap(), oracle);
}

#[test]
fn smooth_points_reach_orbit_dimension() {
    for (n, k) in [(2, 1), (2, 2), (3, 1)] {
        let p = find_smooth_point(n, k).unwrap();
        let lambda = Coweight::fundamental(&RootDatum::sl(n), 1).unwrap().scale(&rat((k * n) as i64));
        assert_eq!(p.tangent_dim as i64, dim_orbit(&lambda).unwrap());
        assert_eq!(tangent_dim_at(&slice_generators(n, k).unwrap(), &p.coordinates).unwrap(), p.tangent_dim);
    }
}

#[test]
fn regular_nilpotent_three() {
    let g = slice_generators(3, 1).unwrap();
    let t = g[0].table().clone();
    let mut p = vec![rat(0); 9];
    p[t.index_of("x[1][2][1]").unwrap()] = rat(1);
    p[t.index_of("x[2][3][1]").unwrap()] = rat(1);
    assert_eq!(tangent_dim_at(&g, &p).unwrap(), 6);
}

// rank by an independent route: Bareiss fraction-free elimination on integers
fn bareiss_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for cc in c + 1..cols {
                a[r][cc] = (a[rank][c] * a[r][cc] - a[r][c] * a[rank][cc]) / prev;
            }
            a[r][c] = 0;
        }
        prev = a[rank][c];
        rank += 1;
    }
    rank
}

#[test]
fn jacobian_rank_matches_fraction_free_oracle() {
    let g = slice_generators(2, 2).unwrap();
    let nv = g[0].table().len();
    let p = find_smooth_point(2, 2).unwrap();
    let jac: Vec<Vec<i64>> = g
        .iter()
        .map(|gen| {
            (0..nv)
                .map(|v| {
                    let d: Rational = gen.derivative(v).eval_dense(&p.coordinates);
                    i64::try_from(d.to_integer()).unwrap()
                })
                .collect()
        })
        .collect();
    assert_eq!(nv - bareiss_rank(&jac), p.tangent_dim);
    let rows: Vec<Vec<Rational>> = jac.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
    assert_eq!(rational_rank(rows), bareiss_rank(&jac));
    assert!(p.tangent_dim >= 4);
}

#[test]
fn certificates_are_deterministic() {
    let a = certify_reduced(2, 2, &CertifyOptions::default()).unwrap();
    let b = certify_reduced(2, 2, &CertifyOptions::default()).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.tangent_dim, Some(4));
}

#[test]
fn quadric_cone_basis() {
    let g = slice_generators(2, 1).unwrap();
    let t = g[0].table().clone();
    let gb = buchberger(&g, TermOrder::Grevlex, &Budget::default()).unwrap();
    let expected = [
        Polynomial::parse("x[1][1][1] + x[2][2][1]", &t).unwrap(),
        Polynomial::parse("x[1][1][1]^2 + x[1][2][1]*x[2][1][1]", &t).unwrap(),
    ];
    let eb = buchberger(&expected, TermOrder::Grevlex, &Budget::default()).unwrap();
    assert_eq!(gb.generators(), eb.generators());
    assert!(gb.contains(&g[1]));
}
