//! Oracles shared by the integration test targets.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use grslice_core::lattice::{meet, Coweight, RootDatum};
use grslice_core::polynomial::{rat, Rational};

pub fn data_up_to_rank3() -> Vec<Arc<RootDatum>> {
    vec![
        RootDatum::sl(2),
        RootDatum::sl(3),
        Arc::new(RootDatum::type_b(2)),
        Arc::new(RootDatum::type_g2()),
        RootDatum::sl(4),
        Arc::new(RootDatum::type_b(3)),
        Arc::new(RootDatum::type_c(3)),
    ]
}

/// Dominant coweights `Σ a_i ϖ_i` with `0 ≤ a_i ≤ max`.
pub fn dominant_box(d: &Arc<RootDatum>, max: i64) -> Vec<Coweight> {
    let r = d.rank();
    let mut out = Vec::new();
    let mut a = vec![0i64; r];
    loop {
        let coeffs: Vec<Rational> = a.iter().map(|&x| rat(x)).collect();
        out.push(Coweight::from_fundamental(d, &coeffs).unwrap());
        let mut p = 0;
        while p < r && a[p] == max {
            a[p] = 0;
            p += 1;
        }
        if p == r {
            return out;
        }
        a[p] += 1;
    }
}

// naive fixpoint over the finite universe of integral dominant coweights
// coordinatewise below some seed
pub fn closure_oracle(seeds: &[Coweight], bound: i64) -> BTreeSet<Coweight> {
    let d = seeds[0].datum().clone();
    let r = d.rank();
    let caps: Vec<i64> = (0..r)
        .map(|i| seeds.iter().map(|s| s.coords()[i].to_integer().try_into().unwrap()).max().unwrap())
        .collect();
    let mut universe = Vec::new();
    let mut cur = vec![0i64; r];
    'outer: loop {
        let c = Coweight::from_ints(&d, &cur).unwrap();
        if c.is_dominant() && c.height() <= rat(bound) {
            universe.push(c);
        }
        for p in 0..r {
            if cur[p] < caps[p] {
                cur[p] += 1;
                continue 'outer;
            }
            cur[p] = 0;
        }
        break;
    }
    let mut set: BTreeSet<Coweight> = seeds.iter().cloned().collect();
    loop {
        let mut next = set.clone();
        for x in &set {
            for y in &set {
                if let Ok(m) = meet(x, y) {
                    if m.height() <= rat(bound) {
                        next.insert(m);
                    }
                }
            }
            for u in &universe {
                if x.sub(u).is_dominant() {
                    next.insert(u.clone());
                }
            }
        }
        if next == set {
            return set;
        }
        set = next;
    }
}

pub fn seed_family(n: usize, kmax: usize) -> Vec<Coweight> {
    let d = RootDatum::sl(n);
    (1..=kmax)
        .flat_map(|k| {
            [1, n - 1].map(|i| Coweight::fundamental(&d, i).unwrap().scale(&rat((k * n) as i64)))
        })
        .collect()
}

