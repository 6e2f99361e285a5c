use super::GroebnerBasis;

/// Krull dimension of `ℚ[vars]/I` from the leading-term ideal.
///
/// Equals `nvars - τ`, where `τ` is the size of a smallest set of variables
/// meeting the support of every leading monomial. The unit ideal gives `-1`.
pub fn krull_dimension(gb: &GroebnerBasis) -> i64 {
    let nvars = gb.table().len();
    let lms = gb.leading_monomials();
    if lms.iter().any(|m| m.is_one()) {
        return -1;
    }
    let words = nvars.div_ceil(64).max(1);
    let mut supports: Vec<Vec<u64>> = lms
        .iter()
        .map(|m| {
            let mut bits = vec![0u64; words];
            for v in m.support() {
                bits[v / 64] |= 1 << (v % 64);
            }
            bits
        })
        .collect();
    // keep only inclusion-minimal supports
    supports.sort_by_key(|s| s.iter().map(|w| w.count_ones()).sum::<u32>());
    supports.dedup();
    let mut minimal: Vec<Vec<u64>> = Vec::new();
    for s in supports {
        if !minimal.iter().any(|m| subset(m, &s)) {
            minimal.push(s);
        }
    }
    let mut best = nvars;
    let chosen = vec![0u64; words];
    hitting_set(&minimal, chosen, 0, &mut best);
    nvars as i64 - best as i64
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn hits(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

fn hitting_set(sets: &[Vec<u64>], chosen: Vec<u64>, size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    let open: Vec<&Vec<u64>> = sets.iter().filter(|s| !hits(s, &chosen)).collect();
    let Some(pivot) = open.iter().min_by_key(|s| s.iter().map(|w| w.count_ones()).sum::<u32>()) else {
        *best = size;
        return;
    };
    // pairwise-disjoint open sets give a lower bound
    let mut packed = vec![0u64; chosen.len()];
    let mut disjoint = 0;
    for s in &open {
        if !hits(s, &packed) {
            disjoint += 1;
            for (p, w) in packed.iter_mut().zip(s.iter()) {
                *p |= w;
            }
        }
    }
    if size + disjoint >= *best {
        return;
    }
    for (w, &word) in pivot.iter().enumerate() {
        let mut bits = word;
        while bits != 0 {
            let b = bits.trailing_zeros();
            bits &= bits - 1;
            let mut next = chosen.clone();
            next[w] |= 1 << b;
            hitting_set(sets, next, size + 1, best);
        }
    }
}
