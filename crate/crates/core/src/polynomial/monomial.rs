use std::cmp::Ordering;
use std::fmt;

/// A monomial stored sparsely as `(variable index, exponent)` pairs sorted by
/// variable index. Zero exponents are never stored.
///
/// The `Ord` implementation is graded reverse lexicographic order with
/// variable `0` the largest variable.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn var(index: usize, exp: u32) -> Self {
        if exp == 0 {
            return Self::one();
        }
        Monomial { exps: vec![(index as u32, exp)] }
    }

    /// Builds a monomial from arbitrary pairs; repeated variables are merged.
    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Self {
        let mut v: Vec<(u32, u32)> = pairs
            .into_iter()
            .filter(|&(_, e)| e > 0)
            .map(|(i, e)| (i as u32, e))
            .collect();
        v.sort_unstable_by_key(|&(i, _)| i);
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(v.len());
        for (i, e) in v {
            match out.last_mut() {
                Some(last) if last.0 == i => last.1 += e,
                _ => out.push((i, e)),
            }
        }
        Monomial { exps: out }
    }

    /// Dense exponent vector of length `nvars`.
    pub fn from_dense(exps: &[u32]) -> Self {
        Self::from_pairs(exps.iter().enumerate().map(|(i, &e)| (i, e)))
    }

    pub fn to_dense(&self, nvars: usize) -> Vec<u32> {
        let mut out = vec![0; nvars];
        for &(i, e) in &self.exps {
            out[i as usize] = e;
        }
        out
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        match self.exps.binary_search_by_key(&(var as u32), |&(i, _)| i) {
            Ok(pos) => self.exps[pos].1,
            Err(_) => 0,
        }
    }

    /// `(variable, exponent)` pairs in increasing variable order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|&(i, e)| (i as usize, e))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().map(|&(i, _)| i as usize)
    }

    pub fn max_var(&self) -> Option<usize> {
        self.exps.last().map(|&(i, _)| i as usize)
    }

    /// Bitmask of the support, folded modulo 64. Used as a fast divisibility filter.
    pub fn mask(&self) -> u64 {
        self.exps.iter().fold(0u64, |m, &(i, _)| m | (1u64 << (i % 64)))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { exps: out }
    }

    /// True iff `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        let b = &other.exps;
        let mut j = 0;
        for &(v, e) in &self.exps {
            while j < b.len() && b[j].0 < v {
                j += 1;
            }
            if j == b.len() || b[j].0 != v || b[j].1 < e {
                return false;
            }
            j += 1;
        }
        true
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut out = Vec::with_capacity(self.exps.len());
        let b = &other.exps;
        let mut j = 0;
        for &(v, e) in &self.exps {
            if j < b.len() && b[j].0 == v {
                if e > b[j].1 {
                    out.push((v, e - b[j].1));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        Some(Monomial { exps: out })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.exps, &other.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1.max(b[j].1)));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { exps: out }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    /// Drops one power of `var`, returning the multiplier `exp` (0 if absent).
    pub fn derivative(&self, var: usize) -> Option<(u32, Monomial)> {
        let pos = self.exps.binary_search_by_key(&(var as u32), |&(i, _)| i).ok()?;
        let e = self.exps[pos].1;
        let mut out = self.exps.clone();
        if e == 1 {
            out.remove(pos);
        } else {
            out[pos].1 -= 1;
        }
        Some((e, Monomial { exps: out }))
    }

    /// Renumbers variables; `f` must be injective on the support.
    pub fn map_vars(&self, f: impl Fn(usize) -> usize) -> Monomial {
        Monomial::from_pairs(self.iter().map(|(i, e)| (f(i), e)))
    }

    /// Weighted degree with per-variable weights.
    pub fn weighted_degree(&self, weight: impl Fn(usize) -> u64) -> u64 {
        self.iter().map(|(i, e)| weight(i) * e as u64).sum()
    }

    /// Lexicographic comparison with variable `0` largest.
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va == vb {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    } else if va < vb {
                        return Ordering::Greater;
                    } else {
                        return Ordering::Less;
                    }
                }
            }
        }
    }

    /// Graded reverse lexicographic comparison restricted to variables in `lo..hi`.
    pub fn cmp_grevlex_range(&self, other: &Monomial, lo: usize, hi: usize) -> Ordering {
        let in_range = |&&(v, _): &&(u32, u32)| (v as usize) >= lo && (v as usize) < hi;
        let da: u32 = self.exps.iter().filter(in_range).map(|&(_, e)| e).sum();
        let db: u32 = other.exps.iter().filter(in_range).map(|&(_, e)| e).sum();
        if da != db {
            return da.cmp(&db);
        }
        let mut a = self.exps.iter().rev().filter(in_range);
        let mut b = other.exps.iter().rev().filter(in_range);
        let (mut x, mut y) = (a.next(), b.next());
        loop {
            match (x, y) {
                (None, None) => return Ordering::Equal,
                // the side that still has a variable carries a positive exponent
                // where the other has zero, so it is the smaller one
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va == vb {
                        if ea != eb {
                            return eb.cmp(&ea);
                        }
                        x = a.next();
                        y = b.next();
                    } else if va > vb {
                        return Ordering::Less;
                    } else {
                        return Ordering::Greater;
                    }
                }
            }
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_grevlex_range(other, 0, usize::MAX)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.exps.iter().map(|(i, e)| format!("v{i}^{e}")).collect();
        write!(f, "{}", parts.join("*"))
    }
}
