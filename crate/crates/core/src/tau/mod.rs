//! Witten-Kontsevich intersection numbers `<tau_{d_1} ... tau_{d_n}>_g`.
//!
//! Evaluation removes `tau_0` by the string equation, `tau_1` by the dilaton
//! equation, and otherwise applies the DVV recursion to the largest index.
//! Unstable keys with negative indices follow the two extension conventions
//! `<tau_{-2}>_0 = 1` and `<tau_k tau_{-k-1}>_0 = (-1)^k`.

mod brackets;
mod persist;

pub use brackets::{
    curly_bracket_bruteforce, curly_bracket_closed, square_bracket_bruteforce,
    square_bracket_closed, square_bracket_string_reduced,
};
pub use persist::{attach_cache_dir, flush_cache, CacheLoad};

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::Zero;
use serde::Serialize;

use crate::exact::{double_factorial, int, rat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TauKey {
    pub genus: i64,
    pub indices: Vec<i64>,
}

impl TauKey {
    pub fn new(genus: i64, mut indices: Vec<i64>) -> Self {
        indices.sort_unstable();
        TauKey { genus, indices }
    }

    pub fn is_stable(&self) -> bool {
        2 * self.genus - 2 + self.indices.len() as i64 > 0
    }

    pub fn dimension_matches(&self) -> bool {
        self.indices.iter().sum::<i64>() == 3 * self.genus - 3 + self.indices.len() as i64
    }
}

type Cache = RwLock<HashMap<TauKey, Rational>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn cache_snapshot() -> Vec<(TauKey, Rational)> {
    let guard = cache().read().expect("tau cache");
    let mut entries: Vec<_> = guard.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    entries
}

pub(crate) fn cache_seed(entries: Vec<(TauKey, Rational)>) {
    let mut guard = cache().write().expect("tau cache");
    for (k, v) in entries {
        guard.entry(k).or_insert(v);
    }
}

pub fn cache_len() -> usize {
    cache().read().expect("tau cache").len()
}

pub fn tau(genus: i64, indices: &[i64]) -> Rational {
    tau_correlator(&TauKey::new(genus, indices.to_vec()))
}

pub fn tau_correlator(key: &TauKey) -> Rational {
    if let Some(v) = unstable_or_trivial(key) {
        return v;
    }
    if let Some(v) = cache().read().expect("tau cache").get(key) {
        return v.clone();
    }
    let v = evaluate(key);
    cache()
        .write()
        .expect("tau cache")
        .entry(key.clone())
        .or_insert(v)
        .clone()
}

fn unstable_or_trivial(key: &TauKey) -> Option<Rational> {
    let g = key.genus;
    let d = &key.indices;
    if g < 0 {
        return Some(Rational::zero());
    }
    if d.iter().any(|&x| x < 0) {
        let v = match (g, d.as_slice()) {
            (0, [-2]) => int(1),
            (0, [a, b]) if *a < 0 && *b >= 0 && *a == -b - 1 => {
                if b % 2 == 0 {
                    int(1)
                } else {
                    int(-1)
                }
            }
            _ => Rational::zero(),
        };
        return Some(v);
    }
    if !key.is_stable() || !key.dimension_matches() {
        return Some(Rational::zero());
    }
    match (g, d.as_slice()) {
        (0, [0, 0, 0]) => Some(int(1)),
        (1, [1]) => Some(rat(1, 24)),
        _ => None,
    }
}

fn dfr(n: i64) -> Rational {
    Rational::from_integer(double_factorial(n))
}

fn evaluate(key: &TauKey) -> Rational {
    let g = key.genus;
    let d = &key.indices;
    if d[0] == 0 {
        let rest = &d[1..];
        let mut acc = Rational::zero();
        for j in 0..rest.len() {
            let mut r = rest.to_vec();
            r[j] -= 1;
            acc += tau(g, &r);
        }
        return acc;
    }
    if let Some(pos) = d.iter().position(|&x| x == 1) {
        let mut rest = d.clone();
        rest.remove(pos);
        return int(2 * g - 2 + rest.len() as i64) * tau(g, &rest);
    }
    let k = *d.last().expect("nonempty");
    let s = &d[..d.len() - 1];
    let mut acc = Rational::zero();
    for (j, &dj) in s.iter().enumerate() {
        let mut r = s.to_vec();
        r[j] = k + dj - 1;
        acc += dfr(2 * k + 2 * dj - 1) / dfr(2 * dj - 1) * tau(g, &r);
    }
    for r in 0..=(k - 2) {
        let sidx = k - 2 - r;
        let c = dfr(2 * r + 1) * dfr(2 * sidx + 1) / int(2);
        let mut joined = s.to_vec();
        joined.push(r);
        joined.push(sidx);
        let mut inner = tau(g - 1, &joined);
        let m = s.len();
        for mask in 0..(1u32 << m) {
            let mut left = vec![r];
            let mut right = vec![sidx];
            for (i, &x) in s.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    left.push(x);
                } else {
                    right.push(x);
                }
            }
            for g1 in 0..=g {
                let a = tau(g1, &left);
                if !a.is_zero() {
                    inner += a * tau(g - g1, &right);
                }
            }
        }
        acc += c * inner;
    }
    acc / dfr(2 * k + 1)
}

/// `true` when `<tau_0 S>_g` equals the string-equation sum for this stable key.
pub fn string_equation_holds(genus: i64, rest: &[i64]) -> bool {
    let mut with0 = rest.to_vec();
    with0.push(0);
    let lhs = tau(genus, &with0);
    let mut rhs = Rational::zero();
    for j in 0..rest.len() {
        let mut r = rest.to_vec();
        r[j] -= 1;
        rhs += tau(genus, &r);
    }
    lhs == rhs
}

pub fn dilaton_equation_holds(genus: i64, rest: &[i64]) -> bool {
    let mut with1 = rest.to_vec();
    with1.push(1);
    tau(genus, &with1) == int(2 * genus - 2 + rest.len() as i64) * tau(genus, rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(tau(0, &[0, 0, 0]), int(1));
        assert_eq!(tau(1, &[1]), rat(1, 24));
        assert_eq!(tau(2, &[4]), rat(1, 1152));
        assert_eq!(tau(3, &[7]), rat(1, 82944));
        assert_eq!(tau(2, &[2, 3]), rat(29, 5760));
        assert_eq!(tau(0, &[-2]), int(1));
        assert_eq!(tau(0, &[3, -4]), int(-1));
        assert_eq!(tau(0, &[2, -3]), int(1));
        assert_eq!(tau(1, &[0]), int(0));
        assert_eq!(tau(0, &[-1]), int(0));
    }
}
