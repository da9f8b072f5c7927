use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{binomial, Rational};

static TABLE: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// `B_m` with `B_1 = -1/2`.
pub fn bernoulli_number(m: usize) -> Rational {
    if let Some(b) = TABLE.read().expect("bernoulli table").get(m) {
        return b.clone();
    }
    let mut table = TABLE.write().expect("bernoulli table");
    if table.is_empty() {
        table.push(Rational::one());
    }
    // sum_{j<=k} C(k+1, j) B_j = 0
    while table.len() <= m {
        let k = table.len() as u64;
        let mut acc = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            acc += b * Rational::from_integer(binomial(k + 1, j as u64));
        }
        table.push(-acc / Rational::from_integer(BigInt::from(k + 1)));
    }
    table[m].clone()
}

pub fn bernoulli_poly(m: usize, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let mut xp = Rational::one();
    for j in (0..=m).rev() {
        acc += bernoulli_number(j) * Rational::from_integer(binomial(m as u64, j as u64)) * &xp;
        xp *= x;
    }
    acc
}
