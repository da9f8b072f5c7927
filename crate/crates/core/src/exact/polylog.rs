use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{bernoulli_poly, cyclo_root, Cyclotomic, Rational};
use crate::error::{Error, Result};

static EULERIAN: RwLock<Vec<Vec<BigInt>>> = RwLock::new(Vec::new());

/// Numerator `A_k` of `Li_{-k}(x) = A_k(x) / (1-x)^{k+1}`, coefficients low degree first.
///
/// Obtained by applying `x d/dx` to `x/(1-x)` `k` times:
/// `A_{k+1} = x (A_k' (1-x) + (k+1) A_k)`.
pub fn eulerian_numerator(k: usize) -> Vec<BigInt> {
    if let Some(a) = EULERIAN.read().expect("eulerian table").get(k) {
        return a.clone();
    }
    let mut table = EULERIAN.write().expect("eulerian table");
    if table.is_empty() {
        table.push(vec![BigInt::zero(), BigInt::one()]);
    }
    while table.len() <= k {
        let j = table.len() - 1;
        let a = &table[j];
        let mut next = vec![BigInt::zero(); a.len() + 1];
        for (i, c) in a.iter().enumerate() {
            // x * (i c x^{i-1} (1-x) + (j+1) c x^i)
            if i > 0 {
                next[i] += c * BigInt::from(i);
                next[i + 1] -= c * BigInt::from(i);
            }
            next[i + 1] += c * BigInt::from(j + 1);
        }
        while next.len() > 1 && next.last().is_some_and(Zero::is_zero) {
            next.pop();
        }
        table.push(next);
    }
    table[k].clone()
}

/// `Li_{-k}(z)` as the exact rational function of `z`.
pub fn polylog_neg(k: usize, z: &Cyclotomic) -> Result<Cyclotomic> {
    let one = Cyclotomic::one(z.order());
    let denom = (&one - z).pow(k as i64 + 1).expect("nonnegative power");
    let denom_inv = denom.inv().ok_or(Error::DegeneratePole)?;
    let mut num = Cyclotomic::zero(z.order());
    for c in eulerian_numerator(k).iter().rev() {
        num = &num * z;
        num += &Cyclotomic::from_rational(z.order(), Rational::from_integer(c.clone()));
    }
    Ok(&num * &denom_inv)
}

/// `-N^k/(k+1) sum_c xi_N^{lc} B_{k+1}(c/N)`, which equals `Li_{-k}(xi_N^l)`.
///
/// The `c = 0` term is `zeta(-k, 1)`, so it uses `B_{k+1}(1)`; this only
/// matters for `k = 0`.
pub fn polylog_via_bernoulli(k: usize, order: u32, l: i64) -> Result<Cyclotomic> {
    if l.rem_euclid(order as i64) == 0 {
        return Err(Error::PreconditionViolated(format!(
            "l = {l} is divisible by N = {order}"
        )));
    }
    let n = order as i64;
    let mut acc = Cyclotomic::zero(order);
    for c in 1..=n {
        let b = bernoulli_poly(k + 1, &Rational::new(BigInt::from(c), BigInt::from(n)));
        acc += &cyclo_root(order, l * c).scale(&b);
    }
    let factor = -Rational::from_integer(num_traits::pow(BigInt::from(n), k))
        / Rational::from_integer(BigInt::from(k + 1));
    Ok(acc.scale(&factor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn at_minus_one() {
        let m1 = Cyclotomic::from_int(2, -1);
        assert_eq!(polylog_neg(0, &m1).unwrap().to_rational(), Some(rat(-1, 2)));
        assert_eq!(polylog_neg(1, &m1).unwrap().to_rational(), Some(rat(-1, 4)));
        assert_eq!(
            polylog_via_bernoulli(1, 2, 1).unwrap().to_rational(),
            Some(rat(-1, 4))
        );
        let x = crate::exact::cyclo_root(3, 1);
        let want = &x * &(&Cyclotomic::one(3) - &x).inv().unwrap();
        assert_eq!(polylog_via_bernoulli(0, 3, 1).unwrap(), want);
        assert_eq!(
            polylog_neg(3, &Cyclotomic::one(5)),
            Err(Error::DegeneratePole)
        );
    }

    #[test]
    fn eulerian() {
        let as_i64 = |k| -> Vec<i64> {
            eulerian_numerator(k)
                .iter()
                .map(|c| c.try_into().unwrap())
                .collect()
        };
        assert_eq!(as_i64(1), vec![0, 1]);
        assert_eq!(as_i64(2), vec![0, 1, 1]);
        assert_eq!(as_i64(3), vec![0, 1, 4, 1]);
    }
}
