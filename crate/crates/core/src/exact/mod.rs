//! Exact scalars: rationals, cyclotomic fields, Bernoulli numbers and
//! negative-order polylogarithms at roots of unity.

mod bernoulli;
mod cyclotomic;
mod polylog;

pub use bernoulli::{bernoulli_number, bernoulli_poly};
pub use cyclotomic::{cyclo_root, cyclotomic_poly, euler_phi, Cyclotomic};
pub use polylog::{eulerian_numerator, polylog_neg, polylog_via_bernoulli};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn big(p: &BigInt) -> Rational {
    Rational::from_integer(p.clone())
}

/// Renders as `p/q`, or `p` when the denominator is 1.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `n!!` with the convention `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn pow_rational(base: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(base.clone(), e as usize)
    } else {
        num_traits::pow(base.recip(), e.unsigned_abs() as usize)
    }
}

pub fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn is_nonneg(r: &Rational) -> bool {
    !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn helpers() {
        assert_eq!(double_factorial(-1), BigInt::one());
        assert_eq!(double_factorial(7), BigInt::from(105));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(parse_rational("-3/6"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("4"), Some(int(4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(fmt_rational(&rat(2, 48)), "1/24");
        assert_eq!(pow_rational(&rat(2, 3), -2), rat(9, 4));
    }
}
