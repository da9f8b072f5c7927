use num_bigint::BigInt;
use num_traits::Zero;

use super::tau;
use crate::error::{Error, Result};
use crate::exact::{double_factorial, factorial, int, Rational};

fn to_i64(ks: &[u32]) -> Vec<i64> {
    ks.iter().map(|&k| k as i64).collect()
}

/// `{prod_I tau_{k_i} | prod_J tau_{k_j}}_g` from its defining sum over genus splits.
pub fn curly_bracket_bruteforce(g: u32, ks_i: &[u32], ks_j: &[u32]) -> Rational {
    let g = g as i64;
    let side = |genus: i64, ks: &[u32]| {
        let mut idx = to_i64(ks);
        let extra = 3 * genus - 2 + ks.len() as i64 - idx.iter().sum::<i64>();
        idx.push(extra);
        tau(genus, &idx)
    };
    let mut acc = Rational::zero();
    for g1 in 0..=g {
        let g2 = g - g1;
        let a = side(g1, ks_i);
        if a.is_zero() {
            continue;
        }
        let term = a * side(g2, ks_j);
        if g2 % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    let sj: u32 = ks_j.iter().sum();
    if sj.is_multiple_of(2) {
        acc
    } else {
        -acc
    }
}

/// `1 / (4^g prod (2k_j+1)!!)`, valid when `sum k_j = g`.
pub fn curly_bracket_closed(g: u32, ks: &[u32]) -> Result<Rational> {
    let total: u32 = ks.iter().sum();
    if total != g {
        return Err(Error::PreconditionViolated(format!(
            "sum of indices {total} differs from genus {g}"
        )));
    }
    let mut den = num_traits::pow(BigInt::from(4), g as usize);
    for &k in ks {
        den *= double_factorial(2 * k as i64 + 1);
    }
    Ok(Rational::new(BigInt::from(1), den))
}

/// `[prod tau_{k_i}]^K_{g-1} = sum_{l=0}^K (-1)^l <prod tau_{k_i} tau_{K-l} tau_l>_{g-1}`.
///
/// Zero for `g = 0` and for `K < 0`.
pub fn square_bracket_bruteforce(g: u32, ks: &[u32], big_k: i64) -> Rational {
    if g == 0 || big_k < 0 {
        return Rational::zero();
    }
    let mut acc = Rational::zero();
    let mut idx = to_i64(ks);
    idx.push(0);
    idx.push(0);
    let n = idx.len();
    for l in 0..=big_k {
        idx[n - 2] = big_k - l;
        idx[n - 1] = l;
        let v = tau(g as i64 - 1, &idx);
        if l % 2 == 0 {
            acc += v;
        } else {
            acc -= v;
        }
    }
    acc
}

fn factorial_r(n: i64) -> Rational {
    Rational::from_integer(factorial(n as u64))
}

enum Regime {
    Leading,
    Vanishing,
}

fn regime(g: u32, ks: &[u32], big_k: i64) -> Result<Regime> {
    if g == 0 {
        return Err(Error::OutOfClosedFormDomain("genus 0 bracket".into()));
    }
    let g = g as i64;
    let m = ks.len() as i64;
    if big_k == 2 * g - 2 {
        return Ok(Regime::Leading);
    }
    let p = 2 * g - 4 + m - big_k;
    if big_k > 2 * g - 2 && p >= 0 {
        return Ok(Regime::Vanishing);
    }
    Err(Error::OutOfClosedFormDomain(format!(
        "K = {big_k} is neither 2g-2 nor 2g-4+m-p with m-p > 2"
    )))
}

fn check_dimension(g: u32, ks: &[u32]) -> Result<()> {
    let total: i64 = ks.iter().map(|&k| k as i64).sum();
    if total != g as i64 - 2 + ks.len() as i64 {
        return Err(Error::OutOfClosedFormDomain(format!(
            "sum of indices {total} violates the dimension constraint"
        )));
    }
    Ok(())
}

/// The closed forms for `[prod tau_{k_i}]^K_{g-1}` exactly as printed:
/// for `K = 2g-2`,
/// `(2g-3+m-a)! / (4^{g-1} (2g-1)!) * prod_{j=1}^a (2g-4+m-a+2j) / prod_{k_i>0} (2k_i-1)!!`
/// with `a` the number of zero indices; for `K = 2g-4+m-p`, `m-p > 2`, zero.
pub fn square_bracket_closed(g: u32, ks: &[u32], big_k: i64) -> Result<Rational> {
    match regime(g, ks, big_k)? {
        Regime::Vanishing => Ok(Rational::zero()),
        Regime::Leading => {
            check_dimension(g, ks)?;
            let g = g as i64;
            let m = ks.len() as i64;
            let a = ks.iter().filter(|&&k| k == 0).count() as i64;
            let top = 2 * g - 3 + m - a;
            if top < 0 {
                return Err(Error::OutOfClosedFormDomain(format!(
                    "negative factorial argument {top}"
                )));
            }
            let mut v = factorial_r(top) / (int(4).pow((g - 1) as i32) * factorial_r(2 * g - 1));
            for j in 1..=a {
                v *= int(2 * g - 4 + m - a + 2 * j);
            }
            for &k in ks.iter().filter(|&&k| k > 0) {
                v /= Rational::from_integer(double_factorial(2 * k as i64 - 1));
            }
            Ok(v)
        }
    }
}

/// The same brackets with each `tau_0` removed one at a time by the string
/// equation, ending in the all-positive closed form.
pub fn square_bracket_string_reduced(g: u32, ks: &[u32], big_k: i64) -> Result<Rational> {
    match regime(g, ks, big_k)? {
        Regime::Vanishing => Ok(Rational::zero()),
        Regime::Leading => {
            if check_dimension(g, ks).is_err() {
                return Ok(Rational::zero());
            }
            let gi = g as i64;
            let m = ks.len() as i64;
            if 2 * gi - 3 + m <= 0 {
                return Err(Error::OutOfClosedFormDomain(
                    "string equation needs a stable reduced key".into(),
                ));
            }
            let Some(zero_at) = ks.iter().position(|&k| k == 0) else {
                let mut v = factorial_r(2 * gi - 3 + m)
                    / (int(4).pow((gi - 1) as i32) * factorial_r(2 * gi - 1));
                for &k in ks {
                    v /= Rational::from_integer(double_factorial(2 * k as i64 - 1));
                }
                return Ok(v);
            };
            let mut rest = ks.to_vec();
            rest.remove(zero_at);
            let mut acc = Rational::zero();
            for i in 0..rest.len() {
                if rest[i] == 0 {
                    continue;
                }
                let mut r = rest.clone();
                r[i] -= 1;
                acc += square_bracket_string_reduced(g, &r, big_k)?;
            }
            Ok(acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn curly_examples() {
        assert_eq!(curly_bracket_bruteforce(0, &[0, 0], &[]), int(1));
        assert_eq!(curly_bracket_bruteforce(1, &[1], &[0]), rat(1, 12));
        assert_eq!(curly_bracket_bruteforce(1, &[0], &[1]), rat(1, 12));
        assert_eq!(curly_bracket_closed(2, &[1, 1, 0]).unwrap(), rat(1, 144));
        assert!(curly_bracket_closed(2, &[1]).is_err());
    }

    #[test]
    fn square_examples() {
        assert_eq!(square_bracket_bruteforce(2, &[1, 1], 2), rat(1, 4));
        assert_eq!(square_bracket_bruteforce(1, &[0], 0), int(1));
        assert_eq!(square_bracket_closed(2, &[1, 1], 2).unwrap(), rat(1, 4));
        assert_eq!(square_bracket_bruteforce(0, &[0], 3), int(0));
        assert_eq!(square_bracket_bruteforce(2, &[0], -1), int(0));
        // the printed tau_0^a formula versus the defining sum
        assert_eq!(square_bracket_bruteforce(2, &[0, 0, 1, 3], 2), rat(5, 12));
        assert_eq!(
            square_bracket_closed(2, &[0, 0, 1, 3], 2).unwrap(),
            rat(2, 5)
        );
        assert_eq!(
            square_bracket_string_reduced(2, &[0, 0, 1, 3], 2).unwrap(),
            rat(5, 12)
        );
        assert!(matches!(
            square_bracket_closed(2, &[0, 0, 2], 2),
            Err(Error::OutOfClosedFormDomain(_))
        ));
    }
}
