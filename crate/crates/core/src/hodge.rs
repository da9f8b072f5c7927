//! Hurwitz-Hodge integrals over moduli of twisted curves in `BZ_n` and the
//! resulting orbifold correlators of `[C^2/Z_n]` (2D) and `[C^2/Z_n] x C` (3D).

use std::sync::RwLock;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{bernoulli_poly, cyclo_root, factorial, int, Cyclotomic, Rational};
use crate::tau;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OrbKey {
    pub n: u32,
    pub g: u32,
    pub a: Vec<u32>,
    pub k: Vec<u32>,
}

impl OrbKey {
    pub fn new(n: u32, g: u32, a: Vec<u32>, k: Vec<u32>) -> Self {
        OrbKey { n, g, a, k }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ranks {
    pub r1: i64,
    pub r1bar: i64,
    pub p: usize,
}

/// Which bracket evaluators feed the reduction formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BracketMode {
    #[default]
    BruteForce,
    Closed,
}

fn monodromy_sum(n: u32, a: &[u32]) -> Result<u64> {
    let sum: u64 = a.iter().map(|&x| x as u64).sum();
    if a.iter().any(|&x| x >= n) {
        return Err(Error::PreconditionViolated(format!(
            "monodromies must lie in 0..{n}"
        )));
    }
    if !sum.is_multiple_of(n as u64) {
        return Err(Error::MonodromyViolation { n, sum });
    }
    Ok(sum)
}

pub fn ranks(n: u32, g: u32, a: &[u32]) -> Result<Ranks> {
    let sum = monodromy_sum(n, a)? as i64;
    let n = n as i64;
    let p = a.iter().filter(|&&x| x == 0).count();
    let twisted = (a.len() - p) as i64;
    let r1 = g as i64 - 1 + sum / n;
    let r1bar = g as i64 - 1 + twisted - sum / n;
    Ok(Ranks { r1, r1bar, p })
}

fn curly(g: u32, ks_i: &[u32], ks_j: &[u32], mode: BracketMode) -> Rational {
    if mode == BracketMode::Closed {
        let mut all = ks_i.to_vec();
        all.extend_from_slice(ks_j);
        if let Ok(v) = tau::curly_bracket_closed(g, &all) {
            return v;
        }
    }
    tau::curly_bracket_bruteforce(g, ks_i, ks_j)
}

fn square(g: u32, ks: &[u32], big_k: i64, mode: BracketMode) -> Rational {
    if mode == BracketMode::Closed {
        if let Ok(v) = tau::square_bracket_string_reduced(g, ks, big_k) {
            return v;
        }
    }
    tau::square_bracket_bruteforce(g, ks, big_k)
}

/// `int ch_{r1+r1bar-1}(F_1) prod psi_j^{k_j}` by the reduction to brackets.
pub fn hh_ch_integral_2d(key: &OrbKey, mode: BracketMode) -> Result<Rational> {
    if key.a.len() != key.k.len() {
        return Err(Error::PreconditionViolated(
            "a and k differ in length".into(),
        ));
    }
    let r = ranks(key.n, key.g, &key.a)?;
    let m = key.a.len();
    if r.p >= m {
        return Err(Error::PreconditionViolated(
            "needs a nontrivial monodromy".into(),
        ));
    }
    if r.r1 + r.r1bar < 1 {
        return Err(Error::DegenerateRank);
    }
    let n = key.n as i64;
    let g = key.g;
    let deg = (2 * g as i64 - 2 + m as i64 - r.p as i64) as usize;
    let deg_fact = Rational::from_integer(factorial(deg as u64));
    let bern = |c: i64| bernoulli_poly(deg, &Rational::new(c.into(), n.into())) / &deg_fact;

    let mut split_sum = Rational::zero();
    for mask in 0u32..(1 << m) {
        let mut ki = vec![];
        let mut kj = vec![];
        let mut ai_sum = 0i64;
        for i in 0..m {
            if mask >> i & 1 == 1 {
                ki.push(key.k[i]);
                ai_sum += key.a[i] as i64;
            } else {
                kj.push(key.k[i]);
            }
        }
        let br = curly(g, &ki, &kj, mode);
        if br.is_zero() {
            continue;
        }
        let term = bern((-ai_sum).rem_euclid(n)) * br;
        if kj.len() % 2 == 0 {
            split_sum += term;
        } else {
            split_sum -= term;
        }
    }

    let mut node_sum = Rational::zero();
    if g >= 1 {
        let big_k = 2 * g as i64 - 4 + m as i64 - r.p as i64;
        let sq = square(g, &key.k, big_k, mode);
        if !sq.is_zero() {
            let bsum: Rational = (0..n).map(bern).sum();
            node_sum = bsum * sq;
        }
    }

    let pref = -int(n).pow(2 * g as i32 - 1) / int(2);
    Ok(pref * (split_sum + node_sum))
}

/// The coefficient of `t` in `<prod tau_{k_i}(e_{a_i})>_g` for `[C^2/Z_n]`.
pub fn orbifold_correlator_2d(key: &OrbKey, mode: BracketMode) -> Result<Rational> {
    if key.a.len() != key.k.len() {
        return Err(Error::PreconditionViolated(
            "a and k differ in length".into(),
        ));
    }
    let r = ranks(key.n, key.g, &key.a)?;
    let ksum: u64 = key.k.iter().map(|&k| k as u64).sum();
    if ksum != key.g as u64 + r.p as u64 {
        return Ok(Rational::zero());
    }
    if r.r1 + r.r1bar == 0 {
        return Err(Error::DegenerateRank);
    }
    let hh = hh_ch_integral_2d(key, mode)?;
    let sign = if (r.r1 - 1).rem_euclid(2) == 0 {
        int(1)
    } else {
        int(-1)
    };
    let fact = Rational::from_integer(factorial((r.r1 + r.r1bar - 1) as u64));
    Ok(sign * int(2) * fact * hh)
}

static B_SERIES: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// `b_g`: coefficient of `lambda^{2g}` in `(lambda/2) / sin(lambda/2)`.
pub fn b_coefficient(g: usize) -> Rational {
    if let Some(b) = B_SERIES.read().expect("b series").get(g) {
        return b.clone();
    }
    let mut table = B_SERIES.write().expect("b series");
    // s_j: coefficient of lambda^{2j} in sin(lambda/2)/(lambda/2)
    let s = |j: usize| {
        let v = Rational::one()
            / (Rational::from_integer(factorial(2 * j as u64 + 1)) * int(4).pow(j as i32));
        if j.is_multiple_of(2) {
            v
        } else {
            -v
        }
    };
    while table.len() <= g {
        let j = table.len();
        if j == 0 {
            table.push(Rational::one());
            continue;
        }
        let mut acc = Rational::zero();
        for i in 1..=j {
            acc -= s(i) * &table[j - i];
        }
        table.push(acc);
    }
    table[g].clone()
}

/// `k_g = sum_{g1+g2=g} b_{g1} b_{g2}`.
pub fn k_coefficient(g: usize) -> Rational {
    (0..=g)
        .map(|i| b_coefficient(i) * b_coefficient(g - i))
        .sum()
}

fn check_3d(n: u32, a: &[u32]) -> Result<u64> {
    let sum = monodromy_sum(n, a)?;
    if a.contains(&0) {
        return Err(Error::NontrivialMonodromyRequired);
    }
    if a.len() < 2 {
        return Err(Error::PreconditionViolated(
            "needs at least two insertions".into(),
        ));
    }
    Ok(sum)
}

/// `int lambda_{g,0} ch_{2g-3+m}(F_1)`.
pub fn lambda_ch_integral_3d(n: u32, g: u32, a: &[u32]) -> Result<Rational> {
    check_3d(n, a)?;
    let m = a.len();
    let deg = 2 * g as usize + m - 2;
    let deg_fact = Rational::from_integer(factorial(deg as u64));
    let ni = n as i64;
    let one = Cyclotomic::one(n);
    let mut total = Cyclotomic::zero(n);
    for l in 1..ni {
        let mut prod = one.clone();
        for &ai in a {
            prod = &prod * &(&cyclo_root(n, ai as i64 * l) - &one);
        }
        let mut inner = Cyclotomic::zero(n);
        for c in 0..ni {
            let b = bernoulli_poly(deg, &Rational::new(c.into(), ni.into())) / &deg_fact;
            inner += &cyclo_root(n, c * l).scale(&b);
        }
        total += &(&prod * &inner);
    }
    let value = total.to_rational().ok_or_else(|| {
        Error::PreconditionViolated("cyclotomic sum failed to reduce to a rational".into())
    })?;
    let pref = -int(ni).pow(2 * g as i32 - 2) * k_coefficient(g as usize) / int(2);
    Ok(pref * value)
}

/// `<prod tau_0(e_{a_i})>_g` for `[C^2/Z_n] x C`.
pub fn orbifold_correlator_3d(n: u32, g: u32, a: &[u32]) -> Result<Rational> {
    let sum = check_3d(n, a)?;
    let d = 2 * g as i64 - 3 + a.len() as i64;
    if d < 0 {
        return Err(Error::DegenerateDegree(d));
    }
    let sign = if (sum / n as u64) % 2 == 1 {
        int(1)
    } else {
        int(-1)
    };
    Ok(sign * Rational::from_integer(factorial(d as u64)) * lambda_ch_integral_3d(n, g, a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn ranks_examples() {
        assert_eq!(
            ranks(2, 0, &[1, 1, 1, 1]).unwrap(),
            Ranks {
                r1: 1,
                r1bar: 1,
                p: 0
            }
        );
        assert_eq!(
            ranks(3, 0, &[1, 1, 1]).unwrap(),
            Ranks {
                r1: 0,
                r1bar: 1,
                p: 0
            }
        );
        assert_eq!(
            ranks(2, 0, &[1, 1, 1]),
            Err(Error::MonodromyViolation { n: 2, sum: 3 })
        );
    }

    #[test]
    fn correlators_2d() {
        let bf = BracketMode::BruteForce;
        let k = OrbKey::new(2, 0, vec![1; 4], vec![0; 4]);
        assert_eq!(hh_ch_integral_2d(&k, bf).unwrap(), rat(-1, 4));
        assert_eq!(orbifold_correlator_2d(&k, bf).unwrap(), rat(-1, 2));
        let k = OrbKey::new(3, 0, vec![1; 3], vec![0; 3]);
        assert_eq!(hh_ch_integral_2d(&k, bf).unwrap(), rat(-1, 6));
        assert_eq!(orbifold_correlator_2d(&k, bf).unwrap(), rat(1, 3));
        let k = OrbKey::new(2, 0, vec![1, 1], vec![0, 0]);
        assert_eq!(orbifold_correlator_2d(&k, bf), Err(Error::DegenerateRank));
        let k = OrbKey::new(2, 1, vec![1, 1], vec![0, 0]);
        assert_eq!(orbifold_correlator_2d(&k, bf).unwrap(), int(0));
    }

    #[test]
    fn series_values() {
        assert_eq!(b_coefficient(0), int(1));
        assert_eq!(b_coefficient(1), rat(1, 24));
        assert_eq!(b_coefficient(2), rat(7, 5760));
        assert_eq!(k_coefficient(1), rat(1, 12));
        assert_eq!(k_coefficient(2), rat(1, 240));
    }

    #[test]
    fn correlators_3d() {
        assert_eq!(
            lambda_ch_integral_3d(2, 0, &[1, 1, 1, 1]).unwrap(),
            rat(-1, 4)
        );
        assert_eq!(
            orbifold_correlator_3d(2, 0, &[1, 1, 1, 1]).unwrap(),
            rat(1, 4)
        );
        assert_eq!(
            orbifold_correlator_3d(3, 0, &[1, 2]),
            Err(Error::DegenerateDegree(-1))
        );
        assert_eq!(
            orbifold_correlator_3d(3, 0, &[1, 2, 0]),
            Err(Error::NontrivialMonodromyRequired)
        );
    }
}
