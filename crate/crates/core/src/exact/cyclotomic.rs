use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::Rational;

/// Reduction data for `Q(xi_N)`: `Phi_N` and `x^e mod Phi_N` for `0 <= e < N`.
struct FieldData {
    phi: Vec<BigInt>,
    powers: Vec<Vec<BigInt>>,
}

type FieldCache = RwLock<HashMap<u32, Arc<FieldData>>>;

fn field_cache() -> &'static FieldCache {
    static CACHE: OnceLock<FieldCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

pub fn euler_phi(n: u32) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

/// Exact division of integer polynomials (coefficients low to high) by a monic divisor.
fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn build_field(n: u32) -> FieldData {
    let mut phi: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    phi[0] = -BigInt::one();
    phi[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            phi = div_monic(&phi, &field(d).phi);
        }
    }
    let deg = phi.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![BigInt::zero(); deg];
    if deg > 0 {
        cur[0] = BigInt::one();
    }
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce by the monic phi
        let top = if deg > 0 {
            cur[deg - 1].clone()
        } else {
            BigInt::zero()
        };
        for i in (1..deg).rev() {
            cur[i] = cur[i - 1].clone() - &top * &phi[i];
        }
        if deg > 0 {
            cur[0] = -&top * &phi[0];
        }
    }
    FieldData { phi, powers }
}

fn field(n: u32) -> Arc<FieldData> {
    if let Some(f) = field_cache().read().expect("field cache").get(&n) {
        return f.clone();
    }
    let built = Arc::new(build_field(n));
    field_cache()
        .write()
        .expect("field cache")
        .entry(n)
        .or_insert(built)
        .clone()
}

/// Coefficients of the cyclotomic polynomial `Phi_n`, low degree first.
pub fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic order must be positive");
    field(n).phi.clone()
}

/// An element of `Q(xi_N)` in the power basis `1, xi, ..., xi^{phi(N)-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

pub fn cyclo_root(order: u32, a: i64) -> Cyclotomic {
    Cyclotomic::root(order, a)
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let deg = euler_phi(order);
        Cyclotomic {
            order,
            coeffs: vec![Rational::zero(); deg],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: u32, r: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(order: u32, k: i64) -> Self {
        Self::from_rational(order, Rational::from_integer(BigInt::from(k)))
    }

    /// `xi_N^a`.
    pub fn root(order: u32, a: i64) -> Self {
        let f = field(order);
        let e = a.rem_euclid(order as i64) as usize;
        Cyclotomic {
            order,
            coeffs: f.powers[e]
                .iter()
                .cloned()
                .map(Rational::from_integer)
                .collect(),
        }
    }

    /// Reduces `sum_e c_e xi^e` for arbitrary integer exponents.
    pub fn from_exponents<I>(order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut folded = vec![Rational::zero(); order as usize];
        for (e, c) in terms {
            folded[e.rem_euclid(order as i64) as usize] += c;
        }
        Self::reduce(order, folded)
    }

    fn reduce(order: u32, folded: Vec<Rational>) -> Self {
        let f = field(order);
        let deg = f.phi.len() - 1;
        let mut coeffs = vec![Rational::zero(); deg];
        for (e, c) in folded.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e < deg {
                coeffs[e] += c;
                continue;
            }
            for (slot, p) in coeffs.iter_mut().zip(&f.powers[e]) {
                if !p.is_zero() {
                    *slot += &c * p;
                }
            }
        }
        Cyclotomic { order, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Image under `Q(xi_N) -> Q(xi_{kN})`, `xi_N -> xi_{kN}^k`.
    pub fn embed(&self, k: u32) -> Self {
        assert!(k >= 1);
        let order = self.order * k;
        Self::from_exponents(
            order,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 * k as i64, c.clone())),
        )
    }

    /// The Galois automorphism `xi -> xi^j`, `gcd(j, N) = 1`.
    pub fn galois(&self, j: i64) -> Self {
        debug_assert_eq!(j.rem_euclid(self.order as i64).gcd(&(self.order as i64)), 1);
        Self::from_exponents(
            self.order,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 * j, c.clone())),
        )
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Inverse via the product of the nontrivial Galois conjugates over the norm.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.order as i64;
        let mut others = Self::one(self.order);
        for j in 2..=n {
            if j.gcd(&n) == 1 {
                others = &others * &self.galois(j);
            }
        }
        let norm = (&others * self).to_rational().expect("norm is rational");
        Some(others.scale(&norm.recip()))
    }

    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(self.order);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            k >>= 1;
            if k > 0 {
                sq = &sq * &sq;
            }
        }
        Some(acc)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.order, other.order, "cyclotomic orders differ");
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z{}", self.order)?,
                _ => write!(f, "({c})*z{}^{i}", self.order)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Cyclotomic", 2)?;
        st.serialize_field("order", &self.order)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check(rhs);
        Cyclotomic {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check(rhs);
        Cyclotomic {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check(rhs);
        let n = self.order as usize;
        let mut folded = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    folded[(i + j) % n] += a * b;
                }
            }
        }
        Cyclotomic::reduce(self.order, folded)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &'a Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        self.check(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        self.check(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn phi_polys() {
        let as_i64 = |n| -> Vec<i64> {
            cyclotomic_poly(n)
                .iter()
                .map(|c| c.try_into().unwrap())
                .collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(as_i64(5), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn roots() {
        assert_eq!(cyclo_root(6, 3), Cyclotomic::from_int(6, -1));
        assert_eq!(cyclo_root(2, 1), Cyclotomic::from_int(2, -1));
        let s = (1..5).fold(Cyclotomic::zero(5), |acc, a| acc + cyclo_root(5, a));
        assert_eq!(s, Cyclotomic::from_int(5, -1));
        assert_eq!(cyclo_root(7, -1), cyclo_root(7, 6));
    }

    #[test]
    fn inverse_and_embed() {
        let a = &cyclo_root(12, 1) + &Cyclotomic::from_rational(12, rat(3, 2));
        let ai = a.inv().unwrap();
        assert!((&a * &ai).is_one());
        let i4 = cyclo_root(4, 1);
        assert_eq!(&i4 * &i4, Cyclotomic::from_int(4, -1));
        assert_eq!(i4.embed(2), cyclo_root(8, 2));
        assert_eq!(i4.conj(), cyclo_root(4, 3));
        assert_eq!(Cyclotomic::from_int(3, 2).to_rational(), Some(int(2)));
    }
}
