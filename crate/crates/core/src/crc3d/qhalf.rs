//! Truncated Laurent series in `x = q^{1/2}` with a known-precision bound.

use std::fmt;

use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::exact::{fmt_rational, Rational};

/// Precision of an exact (finite) series.
pub const EXACT: i64 = i64::MAX / 4;

/// `sum_{e < prec} c_e x^e` with every coefficient below `prec` known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QHalfSeries {
    start: i64,
    coeffs: Vec<Rational>,
    prec: i64,
}

impl QHalfSeries {
    pub fn zero(prec: i64) -> Self {
        QHalfSeries {
            start: 0,
            coeffs: vec![],
            prec,
        }
    }

    /// The exact monomial `c x^e`.
    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut s = QHalfSeries {
            start: e,
            coeffs: vec![c],
            prec: EXACT,
        };
        s.normalize();
        s
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    /// Builds from `(exponent, coefficient)` pairs known below `prec`.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>, prec: i64) -> Self {
        let mut s = QHalfSeries::zero(prec);
        for (e, c) in terms {
            s.add_coeff(e, c);
        }
        s
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Lowest exponent with a nonzero coefficient, or the precision.
    pub fn valuation(&self) -> i64 {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map_or(self.prec, |i| self.start + i as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn coeff(&self, e: i64) -> Option<Rational> {
        if e >= self.prec {
            return None;
        }
        if e < self.start {
            return Some(Rational::zero());
        }
        Some(
            self.coeffs
                .get((e - self.start) as usize)
                .cloned()
                .unwrap_or_else(Rational::zero),
        )
    }

    /// Nonzero `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.start + i as i64, c))
    }

    fn add_coeff(&mut self, e: i64, c: Rational) {
        if e >= self.prec || c.is_zero() {
            return;
        }
        if self.coeffs.is_empty() {
            self.start = e;
        }
        if e < self.start {
            let pad = (self.start - e) as usize;
            let mut v = vec![Rational::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.start = e;
        }
        let i = (e - self.start) as usize;
        if i >= self.coeffs.len() {
            self.coeffs.resize(i + 1, Rational::zero());
        }
        self.coeffs[i] += c;
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len());
        self.coeffs.drain(..lead);
        self.start += lead as i64;
        if self.coeffs.is_empty() {
            self.start = 0;
        }
        let keep = (self.prec - self.start).max(0) as usize;
        if self.coeffs.len() > keep {
            self.coeffs.truncate(keep);
            self.normalize();
        }
    }

    /// Lowers the precision to `prec` (never raises it).
    pub fn truncate(&self, prec: i64) -> Self {
        let mut s = self.clone();
        s.prec = s.prec.min(prec);
        s.normalize();
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = self.truncate(other.prec);
        for (e, c) in other.terms() {
            s.add_coeff(e, c.clone());
        }
        s.normalize();
        s
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut s = self.clone();
        for c in &mut s.coeffs {
            *c *= r;
        }
        s.normalize();
        s
    }

    /// Multiplies by `x^e`.
    pub fn shift(&self, e: i64) -> Self {
        let mut s = self.clone();
        s.start += e;
        if s.prec != EXACT {
            s.prec += e;
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (va, vb) = (self.valuation(), other.valuation());
        let prec = sat_add(va, other.prec).min(sat_add(vb, self.prec));
        let mut s = QHalfSeries::zero(prec);
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                if ea + eb < prec {
                    s.add_coeff(ea + eb, ca * cb);
                }
            }
        }
        s.normalize();
        s
    }

    /// `1 / (1 - x^step)` to absolute precision `prec`.
    pub fn geometric(step: i64, prec: i64) -> Self {
        assert!(step > 0, "geometric step must be positive");
        let terms = (0..)
            .map(|i| i * step)
            .take_while(|&e| e < prec)
            .map(|e| (e, Rational::one()));
        Self::from_terms(terms, prec)
    }
}

fn sat_add(a: i64, b: i64) -> i64 {
    if a >= EXACT || b >= EXACT {
        EXACT
    } else {
        a + b
    }
}

impl fmt::Display for QHalfSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .map(|(e, c)| format!("{}*x^{}", fmt_rational(c), e))
            .collect();
        let body = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        };
        if self.prec >= EXACT {
            write!(f, "{body}")
        } else {
            write!(f, "{body} + O(x^{})", self.prec)
        }
    }
}

impl Serialize for QHalfSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QHalfSeries", 2)?;
        let terms: Vec<(i64, String)> = self.terms().map(|(e, c)| (e, fmt_rational(c))).collect();
        st.serialize_field("terms", &terms)?;
        st.serialize_field("precision", &(self.prec < EXACT).then_some(self.prec))?;
        st.end()
    }
}
