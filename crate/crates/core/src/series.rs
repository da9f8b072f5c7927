//! Truncated sparse multivariate power series with cyclotomic coefficients.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{int, Cyclotomic, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VarRole {
    /// The fused product `x_{a,k} u_a`.
    X {
        a: u32,
        k: u32,
    },
    U {
        a: u32,
    },
    Y {
        a: u32,
        k: u32,
    },
    Q {
        i: u32,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Var {
    pub name: String,
    pub role: VarRole,
    /// Contribution to the weighted degree (the descendant index `k`).
    pub weight: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VarRegistry {
    vars: Vec<Var>,
}

impl VarRegistry {
    pub fn new(vars: Vec<Var>) -> Result<Arc<Self>> {
        let mut names: Vec<&str> = vars.iter().map(|v| v.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        if names.len() != vars.len() {
            return Err(Error::PreconditionViolated(
                "duplicate variable names".into(),
            ));
        }
        Ok(Arc::new(VarRegistry { vars }))
    }

    fn build(vars: Vec<Var>) -> Arc<Self> {
        Self::new(vars).expect("generated names are unique")
    }

    /// `x{a}_{k}` for `1 <= a < n`, `0 <= k <= kmax`.
    pub fn x_vars(n: u32, kmax: u32) -> Arc<Self> {
        Self::build(
            (1..n)
                .flat_map(|a| (0..=kmax).map(move |k| (a, k)))
                .map(|(a, k)| Var {
                    name: format!("x{a}_{k}"),
                    role: VarRole::X { a, k },
                    weight: k,
                })
                .collect(),
        )
    }

    pub fn y_vars(n: u32, kmax: u32) -> Arc<Self> {
        Self::build(
            (1..n)
                .flat_map(|a| (0..=kmax).map(move |k| (a, k)))
                .map(|(a, k)| Var {
                    name: format!("y{a}_{k}"),
                    role: VarRole::Y { a, k },
                    weight: k,
                })
                .collect(),
        )
    }

    pub fn u_vars(n: u32) -> Arc<Self> {
        Self::build(
            (1..n)
                .map(|a| Var {
                    name: format!("u{a}"),
                    role: VarRole::U { a },
                    weight: 0,
                })
                .collect(),
        )
    }

    pub fn q_vars(n: u32) -> Arc<Self> {
        Self::build(
            (1..n)
                .map(|i| Var {
                    name: format!("Q{i}"),
                    role: VarRole::Q { i },
                    weight: 0,
                })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn index_of(&self, role: VarRole) -> Option<usize> {
        self.vars.iter().position(|v| v.role == role)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    /// Terms of total degree above this are dropped.
    pub total: u32,
    /// Terms of weighted degree above this are dropped.
    pub weight: Option<u32>,
}

impl Truncation {
    pub fn total(total: u32) -> Self {
        Truncation {
            total,
            weight: None,
        }
    }

    pub fn weighted(total: u32, weight: u32) -> Self {
        Truncation {
            total,
            weight: Some(weight),
        }
    }
}

pub type Exponent = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSeries {
    reg: Arc<VarRegistry>,
    order: u32,
    trunc: Truncation,
    terms: BTreeMap<Exponent, Cyclotomic>,
}

impl MultiSeries {
    pub fn zero(reg: Arc<VarRegistry>, order: u32, trunc: Truncation) -> Self {
        MultiSeries {
            reg,
            order,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(reg: Arc<VarRegistry>, order: u32, trunc: Truncation, c: Cyclotomic) -> Self {
        let mut s = Self::zero(reg, order, trunc);
        let e = vec![0; s.reg.len()];
        s.add_term(e, c);
        s
    }

    pub fn one(reg: Arc<VarRegistry>, order: u32, trunc: Truncation) -> Self {
        Self::constant(reg, order, trunc, Cyclotomic::one(order))
    }

    pub fn var(reg: Arc<VarRegistry>, order: u32, trunc: Truncation, i: usize) -> Self {
        let mut e = vec![0; reg.len()];
        e[i] = 1;
        let mut s = Self::zero(reg, order, trunc);
        s.add_term(e, Cyclotomic::one(order));
        s
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.reg
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Cyclotomic> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(e: &[u32]) -> u32 {
        e.iter().sum()
    }

    pub fn weight(&self, e: &[u32]) -> u32 {
        e.iter()
            .zip(self.reg.vars())
            .map(|(x, v)| x * v.weight)
            .sum()
    }

    pub fn within(&self, e: &[u32]) -> bool {
        Self::total_degree(e) <= self.trunc.total
            && self.trunc.weight.is_none_or(|w| self.weight(e) <= w)
    }

    /// Adds `c * x^e`, silently dropping it when outside the truncation.
    pub fn add_term(&mut self, e: Exponent, c: Cyclotomic) {
        assert_eq!(e.len(), self.reg.len(), "exponent length");
        if c.is_zero() || !self.within(&e) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                *slot += &c;
                if slot.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.reg != other.reg || self.order != other.order {
            return Err(Error::RegistryMismatch);
        }
        Ok(())
    }

    fn meet(&self, other: &Self) -> Truncation {
        let weight = match (self.trunc.weight, other.trunc.weight) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Truncation {
            total: self.trunc.total.min(other.trunc.total),
            weight,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = Self::zero(self.reg.clone(), self.order, self.meet(other));
        for (e, c) in self.terms.iter().chain(&other.terms) {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    /// In-place `self += other`, keeping `self`'s truncation.
    pub fn accumulate(&mut self, other: &Self) -> Result<()> {
        self.compatible(other)?;
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn scale(&self, k: &Cyclotomic) -> Self {
        let mut out = Self::zero(self.reg.clone(), self.order, self.trunc);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.reg.clone(), self.order, self.trunc);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.scale(r));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = Self::zero(self.reg.clone(), self.order, self.meet(other));
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if out.within(&e) {
                    out.add_term(e, ca * cb);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::one(self.reg.clone(), self.order, self.trunc);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn constant_term(&self) -> Cyclotomic {
        self.terms
            .get(&vec![0; self.reg.len()])
            .cloned()
            .unwrap_or_else(|| Cyclotomic::zero(self.order))
    }

    fn without_constant(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&vec![0; self.reg.len()]);
        out
    }

    /// Truncated exponential; requires zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::BadConstantTerm("exp"));
        }
        let mut acc = Self::one(self.reg.clone(), self.order, self.trunc);
        let mut term = acc.clone();
        for j in 1..=self.trunc.total {
            term = term.mul(self)?.scale_rational(&int(j as i64).recip());
            if term.is_empty() {
                break;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Truncated logarithm; requires constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::BadConstantTerm("log"));
        }
        let h = self.without_constant();
        let mut acc = Self::zero(self.reg.clone(), self.order, self.trunc);
        let mut power = Self::one(self.reg.clone(), self.order, self.trunc);
        for j in 1..=self.trunc.total {
            power = power.mul(&h)?;
            if power.is_empty() {
                break;
            }
            let coeff = if j % 2 == 1 { int(1) } else { int(-1) } / int(j as i64);
            acc = acc.add(&power.scale_rational(&coeff))?;
        }
        Ok(acc)
    }

    /// Replaces each source variable `i` by the linear form `map[i]` in the
    /// variables of `target`.
    pub fn substitute_linear(
        &self,
        target: Arc<VarRegistry>,
        trunc: Truncation,
        map: &[Vec<(usize, Cyclotomic)>],
    ) -> Result<Self> {
        if map.len() != self.reg.len()
            || map
                .iter()
                .flatten()
                .any(|(j, c)| *j >= target.len() || c.order() != self.order)
        {
            return Err(Error::RegistryMismatch);
        }
        let forms: Vec<Self> = map
            .iter()
            .map(|form| {
                let mut s = Self::zero(target.clone(), self.order, trunc);
                for (j, c) in form {
                    let mut e = vec![0; target.len()];
                    e[*j] = 1;
                    s.add_term(e, c.clone());
                }
                s
            })
            .collect();
        let mut powers: Vec<Vec<Self>> = forms
            .iter()
            .map(|f| vec![Self::one(target.clone(), self.order, trunc), f.clone()])
            .collect();
        let mut out = Self::zero(target.clone(), self.order, trunc);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target.clone(), self.order, trunc, c.clone());
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                while powers[i].len() <= x as usize {
                    let next = powers[i].last().expect("nonempty").mul(&forms[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][x as usize])?;
                if term.is_empty() {
                    break;
                }
            }
            out.accumulate(&term)?;
        }
        Ok(out)
    }

    pub fn coefficient(&self, e: &[u32]) -> Result<Cyclotomic> {
        if e.len() != self.reg.len() {
            return Err(Error::RegistryMismatch);
        }
        if !self.within(e) {
            return Err(Error::OutOfTruncation);
        }
        Ok(self
            .terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| Cyclotomic::zero(self.order)))
    }

    /// Keeps the terms whose exponent satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&[u32]) -> bool) -> Self {
        let mut out = self.clone();
        out.terms.retain(|e, _| keep(e));
        out
    }

    /// Readable name of a monomial, e.g. `x1_0^3*x2_1`; `1` for the constant.
    pub fn monomial_name(&self, e: &[u32]) -> String {
        monomial_name(&self.reg, e)
    }

    pub fn to_json(&self) -> SeriesJson {
        let vars: Vec<String> = self.reg.vars().iter().map(|v| v.name.clone()).collect();
        let mut terms: Vec<(Vec<(String, u32)>, TermJson)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let exp: BTreeMap<String, u32> = e
                    .iter()
                    .zip(&vars)
                    .filter(|(x, _)| **x > 0)
                    .map(|(x, name)| (name.clone(), *x))
                    .collect();
                let key: Vec<(String, u32)> = exp.iter().map(|(k, v)| (k.clone(), *v)).collect();
                (
                    key,
                    TermJson {
                        exp,
                        coeff: c.clone(),
                    },
                )
            })
            .collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut sorted_vars = vars;
        sorted_vars.sort();
        SeriesJson {
            vars: sorted_vars,
            terms: terms.into_iter().map(|t| t.1).collect(),
        }
    }
}

pub fn monomial_name(reg: &VarRegistry, e: &[u32]) -> String {
    let mut parts: Vec<String> = e
        .iter()
        .zip(reg.vars())
        .filter(|(x, _)| **x > 0)
        .map(|(x, v)| {
            if *x == 1 {
                v.name.clone()
            } else {
                format!("{}^{}", v.name, x)
            }
        })
        .collect();
    parts.sort();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TermJson {
    pub exp: BTreeMap<String, u32>,
    pub coeff: Cyclotomic,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn two_vars(cap: u32) -> (Arc<VarRegistry>, Truncation) {
        (VarRegistry::u_vars(3), Truncation::total(cap))
    }

    #[test]
    fn ring_ops() {
        let (reg, tr) = two_vars(4);
        let one = MultiSeries::one(reg.clone(), 1, tr);
        let x = MultiSeries::var(reg.clone(), 1, tr, 0);
        let lhs = one.add(&x).unwrap().mul(&one.sub(&x).unwrap()).unwrap();
        let rhs = one.sub(&x.mul(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let (reg1, tr1) = two_vars(1);
        let a = MultiSeries::var(reg1.clone(), 1, tr1, 0);
        let b = MultiSeries::var(reg1, 1, tr1, 1);
        assert!(a.mul(&b).unwrap().is_empty());
    }

    #[test]
    fn exp_log() {
        let (reg, tr) = two_vars(5);
        let x = MultiSeries::var(reg.clone(), 1, tr, 0);
        let ex = x.exp().unwrap();
        assert_eq!(
            ex.coefficient(&[3, 0]).unwrap().to_rational(),
            Some(rat(1, 6))
        );
        assert_eq!(ex.log().unwrap(), x);
        assert_eq!(ex.coefficient(&[6, 0]), Err(Error::OutOfTruncation));
        assert_eq!(x.log(), Err(Error::BadConstantTerm("log")));
    }
}
