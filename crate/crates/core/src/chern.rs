//! Quotient-ring model for the Chern classes of the two Hurwitz-Hodge bundles.
//!
//! Generators `c_1..c_{r1}` (degree `i`) and the equivariant parameters `t1, t2`
//! (degree 1). The dual classes `c'_j` come from `sum_j c'_j (-u)^j = (sum_i c_i u^i)^{-1}`;
//! the Mumford-type relation is imposed as the ideal generated by `c'_j`, `j > r1bar`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact::{factorial, int, Rational};

/// Exponent vector: `c_1..c_{r1}` followed by `t1, t2`.
pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, r: &Rational) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * r);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct ChernRing {
    pub r1: usize,
    pub r1bar: usize,
    pub degree_cap: usize,
    c_prime: Vec<Poly>,
}

impl ChernRing {
    fn nvars(&self) -> usize {
        self.r1 + 2
    }

    pub fn constant(&self, r: Rational) -> Poly {
        let mut p = Poly::default();
        p.add_term(vec![0; self.nvars()], r);
        p
    }

    /// `c_i`, with `c_0 = 1` and `c_i = 0` outside `0..=r1`.
    pub fn c(&self, i: i64) -> Poly {
        if i == 0 {
            return self.constant(Rational::one());
        }
        if i < 0 || i as usize > self.r1 {
            return Poly::default();
        }
        let mut m = vec![0; self.nvars()];
        m[i as usize - 1] = 1;
        let mut p = Poly::default();
        p.add_term(m, Rational::one());
        p
    }

    /// `c'_j` for `0 <= j <= degree_cap`, else 0.
    pub fn c_prime(&self, j: i64) -> Poly {
        if j < 0 || j as usize > self.degree_cap {
            return Poly::default();
        }
        self.c_prime[j as usize].clone()
    }

    pub fn t(&self, which: usize) -> Poly {
        let mut m = vec![0; self.nvars()];
        m[self.r1 + which - 1] = 1;
        let mut p = Poly::default();
        p.add_term(m, Rational::one());
        p
    }

    /// Weighted degree in the `c` generators only.
    pub fn c_degree(&self, m: &Monomial) -> usize {
        m[..self.r1]
            .iter()
            .enumerate()
            .map(|(i, e)| (i + 1) * *e as usize)
            .sum()
    }

    fn monomials_of_degree(&self, d: usize) -> Vec<Monomial> {
        fn rec(r1: usize, var: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if var == r1 {
                if left == 0 {
                    let mut m = cur.clone();
                    m.extend([0, 0]);
                    out.push(m);
                }
                return;
            }
            let w = var + 1;
            for e in 0..=left / w {
                cur.push(e as u32);
                rec(r1, var + 1, left - e * w, cur, out);
                cur.pop();
            }
        }
        let mut out = vec![];
        rec(self.r1, 0, d, &mut vec![], &mut out);
        out
    }

    /// Row-reduced spanning set of the ideal in `c`-degree `d`, keyed by pivot.
    fn ideal_basis(&self, d: usize) -> BTreeMap<Monomial, Poly> {
        let mut basis: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for j in (self.r1bar + 1)..=d {
            for mono in self.monomials_of_degree(d - j) {
                let mut mp = Poly::default();
                mp.add_term(mono, Rational::one());
                let mut v = mp.mul(&self.c_prime(j as i64));
                v = reduce(&basis, v);
                if let Some((lead, lc)) = v
                    .terms
                    .iter()
                    .next_back()
                    .map(|(m, c)| (m.clone(), c.clone()))
                {
                    let v = v.scale(&lc.recip());
                    for row in basis.values_mut() {
                        if let Some(c) = row.terms.get(&lead).cloned() {
                            *row = row.sub(&v.scale(&c));
                        }
                    }
                    basis.insert(lead, v);
                }
            }
        }
        basis
    }

    /// Remainder of `f` modulo the ideal, applied separately to each
    /// `(t-exponent, c-degree)` component. Zero iff `f` lies in the ideal.
    pub fn reduce_mod_ideal(&self, f: &Poly) -> Poly {
        let mut parts: BTreeMap<(u32, u32, usize), Poly> = BTreeMap::new();
        for (m, c) in &f.terms {
            let key = (m[self.r1], m[self.r1 + 1], self.c_degree(m));
            let mut stripped = m.clone();
            stripped[self.r1] = 0;
            stripped[self.r1 + 1] = 0;
            parts.entry(key).or_default().add_term(stripped, c.clone());
        }
        let mut out = Poly::default();
        let mut bases: BTreeMap<usize, BTreeMap<Monomial, Poly>> = BTreeMap::new();
        for ((e1, e2, d), p) in parts {
            let basis = bases.entry(d).or_insert_with(|| self.ideal_basis(d));
            for (mut m, c) in reduce(basis, p).terms {
                m[self.r1] = e1;
                m[self.r1 + 1] = e2;
                out.add_term(m, c);
            }
        }
        out
    }

    pub fn in_ideal(&self, f: &Poly) -> bool {
        self.reduce_mod_ideal(f).is_zero()
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        let mut parts = vec![];
        for (i, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = if i < self.r1 {
                format!("c{}", i + 1)
            } else {
                format!("t{}", i - self.r1 + 1)
            };
            parts.push(if e == 1 { name } else { format!("{name}^{e}") });
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

fn reduce(basis: &BTreeMap<Monomial, Poly>, mut v: Poly) -> Poly {
    for (pivot, row) in basis.iter().rev() {
        if let Some(c) = v.terms.get(pivot).cloned() {
            v = v.sub(&row.scale(&c));
        }
    }
    v
}

pub fn build_ring(r1: usize, r1bar: usize, degree_cap: usize) -> ChernRing {
    let mut ring = ChernRing {
        r1,
        r1bar,
        degree_cap,
        c_prime: vec![],
    };
    // d_j = [u^j] (sum c_i u^i)^{-1}; c'_j = (-1)^j d_j
    let mut d: Vec<Poly> = vec![ring.constant(Rational::one())];
    for j in 1..=degree_cap {
        let mut acc = Poly::default();
        for i in 1..=j.min(r1) {
            acc = acc.sub(&ring.c(i as i64).mul(&d[j - i]));
        }
        d.push(acc);
    }
    ring.c_prime = d
        .into_iter()
        .enumerate()
        .map(|(j, p)| {
            if j % 2 == 0 {
                p
            } else {
                p.scale(&-Rational::one())
            }
        })
        .collect();
    ring
}

/// `ch_k` from `c_1..c_{r1}` by Newton's identities; `ch_0 = r1`.
pub fn ch_from_chern(ring: &ChernRing, k: usize) -> Poly {
    if k == 0 {
        return ring.constant(int(ring.r1 as i64));
    }
    let mut p: Vec<Poly> = vec![Poly::default()];
    for j in 1..=k {
        let sign = |e: usize| {
            if e.is_multiple_of(2) {
                Rational::one()
            } else {
                -Rational::one()
            }
        };
        let mut acc = ring.c(j as i64).scale(&(sign(j - 1) * int(j as i64)));
        for i in 1..j {
            acc = acc.add(&ring.c(i as i64).mul(&p[j - i]).scale(&sign(i - 1)));
        }
        p.push(acc);
    }
    p[k].scale(&Rational::from_integer(factorial(k as u64)).recip())
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ChernCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChernReport {
    pub r1: usize,
    pub r1bar: usize,
    pub checks: Vec<ChernCheck>,
}

impl ChernReport {
    pub fn failures(&self) -> impl Iterator<Item = &ChernCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn record(ring: &ChernRing, name: String, diff: Poly, modulo_ideal: bool) -> ChernCheck {
    let residue = if modulo_ideal {
        ring.reduce_mod_ideal(&diff)
    } else {
        diff
    };
    let witness = residue
        .terms
        .iter()
        .next_back()
        .map(|(m, c)| format!("{} * {}", c, ring.render_monomial(m)));
    ChernCheck {
        name,
        passed: witness.is_none(),
        witness,
    }
}

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn verify_mumford_consequences(r1: usize, r1bar: usize) -> ChernReport {
    let top = r1 + r1bar;
    let ring = build_ring(r1, r1bar, top.max(1));
    let (ri, rb) = (r1 as i64, r1bar as i64);
    let mut checks = vec![];

    for k in 1..=top {
        let lhs = ch_from_chern(&ring, k).scale(&Rational::from_integer(factorial(k as u64)));
        let mut rhs = Poly::default();
        for i in 1..=k as i64 {
            let term = ring.c(i).mul(&ring.c_prime(k as i64 - i));
            rhs = rhs.add(&term.scale(&(sign(i - 1) * int(i))));
        }
        checks.push(record(&ring, format!("newton k={k}"), lhs.sub(&rhs), false));
    }

    let top_product = ring.c(ri).mul(&ring.c_prime(rb));
    checks.push(record(&ring, "c_r1 c'_r1bar = 0".into(), top_product, true));

    let cc = ring
        .c(ri - 1)
        .mul(&ring.c_prime(rb))
        .sub(&ring.c(ri).mul(&ring.c_prime(rb - 1)));
    checks.push(record(&ring, "cc".into(), cc, true));

    let chcl_deg = top as i64 - 1;
    let chcl_lhs = if chcl_deg >= 0 {
        ch_from_chern(&ring, chcl_deg as usize)
            .scale(&Rational::from_integer(factorial(chcl_deg as u64)))
    } else {
        Poly::default()
    };
    let chcl_rhs = ring.c(ri - 1).mul(&ring.c_prime(rb)).scale(&sign(ri - 1));
    checks.push(record(&ring, "chcl".into(), chcl_lhs.sub(&chcl_rhs), true));

    checks.push(record(
        &ring,
        format!("ch_{top} = 0"),
        ch_from_chern(&ring, top),
        true,
    ));

    let mut left = Poly::default();
    for i in 0..=ri {
        let mut term = ring.c(i);
        for _ in 0..(ri - i) {
            term = term.mul(&ring.t(1));
        }
        left = left.add(&term);
    }
    let mut right = Poly::default();
    for j in 0..=rb {
        let mut term = ring.c_prime(j);
        for _ in 0..(rb - j) {
            term = term.mul(&ring.t(2));
        }
        right = right.add(&term);
    }
    let product = left.mul(&right);
    let mut leading = Poly::default();
    for (m, c) in product.terms() {
        if ring.c_degree(m) as i64 == chcl_deg {
            leading.add_term(m.clone(), c.clone());
        }
    }
    let expected = ring
        .t(1)
        .add(&ring.t(2))
        .mul(&chcl_lhs)
        .scale(&sign(ri - 1));
    checks.push(record(
        &ring,
        "leading term".into(),
        leading.sub(&expected),
        true,
    ));

    ChernReport { r1, r1bar, checks }
}
