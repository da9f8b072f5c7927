//! The stationary 2D potential of `[C^2/Z_n]` computed four ways, the change
//! of variables to the resolution side, and the coefficientwise comparison.
//!
//! All series live over `Q(xi_{2n})`. Orbifold series use the fused variables
//! `x{a}_{k}` (standing for `x_{a,k} u_a`); the others use `y{a}_{k}`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    bernoulli_poly, cyclo_root, double_factorial, int, polylog_neg, Cyclotomic, Rational,
};
use crate::hodge::{orbifold_correlator_2d, BracketMode, OrbKey};
use crate::multiset::{expand, multiplicity_vectors};
use crate::series::{MultiSeries, Truncation, VarRegistry};

/// `xi_n^e` inside `Q(xi_{2n})`.
fn xi(n: u32, e: i64) -> Cyclotomic {
    cyclo_root(2 * n, 2 * e)
}

/// `xi_{2n}^a - xi_{2n}^{-a}`, i.e. `2i sin(a pi/n)`.
fn two_i_sin(n: u32, a: i64) -> Cyclotomic {
    &cyclo_root(2 * n, a) - &cyclo_root(2 * n, -a)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChangeOfVars2D {
    pub n: u32,
    /// `forward[a-1][b-1]`: coefficient of `x_{b,k} u_b` in `y_{a,k}`.
    pub forward: Vec<Vec<Cyclotomic>>,
    /// `inverse[a-1][j-1]`: coefficient of `y_{j,k}` in `x_{a,k} u_a`.
    pub inverse: Vec<Vec<Cyclotomic>>,
}

impl ChangeOfVars2D {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::PreconditionViolated("n must be at least 2".into()));
        }
        let ni = n as i64;
        let inv_n = Rational::new(1.into(), ni.into());
        let forward = (1..ni)
            .map(|a| {
                (1..ni)
                    .map(|b| (&two_i_sin(n, b) * &xi(n, a * b)).scale(&inv_n))
                    .collect()
            })
            .collect();
        let inverse = (1..ni)
            .map(|a| {
                let d = two_i_sin(n, a).inv().expect("sin(a pi/n) is nonzero");
                (1..ni)
                    .map(|j| &(&xi(n, -a * j) - &Cyclotomic::one(2 * n)) * &d)
                    .collect()
            })
            .collect();
        Ok(ChangeOfVars2D {
            n,
            forward,
            inverse,
        })
    }

    /// `forward * inverse == I`, exactly.
    pub fn is_inverse_pair(&self) -> bool {
        let r = self.n as usize - 1;
        (0..r).all(|a| {
            (0..r).all(|j| {
                let mut acc = Cyclotomic::zero(2 * self.n);
                for b in 0..r {
                    acc += &(&self.forward[a][b] * &self.inverse[b][j]);
                }
                if a == j {
                    acc.is_one()
                } else {
                    acc.is_zero()
                }
            })
        })
    }

    /// Linear forms sending `x{a}_{k}` to a combination of `y{j}_{k}`.
    pub fn x_to_y_map(&self, x: &VarRegistry, y: &VarRegistry) -> Vec<Vec<(usize, Cyclotomic)>> {
        x.vars()
            .iter()
            .map(|v| match v.role {
                crate::series::VarRole::X { a, k } => (1..self.n)
                    .filter_map(|j| {
                        let idx = y.index_of(crate::series::VarRole::Y { a: j, k })?;
                        Some((idx, self.inverse[a as usize - 1][j as usize - 1].clone()))
                    })
                    .collect(),
                _ => vec![],
            })
            .collect()
    }
}

/// `(n-1)x(n-1)` matrix with `n-1` on the diagonal and `-1` elsewhere, times
/// `(J+I)/n`, is the identity.
pub fn xy_matrix_identity(n: u32) -> bool {
    let r = n as usize - 1;
    let nr = int(n as i64);
    (0..r).all(|i| {
        (0..r).all(|j| {
            let mut acc = Rational::zero();
            for l in 0..r {
                let m = if i == l { int(n as i64 - 1) } else { int(-1) };
                let p = if l == j { int(2) } else { int(1) } / &nr;
                acc += m * p;
            }
            acc == if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    })
}

fn check_bl(n: u32, b: u32, l: u32) -> Result<()> {
    if n < 2 || b >= n || l == 0 || l >= n {
        return Err(Error::PreconditionViolated(format!(
            "need 0 <= b < n and 1 <= l < n, got n={n} b={b} l={l}"
        )));
    }
    Ok(())
}

/// `K(b,l,j) = sum_k xi^{bk} xi_{2n}^k (xi^{kl}-1) (i/(2 sin(k pi/n))) (xi^{-jk}-1)`.
pub fn kernel_direct(n: u32, b: u32, l: u32, j: u32) -> Result<Cyclotomic> {
    check_bl(n, b, l)?;
    if j == 0 || j >= n {
        return Err(Error::PreconditionViolated(format!(
            "need 1 <= j < n, got {j}"
        )));
    }
    let one = Cyclotomic::one(2 * n);
    let (b, l, j) = (b as i64, l as i64, j as i64);
    let mut acc = Cyclotomic::zero(2 * n);
    for k in 1..n as i64 {
        // i / (2 sin) = -1 / (2i sin)
        let isin = -two_i_sin(n, k).inv().expect("sin(k pi/n) is nonzero");
        let t = &(&xi(n, b * k) * &cyclo_root(2 * n, k)) * &(&xi(n, k * l) - &one);
        acc += &(&(&t * &isin) * &(&xi(n, -j * k) - &one));
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WindowKernel {
    pub sigma: i8,
    pub s: u32,
    pub t: u32,
}

pub fn kernel_window(n: u32, b: u32, l: u32) -> Result<WindowKernel> {
    check_bl(n, b, l)?;
    Ok(if b + l < n {
        WindowKernel {
            sigma: 1,
            s: b + 1,
            t: b + l,
        }
    } else {
        WindowKernel {
            sigma: -1,
            s: b + l + 1 - n,
            t: b,
        }
    })
}

/// Checks `-sum_j K(b,l,j) y_j = sigma n y_{s->t}` for every `(b,l)`.
pub fn kernel_lemma_holds(n: u32) -> Result<bool> {
    for b in 0..n {
        for l in 1..n {
            let w = kernel_window(n, b, l)?;
            for j in 1..n {
                let lhs = -kernel_direct(n, b, l, j)?;
                let inside = w.s <= j && j <= w.t;
                let rhs = if inside { w.sigma as i64 * n as i64 } else { 0 };
                if lhs != Cyclotomic::from_int(2 * n, rhs) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SkipEntry {
    pub route: String,
    pub term: String,
    pub reason: String,
}

/// `4^k (2k+1)!!`.
fn psi_weight(k: u32) -> Rational {
    Rational::from_integer(double_factorial(2 * k as i64 + 1)) * int(4).pow(k as i32)
}

fn mult_factorial(mult: &[u32]) -> Rational {
    mult.iter()
        .map(|&x| Rational::from_integer(crate::exact::factorial(x as u64)))
        .product()
}

fn y_space(n: u32, g: u32, d: u32) -> (Arc<VarRegistry>, Truncation) {
    (VarRegistry::y_vars(n, g), Truncation::weighted(d, g))
}

fn check_args(n: u32, d: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::PreconditionViolated("n must be at least 2".into()));
    }
    if d < 2 {
        return Err(Error::PreconditionViolated(
            "degree cap must be at least 2".into(),
        ));
    }
    Ok(())
}

/// A computed potential together with the terms left out of it.
#[derive(Clone, Debug)]
pub struct Potential {
    pub series: MultiSeries,
    pub skipped: Vec<SkipEntry>,
}

/// Orbifold side: `sum corr / prod mult! * prod x_{a_i,k_i} u_{a_i}` over
/// multisets with `sum k = g`.
pub fn stationary_potential_2d(n: u32, g: u32, d: u32, mode: BracketMode) -> Result<Potential> {
    check_args(n, d)?;
    let reg = VarRegistry::x_vars(n, g);
    let mut series = MultiSeries::zero(reg.clone(), 2 * n, Truncation::weighted(d, g));
    let mut skipped = vec![];
    let roles: Vec<(u32, u32)> = reg
        .vars()
        .iter()
        .map(|v| match v.role {
            crate::series::VarRole::X { a, k } => (a, k),
            _ => unreachable!("x registry"),
        })
        .collect();
    for mult in multiplicity_vectors(roles.len(), d) {
        let idx = expand(&mult);
        let ksum: u32 = idx.iter().map(|&i| roles[i].1).sum();
        let asum: u32 = idx.iter().map(|&i| roles[i].0).sum();
        if ksum != g || !asum.is_multiple_of(n) {
            continue;
        }
        let key = OrbKey::new(
            n,
            g,
            idx.iter().map(|&i| roles[i].0).collect(),
            idx.iter().map(|&i| roles[i].1).collect(),
        );
        match orbifold_correlator_2d(&key, mode) {
            Ok(c) => {
                let coeff = c / mult_factorial(&mult);
                series.add_term(mult, Cyclotomic::from_rational(2 * n, coeff));
            }
            Err(Error::DegenerateRank) => skipped.push(SkipEntry {
                route: "stationary".into(),
                term: series.monomial_name(&mult),
                reason: "degenerate rank".into(),
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(Potential { series, skipped })
}

/// Pushes an orbifold-side series into `y` coordinates.
pub fn to_y_coordinates(x_series: &MultiSeries, n: u32, g: u32, d: u32) -> Result<MultiSeries> {
    let cov = ChangeOfVars2D::new(n)?;
    let (y, trunc) = y_space(n, g, d);
    let map = cov.x_to_y_map(x_series.registry(), &y);
    x_series.substitute_linear(y, trunc, &map)
}

/// `sum_c xi^{lc} B_N(c/n) / N` with `N >= 1`.
fn bernoulli_twist(n: u32, l: i64, big_n: usize) -> Cyclotomic {
    let ni = n as i64;
    let mut acc = Cyclotomic::zero(2 * n);
    for c in 0..ni {
        let b = bernoulli_poly(big_n, &Rational::new(c.into(), ni.into()));
        acc += &xi(n, l * c).scale(&b);
    }
    acc.scale(&Rational::new(1.into(), (big_n as i64).into()))
}

/// Bernoulli-kernel form: each `(b,l)` linear form is built from
/// [`kernel_direct`] and raised to the powers `m`.
pub fn potential_2d_via_kernel(n: u32, g: u32, d: u32) -> Result<Potential> {
    check_args(n, d)?;
    let (y, trunc) = y_space(n, g, d);
    let order = 2 * n;
    let mut series = MultiSeries::zero(y.clone(), order, trunc);
    let mut skipped = vec![];
    let ni = n as i64;
    let pref = crate::exact::pow_rational(&int(ni), 2 * g as i64 - 3)
        * if g % 2 == 1 { int(1) } else { int(-1) };
    for b in 0..n {
        for l in 1..n {
            let mut form = MultiSeries::zero(y.clone(), order, trunc);
            for j in 1..n {
                let kj = -kernel_direct(n, b, l, j)?;
                if kj.is_zero() {
                    continue;
                }
                for k in 0..=g {
                    let idx = y
                        .index_of(crate::series::VarRole::Y { a: j, k })
                        .expect("y registry");
                    let mut e = vec![0; y.len()];
                    e[idx] = 1;
                    series_term(&mut form, e, kj.scale(&(Rational::one() / psi_weight(k))));
                }
            }
            let mut power = MultiSeries::one(y.clone(), order, trunc);
            let mut m_fact = Rational::one();
            for m in 1..=d {
                power = power.mul(&form)?;
                m_fact *= int(m as i64);
                let big_n = 2 * g as i64 - 2 + m as i64;
                if big_n <= 0 {
                    if b == 0 && l == 1 {
                        skipped.push(SkipEntry {
                            route: "kernel".into(),
                            term: format!("m={m}"),
                            reason: format!("Bernoulli degree 2g-2+m = {big_n} <= 0"),
                        });
                    }
                    continue;
                }
                let tw = bernoulli_twist(n, l as i64, big_n as usize).scale(&(&pref / &m_fact));
                let part = power.filter(|e| weight_of(&y, e) == g).scale(&tw);
                series.accumulate(&part)?;
            }
        }
    }
    Ok(Potential { series, skipped })
}

fn series_term(s: &mut MultiSeries, e: Vec<u32>, c: Cyclotomic) {
    s.add_term(e, c);
}

fn weight_of(reg: &VarRegistry, e: &[u32]) -> u32 {
    e.iter().zip(reg.vars()).map(|(x, v)| x * v.weight).sum()
}

struct LiTable {
    n: u32,
    cache: HashMap<(usize, i64), Cyclotomic>,
}

impl LiTable {
    fn new(n: u32) -> Self {
        LiTable {
            n,
            cache: HashMap::new(),
        }
    }

    /// `Li_{s}(xi_n^len)` with `s = -(2g-3+m)`.
    fn get(&mut self, g: u32, m: u32, len: i64) -> Result<Cyclotomic> {
        let s = 2 * g as i64 - 3 + m as i64;
        if s < 0 {
            return Err(Error::LiOrderPositive(-s));
        }
        let n = self.n;
        if let Some(v) = self.cache.get(&(s as usize, len)) {
            return Ok(v.clone());
        }
        let v = polylog_neg(s as usize, &xi(n, len))?;
        self.cache.insert((s as usize, len), v.clone());
        Ok(v)
    }
}

fn genus_sign(g: u32) -> Rational {
    if g.is_multiple_of(2) {
        int(2)
    } else {
        int(-2)
    }
}

/// Polylogarithm closed form: windows `[s,t]`, `k`-profiles with
/// `sum k m_k = g`, multinomially expanded into `y{a}_{k}`.
pub fn closed_form_potential_2d(n: u32, g: u32, d: u32) -> Result<Potential> {
    check_args(n, d)?;
    let (y, trunc) = y_space(n, g, d);
    let order = 2 * n;
    let mut series = MultiSeries::zero(y.clone(), order, trunc);
    let mut skipped = vec![];
    let mut li = LiTable::new(n);
    let profiles: Vec<Vec<u32>> = multiplicity_vectors(g as usize + 1, d)
        .into_iter()
        .filter(|p| {
            p.iter()
                .enumerate()
                .map(|(k, &x)| k as u32 * x)
                .sum::<u32>()
                == g
        })
        .collect();
    for s in 1..n {
        for t in s..n {
            let window: Vec<MultiSeries> = (0..=g)
                .map(|k| {
                    let mut w = MultiSeries::zero(y.clone(), order, trunc);
                    for a in s..=t {
                        let idx = y
                            .index_of(crate::series::VarRole::Y { a, k })
                            .expect("y registry");
                        let mut e = vec![0; y.len()];
                        e[idx] = 1;
                        w.add_term(e, Cyclotomic::one(order));
                    }
                    w
                })
                .collect();
            for prof in &profiles {
                let m: u32 = prof.iter().sum();
                let polylog = match li.get(g, m, (t - s + 1) as i64) {
                    Ok(v) => v,
                    Err(e @ Error::LiOrderPositive(_)) => {
                        skipped.push(SkipEntry {
                            route: "closed".into(),
                            term: format!("window [{s},{t}] profile {prof:?}"),
                            reason: e.to_string(),
                        });
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let mut c = genus_sign(g) / mult_factorial(prof);
                let mut term = MultiSeries::one(y.clone(), order, trunc);
                for (k, &mk) in prof.iter().enumerate() {
                    if mk == 0 {
                        continue;
                    }
                    c /= psi_weight(k as u32).pow(mk as i32);
                    term = term.mul(&window[k].pow(mk)?)?;
                }
                series.accumulate(&term.scale(&polylog.scale(&c)))?;
            }
        }
    }
    Ok(Potential { series, skipped })
}

/// Resolution side: for each `y`-monomial, the sum over the windows
/// `[a,b]` containing its support of the regularized degree sum.
pub fn resolution_potential_2d(n: u32, g: u32, d: u32) -> Result<Potential> {
    check_args(n, d)?;
    let (y, trunc) = y_space(n, g, d);
    let order = 2 * n;
    let mut series = MultiSeries::zero(y.clone(), order, trunc);
    let mut skipped = vec![];
    let mut li = LiTable::new(n);
    let roles: Vec<(u32, u32)> = y
        .vars()
        .iter()
        .map(|v| match v.role {
            crate::series::VarRole::Y { a, k } => (a, k),
            _ => unreachable!("y registry"),
        })
        .collect();
    for mult in multiplicity_vectors(roles.len(), d) {
        let idx = expand(&mult);
        if idx.iter().map(|&i| roles[i].1).sum::<u32>() != g {
            continue;
        }
        let m = idx.len() as u32;
        let lo = idx.iter().map(|&i| roles[i].0).min().expect("nonempty");
        let hi = idx.iter().map(|&i| roles[i].0).max().expect("nonempty");
        let weight: Rational = idx
            .iter()
            .map(|&i| Rational::one() / psi_weight(roles[i].1))
            .product();
        let c = genus_sign(g) * weight / mult_factorial(&mult);
        let mut acc = Cyclotomic::zero(order);
        let mut gated = None;
        for a in 1..=lo {
            for b in hi..n {
                match li.get(g, m, (b - a + 1) as i64) {
                    Ok(v) => acc += &v,
                    Err(e @ Error::LiOrderPositive(_)) => gated = Some(e),
                    Err(e) => return Err(e),
                }
            }
        }
        if let Some(e) = gated {
            skipped.push(SkipEntry {
                route: "resolution".into(),
                term: series.monomial_name(&mult),
                reason: e.to_string(),
            });
            continue;
        }
        series.add_term(mult, acc.scale(&c));
    }
    Ok(Potential { series, skipped })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum RouteSelection {
    /// Stationary, kernel and resolution routes, each against the closed form.
    #[default]
    All,
    Kernel,
    /// Stationary route against the closed form.
    Closed,
    Resolution,
}

impl RouteSelection {
    fn routes(self) -> Vec<&'static str> {
        match self {
            RouteSelection::All => vec!["stationary", "kernel", "resolution"],
            RouteSelection::Kernel => vec!["kernel"],
            RouteSelection::Closed => vec!["stationary"],
            RouteSelection::Resolution => vec!["resolution"],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub route: String,
    pub monomial: String,
    pub lhs: Cyclotomic,
    pub rhs: Cyclotomic,
}

#[derive(Clone, Debug, Serialize)]
pub struct Crc2dReport {
    pub n: u32,
    pub g: u32,
    pub max_degree: u32,
    /// Each route is compared against the polylogarithm closed form.
    pub routes: Vec<String>,
    pub checked: usize,
    pub passed: usize,
    pub failed: Vec<Mismatch>,
    pub skipped_low_degree: usize,
    /// Per route, how many ungraded low-degree monomials differ.
    pub low_degree_differing: BTreeMap<String, usize>,
    pub change_of_variables_inverse: bool,
    pub matrix_identity: bool,
    pub skipped: Vec<SkipEntry>,
}

/// Outcome of a coefficientwise comparison.
#[derive(Clone, Debug, Default)]
pub struct Comparison {
    pub checked: usize,
    pub failed: Vec<Mismatch>,
    /// Monomials below degree 4, not graded.
    pub low_degree: usize,
    /// Of those, how many differ.
    pub low_degree_differing: usize,
}

/// Compares `lhs` against `rhs`, grading monomials of total degree `4..=d`.
pub fn compare_series(
    route: &str,
    lhs: &MultiSeries,
    rhs: &MultiSeries,
    d: u32,
) -> Result<Comparison> {
    if lhs.registry() != rhs.registry() {
        return Err(Error::RegistryMismatch);
    }
    let keys: BTreeSet<&Vec<u32>> = lhs.terms().keys().chain(rhs.terms().keys()).collect();
    let zero = Cyclotomic::zero(lhs.order());
    let mut out = Comparison::default();
    for e in keys {
        let deg = MultiSeries::total_degree(e);
        if deg > d {
            continue;
        }
        let a = lhs.terms().get(e).unwrap_or(&zero);
        let b = rhs.terms().get(e).unwrap_or(&zero);
        if deg < 4 {
            out.low_degree += 1;
            out.low_degree_differing += usize::from(a != b);
            continue;
        }
        out.checked += 1;
        if a != b {
            out.failed.push(Mismatch {
                route: route.into(),
                monomial: lhs.monomial_name(e),
                lhs: a.clone(),
                rhs: b.clone(),
            });
        }
    }
    Ok(out)
}

pub fn verify_crc2d(n: u32, g: u32, d: u32, routes: RouteSelection) -> Result<Crc2dReport> {
    if d < 4 {
        return Err(Error::PreconditionViolated(
            "max degree must be at least 4".into(),
        ));
    }
    let closed = closed_form_potential_2d(n, g, d)?;
    let mut skipped = closed.skipped.clone();
    let mut checked = 0;
    let mut failed = vec![];
    let mut low = 0;
    let mut low_differing = BTreeMap::new();
    for route in routes.routes() {
        let other = match route {
            "stationary" => {
                let p = stationary_potential_2d(n, g, d, BracketMode::BruteForce)?;
                Potential {
                    series: to_y_coordinates(&p.series, n, g, d)?,
                    skipped: p.skipped,
                }
            }
            "kernel" => potential_2d_via_kernel(n, g, d)?,
            _ => resolution_potential_2d(n, g, d)?,
        };
        skipped.extend(other.skipped);
        let c = compare_series(route, &other.series, &closed.series, d)?;
        checked += c.checked;
        failed.extend(c.failed);
        low = low.max(c.low_degree);
        low_differing.insert(route.to_string(), c.low_degree_differing);
    }
    skipped.sort();
    skipped.dedup();
    Ok(Crc2dReport {
        n,
        g,
        max_degree: d,
        routes: routes.routes().into_iter().map(String::from).collect(),
        checked,
        passed: checked - failed.len(),
        failed,
        skipped_low_degree: low,
        low_degree_differing: low_differing,
        change_of_variables_inverse: ChangeOfVars2D::new(n)?.is_inverse_pair(),
        matrix_identity: xy_matrix_identity(n),
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn y_coeff(p: &MultiSeries, name: &str, pow: u32) -> Cyclotomic {
        let mut e = vec![0; p.registry().len()];
        e[p.registry().index(name).unwrap()] = pow;
        p.coefficient(&e).unwrap()
    }

    #[test]
    fn change_of_variables() {
        for n in 2..=7 {
            assert!(ChangeOfVars2D::new(n).unwrap().is_inverse_pair(), "n={n}");
            assert!(xy_matrix_identity(n));
        }
        let c = ChangeOfVars2D::new(2).unwrap();
        assert_eq!(c.forward[0][0], -cyclo_root(4, 1));
        assert_eq!(c.inverse[0][0], cyclo_root(4, 1));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(
            kernel_direct(2, 0, 1, 1).unwrap(),
            Cyclotomic::from_int(4, -2)
        );
        assert_eq!(
            kernel_direct(3, 0, 1, 1).unwrap(),
            Cyclotomic::from_int(6, -3)
        );
        assert_eq!(
            kernel_direct(3, 0, 1, 2).unwrap(),
            Cyclotomic::from_int(6, 0)
        );
        assert_eq!(
            kernel_direct(3, 2, 2, 2).unwrap(),
            Cyclotomic::from_int(6, 3)
        );
        assert_eq!(
            kernel_window(5, 1, 2).unwrap(),
            WindowKernel {
                sigma: 1,
                s: 2,
                t: 3
            }
        );
        assert_eq!(
            kernel_window(5, 3, 3).unwrap(),
            WindowKernel {
                sigma: -1,
                s: 2,
                t: 3
            }
        );
        assert_eq!(
            kernel_window(2, 0, 1).unwrap(),
            WindowKernel {
                sigma: 1,
                s: 1,
                t: 1
            }
        );
        for n in 2..=6 {
            assert!(kernel_lemma_holds(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn n2_genus0_all_routes() {
        let want = Cyclotomic::from_rational(4, rat(-1, 48));
        let st = stationary_potential_2d(2, 0, 4, BracketMode::BruteForce).unwrap();
        assert_eq!(y_coeff(&st.series, "x1_0", 4), want);
        let y = to_y_coordinates(&st.series, 2, 0, 4).unwrap();
        assert_eq!(y_coeff(&y, "y1_0", 4), want);
        let cl = closed_form_potential_2d(2, 0, 4).unwrap();
        assert_eq!(y_coeff(&cl.series, "y1_0", 4), want);
        let ke = potential_2d_via_kernel(2, 0, 4).unwrap();
        assert_eq!(y_coeff(&ke.series, "y1_0", 4), want);
        let re = resolution_potential_2d(2, 0, 4).unwrap();
        assert_eq!(
            re.series.filter(|e| e.iter().sum::<u32>() >= 4),
            cl.series.filter(|e| e.iter().sum::<u32>() >= 4)
        );
    }

    #[test]
    fn n3_stationary_cube() {
        let st = stationary_potential_2d(3, 0, 3, BracketMode::BruteForce).unwrap();
        assert_eq!(
            y_coeff(&st.series, "x1_0", 3),
            Cyclotomic::from_rational(6, rat(1, 18))
        );
    }

    #[test]
    fn small_grid() {
        for (n, g, d) in [(2, 0, 6), (2, 1, 5), (3, 0, 5), (3, 1, 5), (2, 2, 5)] {
            let r = verify_crc2d(n, g, d, RouteSelection::All).unwrap();
            assert!(
                r.failed.is_empty(),
                "n={n} g={g}: {:?}",
                &r.failed[..r.failed.len().min(3)]
            );
            assert!(r.checked > 0);
        }
    }
}
