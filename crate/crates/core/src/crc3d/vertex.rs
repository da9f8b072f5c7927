//! Two-leg vertex amplitudes at `q^{-rho}` and the partition sum for the
//! resolution of `C^2/Z_n x C`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;

use super::partition::{partitions_up_to, Partition};
use super::qhalf::QHalfSeries;
use crate::exact::{int, Rational};

/// How the first skew Schur factor of `W_{mu nu}` is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// `s_{mu/eta}`.
    Direct,
    /// `(-1)^{|mu|-|eta|} s_{mu/eta}`.
    Signed,
    /// `s_{mu'/eta'}`.
    Dual,
    /// `(-1)^{|mu|-|eta|} s_{mu'/eta'}`.
    SignedDual,
}

impl Convention {
    pub const ALL: [Convention; 4] = [
        Convention::Direct,
        Convention::Signed,
        Convention::Dual,
        Convention::SignedDual,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Convention::Direct => "direct",
            Convention::Signed => "signed",
            Convention::Dual => "dual",
            Convention::SignedDual => "signed_dual",
        }
    }
}

/// `h_k(q^{-rho}) = x^k / prod_{j<=k} (1 - x^{2j})` with `x = q^{1/2}`.
fn h_principal(k: i64, prec: i64) -> QHalfSeries {
    if k < 0 {
        return QHalfSeries::zero(super::qhalf::EXACT);
    }
    let mut s = QHalfSeries::monomial(Rational::one(), k);
    for j in 1..=k {
        s = s.mul(&QHalfSeries::geometric(2 * j, prec));
    }
    s.truncate(prec)
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, bool)>) {
        let n = used.len();
        if cur.len() == n {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    inv += usize::from(cur[i] > cur[j]);
                }
            }
            out.push((cur.clone(), inv % 2 == 0));
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = vec![];
    rec(&mut vec![], &mut vec![false; n], &mut out);
    out
}

/// `s_{mu/eta}(q^{-rho})` by the Jacobi-Trudi determinant, known below `x^prec`.
pub fn skew_schur_principal(mu: &Partition, eta: &Partition, prec: i64) -> QHalfSeries {
    if !mu.contains(eta) {
        return QHalfSeries::zero(super::qhalf::EXACT);
    }
    let l = mu.len();
    if l == 0 {
        return QHalfSeries::one();
    }
    let mut h: BTreeMap<i64, QHalfSeries> = BTreeMap::new();
    let mut entry = |i: usize, j: usize| {
        let k = mu.part(i) as i64 - eta.part(j) as i64 - i as i64 + j as i64;
        h.entry(k).or_insert_with(|| h_principal(k, prec)).clone()
    };
    let mut det = QHalfSeries::zero(super::qhalf::EXACT);
    for (perm, even) in permutations(l) {
        let mut term = QHalfSeries::one();
        for (i, &j) in perm.iter().enumerate() {
            term = term.mul(&entry(i, j));
            if term.is_zero() && term.precision() >= prec {
                break;
            }
        }
        det = if even { det.add(&term) } else { det.sub(&term) };
    }
    det
}

fn sign(e: u32) -> Rational {
    if e.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

/// `W_{mu nu} = (-1)^{|mu|+|nu|} q^{(kappa_mu+kappa_nu)/2} sum_eta s_{mu/eta} s_{nu/eta}`,
/// with the first factor taken per `conv`.
pub fn vertex_w(mu: &Partition, nu: &Partition, prec: i64, conv: Convention) -> QHalfSeries {
    let shift = mu.kappa() + nu.kappa();
    // the shift lowers the known precision, so work higher
    let work = prec - shift.min(0);
    let mut acc = QHalfSeries::zero(super::qhalf::EXACT);
    for eta in partitions_up_to(mu.size().min(nu.size())) {
        if !mu.contains(&eta) || !nu.contains(&eta) {
            continue;
        }
        let first = match conv {
            Convention::Direct | Convention::Signed => skew_schur_principal(mu, &eta, work),
            Convention::Dual | Convention::SignedDual => {
                skew_schur_principal(&mu.conjugate(), &eta.conjugate(), work)
            }
        };
        let first = match conv {
            Convention::Signed | Convention::SignedDual => {
                first.scale(&sign(mu.size() - eta.size()))
            }
            _ => first,
        };
        acc = acc.add(&first.mul(&skew_schur_principal(nu, &eta, work)));
    }
    acc.scale(&sign(mu.size() + nu.size())).shift(shift)
}

/// A polynomial in `Q_1..Q_{n-1}` with `q^{1/2}`-series coefficients.
pub type QPoly = BTreeMap<Vec<u32>, QHalfSeries>;

fn qpoly_mul(a: &QPoly, b: &QPoly, max_deg: u32) -> QPoly {
    let mut out = QPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            if e.iter().sum::<u32>() > max_deg {
                continue;
            }
            let p = ca.mul(cb);
            match out.get_mut(&e) {
                Some(slot) => *slot = slot.add(&p),
                None => {
                    out.insert(e, p);
                }
            }
        }
    }
    out
}

/// Tuples `(mu^1, ..., mu^{n-1})` with total size at most `max_deg`.
fn partition_tuples(n: u32, max_deg: u32) -> Vec<Vec<Partition>> {
    let all = partitions_up_to(max_deg);
    let mut out: Vec<Vec<Partition>> = vec![vec![]];
    for _ in 1..n {
        let mut next = vec![];
        for t in &out {
            let used: u32 = t.iter().map(Partition::size).sum();
            for p in all.iter().filter(|p| used + p.size() <= max_deg) {
                let mut t2 = t.clone();
                t2.push(p.clone());
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// `sum_{mu^1..mu^{n-1}} prod_i W_{mu^{i-1} mu^i} prod_i q^{-kappa(mu^i)} Q_i^{|mu^i|}`
/// with `mu^0 = mu^n` empty, computed with working precision `prec`.
pub fn vertex_partition_function(n: u32, max_deg: u32, prec: i64, conv: Convention) -> QPoly {
    let mut cache: BTreeMap<(Partition, Partition), QHalfSeries> = BTreeMap::new();
    let mut z = QPoly::new();
    for tuple in partition_tuples(n, max_deg) {
        let mut chain = vec![Partition::empty()];
        chain.extend(tuple.iter().cloned());
        chain.push(Partition::empty());
        let mut term = QHalfSeries::one();
        for w in chain.windows(2) {
            let key = (w[0].clone(), w[1].clone());
            let f = cache
                .entry(key)
                .or_insert_with(|| vertex_w(&w[0], &w[1], prec, conv))
                .clone();
            term = term.mul(&f);
        }
        let framing: i64 = tuple.iter().map(Partition::kappa).sum();
        term = term.shift(-2 * framing);
        let e: Vec<u32> = tuple.iter().map(Partition::size).collect();
        match z.get_mut(&e) {
            Some(slot) => *slot = slot.add(&term),
            None => {
                z.insert(e, term);
            }
        }
    }
    z
}

/// `log` of a `QPoly` whose constant term is exactly 1.
pub fn qpoly_log(z: &QPoly, max_deg: u32) -> QPoly {
    let mut x = z.clone();
    let zero_key = vec![0; z.keys().next().map_or(0, Vec::len)];
    if let Some(c) = x.remove(&zero_key) {
        let terms: Vec<(i64, Rational)> = c.terms().map(|(e, r)| (e, r.clone())).collect();
        assert_eq!(terms, vec![(0, Rational::one())], "constant term must be 1");
    }
    let mut out = QPoly::new();
    let mut power = x.clone();
    for j in 1..=max_deg {
        let c = if j % 2 == 1 {
            Rational::one()
        } else {
            -Rational::one()
        } / int(j as i64);
        for (e, s) in &power {
            let t = s.scale(&c);
            match out.get_mut(e) {
                Some(slot) => *slot = slot.add(&t),
                None => {
                    out.insert(e.clone(), t);
                }
            }
        }
        power = qpoly_mul(&power, &x, max_deg);
    }
    out
}

/// `log` of the partition sum under `conv`.
pub fn vertex_partition_sum(n: u32, max_deg: u32, prec: i64, conv: Convention) -> QPoly {
    qpoly_log(&vertex_partition_function(n, max_deg, prec, conv), max_deg)
}

/// `-sum_{a<=b} sum_d (prod_{k=a}^b Q_k^d)/d * q^d/(1-q^d)^2`, exact below `x^prec`.
pub fn product_formula_log(n: u32, max_deg: u32, prec: i64) -> QPoly {
    let mut out = QPoly::new();
    for a in 1..n {
        for b in a..n {
            let len = b - a + 1;
            for d in 1..=max_deg / len {
                let mut e = vec![0; n as usize - 1];
                for k in a..=b {
                    e[k as usize - 1] = d;
                }
                let terms = (1..)
                    .map(|m: i64| (2 * m * d as i64, m))
                    .take_while(|(x, _)| *x < prec)
                    .map(|(x, m)| (x, -int(m) / int(d as i64)));
                out.insert(e, QHalfSeries::from_terms(terms, prec));
            }
        }
    }
    out
}

/// Whether `e` is `prod_{k=a}^b Q_k^d` for some window and `d >= 1`.
pub fn is_window_monomial(e: &[u32]) -> bool {
    let support: Vec<usize> = (0..e.len()).filter(|&i| e[i] > 0).collect();
    match (support.first(), support.last()) {
        (Some(&lo), Some(&hi)) => {
            hi - lo + 1 == support.len() && support.iter().all(|&i| e[i] == e[lo])
        }
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexMismatch {
    pub monomial: String,
    pub exponent: i64,
    pub lhs: Option<String>,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConventionOutcome {
    pub convention: Convention,
    pub matches: bool,
    pub window_property: bool,
    pub mismatches: usize,
    /// The first few mismatching coefficients.
    pub examples: Vec<VertexMismatch>,
    pub working_precision: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexReport {
    pub n: u32,
    pub q_degree: u32,
    pub q_order: u32,
    /// Coefficients compared, per monomial and power of `q^{1/2}`.
    pub checked: usize,
    pub passed: usize,
    pub failed: Vec<VertexMismatch>,
    /// The unique convention reproducing the product formula, if any.
    pub gluing_convention: Option<Convention>,
    pub window_property: bool,
    pub conventions: Vec<ConventionOutcome>,
}

fn monomial_name(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(i, &x)| {
            if x == 1 {
                format!("Q{}", i + 1)
            } else {
                format!("Q{}^{}", i + 1, x)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Compares the log of the vertex sum with the product formula through
/// `q^{q_order}` under one convention. Returns `None` when the working
/// precision was too low to decide some coefficient.
fn compare_convention(
    n: u32,
    max_deg: u32,
    q_order: u32,
    work: i64,
    conv: Convention,
) -> Option<(ConventionOutcome, usize)> {
    let top = 2 * q_order as i64;
    let lhs = vertex_partition_sum(n, max_deg, work, conv);
    let rhs = product_formula_log(n, max_deg, top + 1);
    let keys: BTreeSet<&Vec<u32>> = lhs.keys().chain(rhs.keys()).collect();
    let exact_zero = QHalfSeries::zero(super::qhalf::EXACT);
    let mut mismatches = 0;
    let mut examples = vec![];
    let mut window = true;
    let mut checked = 0;
    for e in keys {
        let l = lhs.get(e).unwrap_or(&exact_zero);
        let r = rhs.get(e).unwrap_or(&exact_zero);
        let low = l.valuation().min(r.valuation()).min(0);
        for x in low..=top {
            checked += 1;
            let lc = l.coeff(x)?;
            let rc = r.coeff(x).expect("product side is known through top");
            if !lc.is_zero() && !is_window_monomial(e) {
                window = false;
            }
            if lc != rc {
                mismatches += 1;
                if examples.len() < 5 {
                    examples.push(VertexMismatch {
                        monomial: monomial_name(e),
                        exponent: x,
                        lhs: Some(crate::exact::fmt_rational(&lc)),
                        rhs: crate::exact::fmt_rational(&rc),
                    });
                }
            }
        }
    }
    let outcome = ConventionOutcome {
        convention: conv,
        matches: mismatches == 0,
        window_property: window,
        mismatches,
        examples,
        working_precision: work,
    };
    Some((outcome, checked))
}

/// Checks the vertex sum against the product formula under every convention.
/// `q_order` counts powers of `q`, so exponents of `x = q^{1/2}` run to `2 q_order`.
pub fn verify_vertex_product(n: u32, max_deg: u32, q_order: u32) -> VertexReport {
    let mut conventions = vec![];
    let mut checked = 0;
    for conv in Convention::ALL {
        let mut work = 2 * q_order as i64 + 1;
        loop {
            if let Some((o, c)) = compare_convention(n, max_deg, q_order, work, conv) {
                conventions.push(o);
                checked = checked.max(c);
                break;
            }
            work += 8;
        }
    }
    let matching: Vec<&ConventionOutcome> = conventions.iter().filter(|o| o.matches).collect();
    let gluing_convention = (matching.len() == 1).then(|| matching[0].convention);
    let window_property = matching.len() == 1 && matching[0].window_property;
    let failed = match gluing_convention {
        Some(_) => vec![],
        None => vec![VertexMismatch {
            monomial: "*".into(),
            exponent: 0,
            lhs: None,
            rhs: format!("{} conventions match, expected exactly one", matching.len()),
        }],
    };
    let failed = if gluing_convention.is_some() && !window_property {
        vec![VertexMismatch {
            monomial: "*".into(),
            exponent: 0,
            lhs: None,
            rhs: "log contains a non-window monomial".into(),
        }]
    } else {
        failed
    };
    VertexReport {
        n,
        q_degree: max_deg,
        q_order,
        checked,
        passed: if failed.is_empty() { checked } else { 0 },
        failed,
        gluing_convention,
        window_property,
        conventions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn schur_examples() {
        let s1 = skew_schur_principal(&p(&[1]), &p(&[]), 12);
        assert_eq!(
            s1,
            QHalfSeries::from_terms((0..6).map(|i| (2 * i + 1, int(1))), 12)
        );
        let one = skew_schur_principal(&p(&[2, 1]), &p(&[2, 1]), 12);
        assert_eq!(one.terms().collect::<Vec<_>>(), vec![(0, &int(1))]);
        let s2 = skew_schur_principal(&p(&[2]), &p(&[]), 20);
        assert_eq!(s2.coeff(2), Some(int(1)));
        assert_eq!(s2.coeff(6), Some(int(2)));
    }

    #[test]
    fn w_examples() {
        assert_eq!(
            vertex_w(&p(&[]), &p(&[]), 10, Convention::Direct),
            QHalfSeries::one()
        );
        let w = vertex_w(&p(&[]), &p(&[1]), 10, Convention::Direct);
        assert_eq!(w.coeff(1), Some(int(-1)));
        assert_eq!(w.coeff(3), Some(int(-1)));
    }

    #[test]
    fn n2_degree1() {
        let z = vertex_partition_sum(2, 1, 12, Convention::Direct);
        let c = &z[&vec![1]];
        // q/(1-q)^2
        assert_eq!(c.coeff(2), Some(int(1)));
        assert_eq!(c.coeff(4), Some(int(2)));
        assert!(is_window_monomial(&[0, 2, 2]));
        assert!(!is_window_monomial(&[1, 0, 1]));
        assert!(!is_window_monomial(&[1, 2]));
    }
}
