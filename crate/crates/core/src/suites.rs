//! Verification sweeps over the bracket identities, the tau engine, the
//! polylogarithm bridge and the kernel lemma.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::crc2d::{kernel_lemma_holds, xy_matrix_identity, ChangeOfVars2D};
use crate::exact::{
    bernoulli_number, cyclo_root, factorial, fmt_rational, int, polylog_neg, polylog_via_bernoulli,
    rat, Rational,
};
use crate::hodge::{b_coefficient, k_coefficient};
use crate::tau::{self, dilaton_equation_holds, string_equation_holds};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Section {
    pub name: String,
    pub checked: usize,
    pub passed: usize,
    /// The first mismatches, at most 20.
    pub failed: Vec<Failure>,
}

impl Section {
    fn new(name: &str) -> Self {
        Section {
            name: name.into(),
            checked: 0,
            passed: 0,
            failed: vec![],
        }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> Failure) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        } else if self.failed.len() < 20 {
            self.failed.push(case());
        }
    }

    fn compare(&mut self, case: impl FnOnce() -> String, lhs: &Rational, rhs: &Rational) {
        self.record(lhs == rhs, || Failure {
            case: case(),
            lhs: fmt_rational(lhs),
            rhs: fmt_rational(rhs),
        });
    }

    pub fn ok(&self) -> bool {
        self.checked == self.passed
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub passed: usize,
    pub failed: Vec<Failure>,
    pub sections: Vec<Section>,
}

impl SuiteReport {
    fn from_sections(suite: &str, sections: Vec<Section>) -> Self {
        SuiteReport {
            suite: suite.into(),
            checked: sections.iter().map(|s| s.checked).sum(),
            passed: sections.iter().map(|s| s.passed).sum(),
            failed: sections
                .iter()
                .flat_map(|s| {
                    s.failed.iter().map(move |f| Failure {
                        case: format!("{}: {}", s.name, f.case),
                        ..f.clone()
                    })
                })
                .collect(),
            sections,
        }
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn ok(&self) -> bool {
        self.checked == self.passed
    }
}

/// Weakly increasing sequences of length `m` with entries in `0..=max` and sum `total`.
pub fn sorted_tuples(m: usize, total: u32) -> Vec<Vec<u32>> {
    fn rec(m: usize, left: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == m {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let slots = (m - cur.len()) as u32;
        for x in min..=left {
            if x * slots > left {
                break;
            }
            cur.push(x);
            rec(m, left - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(m, total, 0, &mut vec![], &mut out);
    out
}

fn split(ks: &[u32], mask: u32) -> (Vec<u32>, Vec<u32>) {
    let mut i = vec![];
    let mut j = vec![];
    for (t, &k) in ks.iter().enumerate() {
        if mask >> t & 1 == 1 {
            i.push(k);
        } else {
            j.push(k);
        }
    }
    (i, j)
}

/// Curly brackets: the defining sum against `1/(4^g prod (2k+1)!!)` for every
/// split, `g <= gmax`, `m <= mmax`, `sum k = g`.
pub fn curly_section(gmax: u32, mmax: usize) -> Section {
    let mut s = Section::new("curly_closed_form");
    for g in 0..=gmax {
        for m in 1..=mmax {
            for ks in sorted_tuples(m, g) {
                let closed = tau::curly_bracket_closed(g, &ks).expect("sum k = g");
                for mask in 0..(1u32 << m) {
                    let (i, j) = split(&ks, mask);
                    let brute = tau::curly_bracket_bruteforce(g, &i, &j);
                    s.compare(|| format!("g={g} I={i:?} J={j:?}"), &brute, &closed);
                }
            }
        }
    }
    s
}

/// Square brackets at `K = 2g-2` on keys meeting the dimension constraint.
fn square_leading_section(
    name: &str,
    gs: &[u32],
    mmax: usize,
    closed: fn(u32, &[u32], i64) -> crate::Result<Rational>,
) -> Section {
    let mut s = Section::new(name);
    for &g in gs {
        for m in 1..=mmax {
            let total = g as i64 - 2 + m as i64;
            if total < 0 {
                continue;
            }
            for ks in sorted_tuples(m, total as u32) {
                let big_k = 2 * g as i64 - 2;
                let brute = tau::square_bracket_bruteforce(g, &ks, big_k);
                match closed(g, &ks, big_k) {
                    Ok(v) => s.compare(|| format!("g={g} ks={ks:?} K={big_k}"), &brute, &v),
                    Err(e) => s.record(false, || Failure {
                        case: format!("g={g} ks={ks:?} K={big_k}"),
                        lhs: fmt_rational(&brute),
                        rhs: e.to_string(),
                    }),
                }
            }
        }
    }
    s
}

/// `[prod tau_k]^{2g-4+m-p}_{g-1}` with `m - p > 2` and `sum k = g + p` is zero by brute force.
pub fn square_vanishing_section(gs: &[u32], mmax: usize) -> Section {
    let mut s = Section::new("square_vanishing");
    for &g in gs {
        for m in 3..=mmax {
            for p in 0..=m - 3 {
                let big_k = 2 * g as i64 - 4 + m as i64 - p as i64;
                for ks in sorted_tuples(m, g + p as u32) {
                    let brute = tau::square_bracket_bruteforce(g, &ks, big_k);
                    s.compare(
                        || format!("g={g} ks={ks:?} p={p} K={big_k}"),
                        &brute,
                        &int(0),
                    );
                }
            }
        }
    }
    s
}

/// Brackets suite: curly closed form, the printed and the string-reduced
/// square closed forms, and the vanishing regime.
pub fn brackets_suite() -> SuiteReport {
    let gs = [2, 3];
    SuiteReport::from_sections(
        "brackets",
        vec![
            curly_section(3, 5),
            square_leading_section("square_closed_form", &gs, 5, tau::square_bracket_closed),
            square_leading_section(
                "square_string_reduced",
                &gs,
                5,
                tau::square_bracket_string_reduced,
            ),
            square_vanishing_section(&gs, 5),
        ],
    )
}

/// Random stable key `(g, rest)` such that `<tau_0 rest>_g` or `<tau_1 rest>_g`
/// meets the dimension constraint (`extra` is the added index).
fn random_key(rng: &mut ChaCha8Rng, extra: i64) -> (i64, Vec<i64>) {
    loop {
        let g = rng.random_range(0..=3i64);
        let m = rng.random_range(1..=6usize);
        if 2 * g - 2 + m as i64 <= 0 {
            continue;
        }
        // dimension of the key with the extra point, minus the extra index
        let total = 3 * g - 3 + m as i64 + 1 - extra;
        if total < 0 {
            continue;
        }
        let mut rest = vec![0i64; m];
        for _ in 0..total {
            let i = rng.random_range(0..m);
            rest[i] += 1;
        }
        rest.sort_unstable();
        return (g, rest);
    }
}

/// `b_g` from the Bernoulli numbers:
/// `(-1)^{g+1} (2^{2g} - 2) B_{2g} / ((2g)! 4^g)`.
pub fn b_from_bernoulli(g: usize) -> Rational {
    if g == 0 {
        return int(1);
    }
    let two = num_bigint::BigInt::from(2);
    let c = Rational::from_integer(num_traits::pow(two, 2 * g) - 2);
    let v = c * bernoulli_number(2 * g)
        / (Rational::from_integer(factorial(2 * g as u64)) * int(4).pow(g as i32));
    if g % 2 == 1 {
        v
    } else {
        -v
    }
}

pub fn tau_section(seed: u64, keys: usize) -> Vec<Section> {
    let mut known = Section::new("tau_known_values");
    for (g, idx, v) in [
        (0, vec![0, 0, 0], int(1)),
        (1, vec![1], rat(1, 24)),
        (2, vec![4], rat(1, 1152)),
    ] {
        known.compare(|| format!("<tau {idx:?}>_{g}"), &tau::tau(g, &idx), &v);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut string = Section::new("string_equation");
    let mut dilaton = Section::new("dilaton_equation");
    for _ in 0..keys {
        let (g, rest) = random_key(&mut rng, 0);
        string.record(string_equation_holds(g, &rest), || Failure {
            case: format!("g={g} rest={rest:?}"),
            lhs: "string".into(),
            rhs: "fails".into(),
        });
        let (g, rest) = random_key(&mut rng, 1);
        dilaton.record(dilaton_equation_holds(g, &rest), || Failure {
            case: format!("g={g} rest={rest:?}"),
            lhs: "dilaton".into(),
            rhs: "fails".into(),
        });
    }
    vec![known, string, dilaton]
}

/// `Li_{-k}(xi_N^l)` as a rational function against the Bernoulli form.
pub fn polylog_section(max_order: u32, max_k: usize) -> Section {
    let mut s = Section::new("polylog_bernoulli_bridge");
    for order in 2..=max_order {
        for l in 1..order as i64 {
            for k in 0..=max_k {
                let a = polylog_neg(k, &cyclo_root(order, l));
                let b = polylog_via_bernoulli(k, order, l);
                let ok = matches!((&a, &b), (Ok(x), Ok(y)) if x == y);
                s.record(ok, || Failure {
                    case: format!("N={order} l={l} k={k}"),
                    lhs: format!("{a:?}"),
                    rhs: format!("{b:?}"),
                });
            }
        }
    }
    s
}

pub fn kernel_section(max_n: u32) -> Vec<Section> {
    let mut lemma = Section::new("kernel_window_lemma");
    let mut matrix = Section::new("xy_matrix_identity");
    let mut inverse = Section::new("change_of_variables_inverse");
    for n in 2..=max_n {
        let ok = kernel_lemma_holds(n).unwrap_or(false);
        lemma.record(ok, || Failure {
            case: format!("n={n}"),
            lhs: "direct".into(),
            rhs: "window".into(),
        });
        let ok = ChangeOfVars2D::new(n).is_ok_and(|c| c.is_inverse_pair());
        inverse.record(ok, || Failure {
            case: format!("n={n}"),
            lhs: "forward*inverse".into(),
            rhs: "I".into(),
        });
    }
    for n in 2..=10 {
        matrix.record(xy_matrix_identity(n), || Failure {
            case: format!("n={n}"),
            lhs: "product".into(),
            rhs: "I".into(),
        });
    }
    vec![lemma, matrix, inverse]
}

pub fn series_section(gmax: usize) -> Section {
    let mut s = Section::new("b_k_series");
    s.compare(|| "b_1".into(), &b_coefficient(1), &rat(1, 24));
    s.compare(|| "k_2".into(), &k_coefficient(2), &rat(1, 240));
    for g in 0..=gmax {
        s.compare(
            || format!("b_{g} vs Bernoulli"),
            &b_coefficient(g),
            &b_from_bernoulli(g),
        );
        let square: Rational = (0..=g)
            .map(|i| b_from_bernoulli(i) * b_from_bernoulli(g - i))
            .sum();
        s.compare(|| format!("k_{g} vs b*b"), &k_coefficient(g), &square);
    }
    s
}

/// Tau engine, polylogarithm bridge, kernel lemma, change of variables and
/// the `b`/`k` series.
pub fn identities_suite(seed: u64) -> SuiteReport {
    let mut sections = tau_section(seed, 200);
    sections.push(polylog_section(12, 10));
    sections.extend(kernel_section(8));
    sections.push(series_section(6));
    SuiteReport::from_sections("identities", sections)
}

/// Mumford-relation consequences for every rank pair with `1 <= r1 + r1bar <= max_sum`.
pub fn chern_suite(max_sum: usize) -> SuiteReport {
    let mut sections = vec![];
    for total in 1..=max_sum {
        for r1 in 0..=total {
            let report = crate::chern::verify_mumford_consequences(r1, total - r1);
            let mut s = Section::new(&format!("r1={r1} r1bar={}", total - r1));
            for c in &report.checks {
                s.record(c.passed, || Failure {
                    case: c.name.clone(),
                    lhs: c.witness.clone().unwrap_or_default(),
                    rhs: "0".into(),
                });
            }
            sections.push(s);
        }
    }
    SuiteReport::from_sections("chern", sections)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples() {
        assert_eq!(sorted_tuples(2, 2), vec![vec![0, 2], vec![1, 1]]);
        assert_eq!(sorted_tuples(3, 0), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn small_sweeps() {
        assert!(curly_section(2, 3).ok());
        assert!(square_vanishing_section(&[2], 4).ok());
        assert!(polylog_section(5, 3).ok());
        assert!(series_section(3).ok());
        for s in tau_section(7, 20) {
            assert!(s.ok(), "{}", s.name);
        }
    }
}
