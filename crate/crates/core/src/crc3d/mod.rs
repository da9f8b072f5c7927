//! Potentials of `[C^2/Z_n] x C` and of its resolution, and their comparison.

pub mod partition;
pub mod qhalf;
pub mod vertex;

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::One;
use serde::Serialize;

pub use partition::{partitions_of, partitions_up_to, Partition};
pub use qhalf::QHalfSeries;
pub use vertex::{
    product_formula_log, skew_schur_principal, verify_vertex_product, vertex_partition_sum,
    vertex_w, Convention, VertexReport,
};

use crate::crc2d::SkipEntry;
use crate::error::{Error, Result};
use crate::exact::{cyclo_root, factorial, int, polylog_neg, pow_rational, Cyclotomic, Rational};
use crate::hodge::{k_coefficient, orbifold_correlator_3d};
use crate::multiset::{expand, multiplicity_vectors};
use crate::series::{MultiSeries, Truncation, VarRegistry, VarRole};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChangeOfVars3D {
    pub n: u32,
    /// `coeffs[j-1][k-1]`: coefficient of `u_k` in `v_j`, in `Q(xi_{2n})`.
    pub coeffs: Vec<Vec<Cyclotomic>>,
}

impl ChangeOfVars3D {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::PreconditionViolated("n must be at least 2".into()));
        }
        let ni = n as i64;
        let inv_n = Rational::new(1.into(), ni.into());
        let coeffs = (1..ni)
            .map(|j| {
                (1..ni)
                    .map(|k| {
                        let s = &cyclo_root(2 * n, k) - &cyclo_root(2 * n, -k);
                        (&s * &cyclo_root(2 * n, 2 * j * k)).scale(&inv_n)
                    })
                    .collect()
            })
            .collect();
        Ok(ChangeOfVars3D { n, coeffs })
    }

    /// `v_{s->t} = v_s + ... + v_t` as a series in the `u` variables.
    pub fn window(&self, reg: &Arc<VarRegistry>, trunc: Truncation, s: u32, t: u32) -> MultiSeries {
        let order = 2 * self.n;
        let mut out = MultiSeries::zero(reg.clone(), order, trunc);
        for j in s..=t {
            for k in 1..self.n {
                let idx = reg.index_of(VarRole::U { a: k }).expect("u registry");
                let mut e = vec![0; reg.len()];
                e[idx] = 1;
                out.add_term(e, self.coeffs[j as usize - 1][k as usize - 1].clone());
            }
        }
        out
    }
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

#[derive(Clone, Debug)]
pub struct Potential3D {
    pub series: MultiSeries,
    pub skipped: Vec<SkipEntry>,
}

/// `sum corr_g(a) / prod mult! * prod u_{a_i}` over admissible multisets.
pub fn orbifold_potential_3d(n: u32, g: u32, d: u32) -> Result<Potential3D> {
    check_args(n, d)?;
    let reg = VarRegistry::u_vars(n);
    let order = 2 * n;
    let mut series = MultiSeries::zero(reg.clone(), order, Truncation::total(d));
    let mut skipped = vec![];
    for mult in multiplicity_vectors(reg.len(), d) {
        let a: Vec<u32> = expand(&mult).into_iter().map(|i| i as u32 + 1).collect();
        if a.iter().sum::<u32>() % n != 0 || a.len() < 2 {
            continue;
        }
        match orbifold_correlator_3d(n, g, &a) {
            Ok(c) => {
                let denom: Rational = mult
                    .iter()
                    .map(|&x| Rational::from_integer(factorial(x as u64)))
                    .product();
                series.add_term(mult, Cyclotomic::from_rational(order, c / denom));
            }
            Err(e @ Error::DegenerateDegree(_)) => skipped.push(SkipEntry {
                route: format!("orbifold g={g}"),
                term: series.monomial_name(&mult),
                reason: e.to_string(),
            }),
            Err(e) => return Err(e),
        }
    }
    Ok(Potential3D { series, skipped })
}

/// `-k_g sum_{s<=t} sum_m Li_{-(2g-3+m)}(xi_n^{t-s+1}) v_{s->t}^m / m!`.
pub fn closed_form_potential_3d(n: u32, g: u32, d: u32) -> Result<Potential3D> {
    check_args(n, d)?;
    let reg = VarRegistry::u_vars(n);
    let order = 2 * n;
    let trunc = Truncation::total(d);
    let cov = ChangeOfVars3D::new(n)?;
    let kg = k_coefficient(g as usize);
    let mut series = MultiSeries::zero(reg.clone(), order, trunc);
    let mut skipped = vec![];
    for s in 1..n {
        for t in s..n {
            let v = cov.window(&reg, trunc, s, t);
            let mut power = MultiSeries::one(reg.clone(), order, trunc);
            let mut m_fact = Rational::one();
            for m in 1..=d {
                power = power.mul(&v)?;
                m_fact *= int(m as i64);
                let li_order = 2 * g as i64 - 3 + m as i64;
                if li_order < 0 {
                    skipped.push(SkipEntry {
                        route: format!("closed g={g}"),
                        term: format!("window [{s},{t}] m={m}"),
                        reason: Error::LiOrderPositive(-li_order).to_string(),
                    });
                    continue;
                }
                let z = cyclo_root(order, 2 * (t - s + 1) as i64);
                let li = polylog_neg(li_order as usize, &z)?;
                let c = li.scale(&(-&kg / &m_fact));
                series.accumulate(&power.scale(&c))?;
            }
        }
    }
    Ok(Potential3D { series, skipped })
}

/// Genus-`g` part of the resolution side:
/// `sum_{a<=b} sum_d k_g d^{2g-3} prod_{i=a}^b Q_i^d` up to total `Q`-degree `dq`.
pub fn resolution_potential_3d_closed(n: u32, g: u32, dq: u32) -> Result<MultiSeries> {
    if n < 2 {
        return Err(Error::PreconditionViolated("n must be at least 2".into()));
    }
    let reg = VarRegistry::q_vars(n);
    let kg = k_coefficient(g as usize);
    let mut out = MultiSeries::zero(reg.clone(), 1, Truncation::total(dq));
    for a in 1..n {
        for b in a..n {
            let len = b - a + 1;
            for deg in 1..=dq / len {
                let mut e = vec![0; reg.len()];
                for i in a..=b {
                    e[i as usize - 1] = deg;
                }
                let c = &kg * pow_rational(&int(deg as i64), 2 * g as i64 - 3);
                out.add_term(e, Cyclotomic::from_rational(1, c));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch3D {
    pub genus: u32,
    pub monomial: String,
    pub lhs: Cyclotomic,
    pub rhs: Cyclotomic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusSummary {
    pub genus: u32,
    pub checked: usize,
    pub passed: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Crc3dReport {
    pub n: u32,
    pub gmax: u32,
    pub max_degree: u32,
    pub checked: usize,
    pub passed: usize,
    pub failed: Vec<Mismatch3D>,
    pub skipped_low_degree: usize,
    /// Every graded coefficient on both sides reduced to a rational.
    pub all_rational: bool,
    pub per_genus: Vec<GenusSummary>,
    pub skipped: Vec<SkipEntry>,
}

pub fn verify_crc3d(n: u32, gmax: u32, d: u32) -> Result<Crc3dReport> {
    if d < 4 {
        return Err(Error::PreconditionViolated(
            "max degree must be at least 4".into(),
        ));
    }
    let mut report = Crc3dReport {
        n,
        gmax,
        max_degree: d,
        checked: 0,
        passed: 0,
        failed: vec![],
        skipped_low_degree: 0,
        all_rational: true,
        per_genus: vec![],
        skipped: vec![],
    };
    for g in 0..=gmax {
        let orb = orbifold_potential_3d(n, g, d)?;
        let closed = closed_form_potential_3d(n, g, d)?;
        report.skipped.extend(orb.skipped);
        report.skipped.extend(closed.skipped);
        let keys: BTreeSet<&Vec<u32>> = orb
            .series
            .terms()
            .keys()
            .chain(closed.series.terms().keys())
            .collect();
        let zero = Cyclotomic::zero(2 * n);
        let mut summary = GenusSummary {
            genus: g,
            checked: 0,
            passed: 0,
        };
        for e in keys {
            let l = orb.series.terms().get(e).unwrap_or(&zero);
            let r = closed.series.terms().get(e).unwrap_or(&zero);
            if MultiSeries::total_degree(e) < 4 {
                report.skipped_low_degree += 1;
                continue;
            }
            if l.to_rational().is_none() || r.to_rational().is_none() {
                report.all_rational = false;
            }
            summary.checked += 1;
            if l == r {
                summary.passed += 1;
            } else {
                report.failed.push(Mismatch3D {
                    genus: g,
                    monomial: orb.series.monomial_name(e),
                    lhs: l.clone(),
                    rhs: r.clone(),
                });
            }
        }
        report.checked += summary.checked;
        report.passed += summary.passed;
        report.per_genus.push(summary);
    }
    report.skipped.sort();
    Ok(report)
}
