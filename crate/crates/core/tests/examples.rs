//! Worked examples, one assertion per documented value.

use crepant_core::chern::{build_ring, ch_from_chern, verify_mumford_consequences};
use crepant_core::crc2d::{
    closed_form_potential_2d, kernel_direct, kernel_window, stationary_potential_2d,
    ChangeOfVars2D, WindowKernel,
};
use crepant_core::crc3d::{
    orbifold_potential_3d, product_formula_log, resolution_potential_3d_closed,
    vertex_partition_sum, vertex_w, Convention, Partition, QHalfSeries,
};
use crepant_core::exact::{
    bernoulli_number, bernoulli_poly, cyclo_root, int, polylog_neg, polylog_via_bernoulli, rat,
    Cyclotomic, Rational,
};
use crepant_core::hodge::{
    hh_ch_integral_2d, lambda_ch_integral_3d, orbifold_correlator_2d, orbifold_correlator_3d,
    ranks, BracketMode, OrbKey,
};
use crepant_core::series::{MultiSeries, Truncation, VarRegistry};
use crepant_core::tau::{
    curly_bracket_bruteforce, curly_bracket_closed, square_bracket_bruteforce,
    square_bracket_closed, square_bracket_string_reduced, tau,
};
use crepant_core::Error;

fn q(order: u32, r: Rational) -> Cyclotomic {
    Cyclotomic::from_rational(order, r)
}

#[test]
fn bernoulli_values() {
    assert_eq!(bernoulli_number(0), int(1));
    assert_eq!(bernoulli_number(1), rat(-1, 2));
    assert_eq!(bernoulli_number(12), rat(-691, 2730));
    assert_eq!(bernoulli_poly(1, &rat(1, 2)), int(0));
    assert_eq!(bernoulli_poly(2, &rat(1, 2)), rat(-1, 12));
    assert_eq!(
        bernoulli_poly(3, &rat(2, 3)),
        -bernoulli_poly(3, &rat(1, 3))
    );
}

#[test]
fn roots_of_unity() {
    assert_eq!(cyclo_root(6, 3), q(6, int(-1)));
    let sum = (1..5).fold(Cyclotomic::zero(5), |acc, a| &acc + &cyclo_root(5, a));
    assert_eq!(sum, q(5, int(-1)));
    assert_eq!(cyclo_root(2, 1), q(2, int(-1)));
}

#[test]
fn polylog_values() {
    let z3 = cyclo_root(3, 1);
    let one = Cyclotomic::one(3);
    let want = &z3 * &(&one - &z3).inv().unwrap();
    assert_eq!(polylog_neg(0, &z3).unwrap(), want);
    assert_eq!(polylog_via_bernoulli(0, 3, 1).unwrap(), want);
    let z3sq = &z3 * &z3;
    let want2 = &(&z3 * &(&one + &z3)) * &(&one - &z3).pow(-3).unwrap();
    assert_eq!(polylog_neg(2, &z3).unwrap(), want2);
    assert_eq!(polylog_via_bernoulli(1, 2, 1).unwrap(), q(2, rat(-1, 4)));
    assert!(matches!(
        polylog_neg(1, &Cyclotomic::one(3)),
        Err(Error::DegeneratePole)
    ));
    assert_ne!(z3sq, z3);
}

#[test]
fn tau_values() {
    assert_eq!(tau(0, &[0, 0, 0]), int(1));
    assert_eq!(tau(1, &[1]), rat(1, 24));
    assert_eq!(tau(2, &[4]), rat(1, 1152));
    assert_eq!(tau(0, &[-2]), int(1));
    assert_eq!(tau(0, &[3, -4]), int(-1));
    assert_eq!(tau(1, &[0]), int(0));
}

#[test]
fn bracket_values() {
    assert_eq!(curly_bracket_bruteforce(0, &[0, 0], &[]), int(1));
    assert_eq!(curly_bracket_bruteforce(1, &[1], &[0]), rat(1, 12));
    assert_eq!(curly_bracket_bruteforce(1, &[0], &[1]), rat(1, 12));
    assert_eq!(curly_bracket_closed(0, &[0, 0]).unwrap(), int(1));
    assert_eq!(curly_bracket_closed(1, &[1, 0]).unwrap(), rat(1, 12));
    assert_eq!(curly_bracket_closed(2, &[1, 1, 0]).unwrap(), rat(1, 144));
    assert_eq!(curly_bracket_bruteforce(2, &[1, 1, 0], &[]), rat(1, 144));

    assert_eq!(square_bracket_bruteforce(2, &[1, 1], 2), rat(1, 4));
    assert_eq!(square_bracket_bruteforce(1, &[0], 0), int(1));
    assert_eq!(square_bracket_bruteforce(2, &[1], -1), int(0));
    assert_eq!(square_bracket_closed(2, &[1, 1], 2).unwrap(), rat(1, 4));
    // sum k = 2 misses the dimension g - 2 + m = 3, so the bracket is empty
    assert_eq!(square_bracket_bruteforce(2, &[0, 0, 2], 2), int(0));
    assert_eq!(
        square_bracket_string_reduced(2, &[0, 0, 2], 2).unwrap(),
        int(0)
    );
    assert!(square_bracket_closed(2, &[0, 0, 2], 2).is_err());
    assert_eq!(
        square_bracket_string_reduced(2, &[0, 1, 2], 2).unwrap(),
        square_bracket_bruteforce(2, &[0, 1, 2], 2)
    );
    // m - p = 3 > 2 with K = 2g - 4 + m - p
    assert_eq!(square_bracket_bruteforce(2, &[0, 1, 1], 3), int(0));
}

#[test]
fn chern_ring_values() {
    let r11 = build_ring(1, 1, 4);
    assert_eq!(r11.c_prime(1), r11.c(1));
    assert!(r11.in_ideal(&r11.c(1).mul(&r11.c(1))));
    assert!(!r11.in_ideal(&r11.c(1)));

    let r12 = build_ring(1, 2, 4);
    let c1 = r12.c(1);
    assert_eq!(r12.c_prime(2), c1.mul(&c1));
    // sum_j c'_j (-u)^j = (1 + c_1 u)^{-1}
    assert_eq!(r12.c_prime(3), c1.mul(&c1).mul(&c1));
    assert!(r12.in_ideal(&c1.mul(&c1).mul(&c1)));

    let r2 = build_ring(2, 0, 4);
    assert_eq!(ch_from_chern(&r2, 0), r2.constant(int(2)));
    assert_eq!(ch_from_chern(&r2, 1), r2.c(1));
    let ch2 = r2
        .c(1)
        .mul(&r2.c(1))
        .sub(&r2.c(2).scale(&int(2)))
        .scale(&rat(1, 2));
    assert_eq!(ch_from_chern(&r2, 2), ch2);

    let trivial = build_ring(0, 0, 1);
    assert!(trivial.c_prime(1).is_zero());

    for (r1, r1bar) in [(1, 1), (1, 2), (3, 3)] {
        let rep = verify_mumford_consequences(r1, r1bar);
        let failed: Vec<_> = rep.failures().map(|c| c.name.clone()).collect();
        assert!(failed.is_empty(), "({r1},{r1bar}): {failed:?}");
    }
}

#[test]
fn rank_values() {
    let r = ranks(2, 0, &[1, 1, 1, 1]).unwrap();
    assert_eq!((r.r1, r.r1bar, r.p), (1, 1, 0));
    let r = ranks(3, 0, &[1, 1, 1]).unwrap();
    assert_eq!((r.r1, r.r1bar, r.p), (0, 1, 0));
    assert!(matches!(
        ranks(2, 0, &[1, 1, 1]),
        Err(Error::MonodromyViolation { .. })
    ));
}

#[test]
fn correlator_2d_values() {
    let bf = BracketMode::BruteForce;
    let k4 = OrbKey::new(2, 0, vec![1, 1, 1, 1], vec![0; 4]);
    assert_eq!(hh_ch_integral_2d(&k4, bf).unwrap(), rat(-1, 4));
    assert_eq!(orbifold_correlator_2d(&k4, bf).unwrap(), rat(-1, 2));
    let k3 = OrbKey::new(3, 0, vec![1, 1, 1], vec![0; 3]);
    assert_eq!(hh_ch_integral_2d(&k3, bf).unwrap(), rat(-1, 6));
    assert_eq!(orbifold_correlator_2d(&k3, bf).unwrap(), rat(1, 3));
    let degenerate = OrbKey::new(2, 0, vec![1, 1], vec![0, 0]);
    assert!(matches!(
        orbifold_correlator_2d(&degenerate, bf),
        Err(Error::DegenerateRank)
    ));
    let g1 = OrbKey::new(2, 1, vec![1, 1], vec![1, 0]);
    assert_eq!(
        hh_ch_integral_2d(&g1, bf).unwrap(),
        hh_ch_integral_2d(&g1, BracketMode::Closed).unwrap()
    );
}

#[test]
fn correlator_3d_values() {
    assert_eq!(
        lambda_ch_integral_3d(2, 0, &[1, 1, 1, 1]).unwrap(),
        rat(-1, 4)
    );
    assert_eq!(
        orbifold_correlator_3d(2, 0, &[1, 1, 1, 1]).unwrap(),
        rat(1, 4)
    );
    assert!(matches!(
        orbifold_correlator_3d(3, 0, &[1, 2]),
        Err(Error::DegenerateDegree(-1))
    ));
    assert!(matches!(
        orbifold_correlator_3d(3, 0, &[1, 1]),
        Err(Error::MonodromyViolation { .. })
    ));
}

#[test]
fn series_values() {
    let reg = VarRegistry::u_vars(3);
    let t = Truncation::total(2);
    let x = MultiSeries::var(reg.clone(), 1, t, 0);
    let y = MultiSeries::var(reg.clone(), 1, t, 1);
    let one = MultiSeries::one(reg.clone(), 1, t);
    let prod = one.add(&x).unwrap().mul(&one.sub(&x).unwrap()).unwrap();
    assert_eq!(prod, one.sub(&x.mul(&x).unwrap()).unwrap());
    let tight = Truncation::total(1);
    let xs = MultiSeries::var(reg.clone(), 1, tight, 0);
    let ys = MultiSeries::var(reg.clone(), 1, tight, 1);
    assert!(xs.mul(&ys).unwrap().is_empty());

    let t5 = Truncation::total(5);
    let x5 = MultiSeries::var(reg.clone(), 1, t5, 0);
    assert_eq!(
        x5.exp().unwrap().coefficient(&[3, 0]).unwrap(),
        q(1, rat(1, 6))
    );
    assert_eq!(x5.exp().unwrap().log().unwrap(), x5);
    assert!(MultiSeries::zero(reg.clone(), 1, t5)
        .exp()
        .unwrap()
        .constant_term()
        .is_one());
    assert!(matches!(
        x5.coefficient(&[6, 0]),
        Err(Error::OutOfTruncation)
    ));
    let two_x = one.add(&x.scale_rational(&int(2))).unwrap();
    assert_eq!(two_x.coefficient(&[1, 0]).unwrap(), q(1, int(2)));
    assert!(y.coefficient(&[1, 0]).unwrap().is_zero());
}

#[test]
fn change_of_variables_values() {
    let c = ChangeOfVars2D::new(2).unwrap();
    assert_eq!(c.forward[0][0], -cyclo_root(4, 1));
    assert_eq!(c.inverse[0][0], cyclo_root(4, 1));
    for n in 2..=6 {
        assert!(ChangeOfVars2D::new(n).unwrap().is_inverse_pair());
    }
}

#[test]
fn kernel_values() {
    let k = |n, b, l, j| kernel_direct(n, b, l, j).unwrap();
    assert_eq!(k(2, 0, 1, 1), q(4, int(-2)));
    assert_eq!(k(3, 0, 1, 1), q(6, int(-3)));
    assert_eq!(k(3, 0, 1, 2), q(6, int(0)));
    assert_eq!(k(3, 2, 2, 2), q(6, int(3)));
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
}

#[test]
fn potential_2d_values() {
    let s = stationary_potential_2d(2, 0, 4, BracketMode::BruteForce)
        .unwrap()
        .series;
    assert_eq!(s.coefficient(&[4]).unwrap(), q(4, rat(-1, 48)));
    assert!(s.coefficient(&[3]).unwrap().is_zero());
    let s3 = stationary_potential_2d(3, 0, 3, BracketMode::BruteForce)
        .unwrap()
        .series;
    let x10 = s3.registry().index("x1_0").unwrap();
    let mut e = vec![0; s3.registry().len()];
    e[x10] = 3;
    assert_eq!(s3.coefficient(&e).unwrap(), q(6, rat(1, 18)));

    // 2 Li_{-1}(-1) / 4!, equal to the orbifold side since y_{1,0}^4 = (x_{1,0} u_1)^4
    let c = closed_form_potential_2d(2, 0, 4).unwrap().series;
    assert_eq!(c.coefficient(&[4]).unwrap(), q(4, rat(-1, 48)));

    // y_{1,1} y_{1,0}^3 at g=1: -2 Li_{-3}(-1) / (3! * 4 * 3!!)
    let c1 = closed_form_potential_2d(2, 1, 4).unwrap().series;
    let reg = c1.registry();
    let mut e = vec![0; reg.len()];
    e[reg.index("y1_0").unwrap()] = 3;
    e[reg.index("y1_1").unwrap()] = 1;
    let li = polylog_neg(3, &cyclo_root(4, 2)).unwrap();
    assert_eq!(li, q(4, rat(1, 8)));
    assert_eq!(c1.coefficient(&e).unwrap(), q(4, rat(-1, 288)));
}

#[test]
fn potential_3d_values() {
    let o = orbifold_potential_3d(2, 0, 4).unwrap().series;
    assert_eq!(o.coefficient(&[4]).unwrap(), q(4, rat(1, 96)));
    assert!(o.coefficient(&[3]).unwrap().is_zero());
    let r = resolution_potential_3d_closed(3, 1, 4).unwrap();
    assert_eq!(r.coefficient(&[2, 2]).unwrap(), q(1, rat(1, 24)));
    assert!(r.coefficient(&[2, 1]).unwrap().is_zero());
    let r0 = resolution_potential_3d_closed(2, 0, 3).unwrap();
    assert_eq!(r0.coefficient(&[1]).unwrap(), q(1, int(1)));
}

fn geometric_x(start: i64, step: i64, sign: i64, prec: i64) -> QHalfSeries {
    QHalfSeries::from_terms(
        (0..)
            .map(|i| start + i * step)
            .take_while(|&e| e < prec)
            .map(|e| (e, int(sign))),
        prec,
    )
}

#[test]
fn vertex_values() {
    let prec = 16;
    let empty = Partition::empty();
    let box1 = Partition::new(vec![1]);
    for conv in Convention::ALL {
        assert_eq!(vertex_w(&empty, &empty, prec, conv), QHalfSeries::one());
    }
    let w01 = vertex_w(&empty, &box1, prec, Convention::Direct);
    assert_eq!(w01.truncate(prec), geometric_x(1, 2, -1, prec));

    let s1 = geometric_x(1, 2, 1, prec);
    let want = s1.mul(&s1).add(&QHalfSeries::one()).truncate(prec);
    assert_eq!(
        vertex_w(&box1, &box1, prec, Convention::Direct).truncate(prec),
        want
    );
}

#[test]
fn vertex_degree_one() {
    // coefficient of Q_1 in the log: sum_m m q^m, i.e. q/(1-q)^2 up to sign
    let prec = 20;
    let prod = product_formula_log(2, 1, prec);
    let c = prod.get(&vec![1]).unwrap().truncate(prec);
    let series = QHalfSeries::from_terms((1..10).map(|m| (2 * m, int(m))), prec);
    assert!(c == series || c == series.neg(), "{c}");
    let z = vertex_partition_sum(2, 1, prec, Convention::SignedDual);
    assert_eq!(z.get(&vec![1]).unwrap().truncate(prec), c);
}

#[test]
fn q_series_identity() {
    // -q^d/(1-q^d)^2 = -sum_m m q^{md}
    let prec = 40;
    for d in 1..=4i64 {
        let g = QHalfSeries::geometric(2 * d, prec);
        let lhs = QHalfSeries::monomial(int(-1), 2 * d)
            .mul(&g)
            .mul(&g)
            .truncate(prec);
        let rhs = QHalfSeries::from_terms(
            (1..)
                .map(|m| (2 * m * d, int(-m)))
                .take_while(|(e, _)| *e < prec),
            prec,
        );
        assert_eq!(lhs, rhs, "d={d}");
    }
}
