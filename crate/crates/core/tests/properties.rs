use std::sync::Arc;

use num_traits::Zero;
use proptest::prelude::*;

use crepant_core::crc2d::{kernel_direct, kernel_window};
use crepant_core::exact::{
    bernoulli_number, bernoulli_poly, cyclo_root, int, rat, Cyclotomic, Rational,
};
use crepant_core::hodge::{orbifold_correlator_2d, orbifold_correlator_3d, BracketMode, OrbKey};
use crepant_core::series::{MultiSeries, Truncation, VarRegistry};
use crepant_core::tau::{dilaton_equation_holds, string_equation_holds, tau};

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 64,
        ..ProptestConfig::default()
    }
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(p, q)| rat(p, q))
}

fn cyclotomic(order: u32) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((0..order as i64, small_rational()), 0..5)
        .prop_map(move |terms| Cyclotomic::from_exponents(order, terms))
}

fn field_triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    (1u32..=12).prop_flat_map(|n| (cyclotomic(n), cyclotomic(n), cyclotomic(n)))
}

/// A stable key `(g, rest)` to which one more point can be added.
fn tau_rest() -> impl Strategy<Value = (i64, Vec<i64>)> {
    (0i64..=3, prop::collection::vec(0i64..=7, 1..=6))
        .prop_filter("stable", |(g, rest)| 2 * g - 2 + rest.len() as i64 > 0)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn string_equation((g, rest) in tau_rest()) {
        prop_assert!(string_equation_holds(g, &rest));
    }

    #[test]
    fn dilaton_equation((g, rest) in tau_rest()) {
        prop_assert!(dilaton_equation_holds(g, &rest));
    }

    #[test]
    fn tau_is_symmetric((g, rest) in tau_rest(), seed in any::<u64>()) {
        let mut shuffled = rest.clone();
        let len = shuffled.len();
        shuffled.rotate_left(seed as usize % len);
        prop_assert_eq!(tau(g, &rest), tau(g, &shuffled));
    }

    #[test]
    fn field_ring_axioms((a, b, c) in field_triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn embedding_is_a_homomorphism((a, b, _c) in field_triple(), k in 1u32..=3) {
        prop_assert_eq!((&a * &b).embed(k), &a.embed(k) * &b.embed(k));
        prop_assert_eq!((&a + &b).embed(k), &a.embed(k) + &b.embed(k));
        if !a.is_zero() {
            prop_assert_eq!(a.inv().unwrap().embed(k), a.embed(k).inv().unwrap());
        }
    }

    #[test]
    fn root_of_unity_order(n in 1u32..=24, a in -30i64..30) {
        prop_assert!(cyclo_root(n, a).pow(n as i64).unwrap().is_one());
        prop_assert_eq!(cyclo_root(n, a), cyclo_root(n, a + n as i64));
    }

    #[test]
    fn bernoulli_reflection(m in 0usize..=12, x in prop::sample::select(vec![(0, 1), (1, 2), (1, 3), (2, 3), (1, 5)])) {
        let x = rat(x.0, x.1);
        let reflected = bernoulli_poly(m, &(int(1) - &x));
        let sign = if m % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(reflected, sign * bernoulli_poly(m, &x));
    }

    #[test]
    fn odd_bernoulli_vanish(k in 1usize..=15) {
        prop_assert!(bernoulli_number(2 * k + 1).is_zero());
    }

    #[test]
    fn kernel_lemma(n in 2u32..=8, b in 0u32..8, l in 1u32..8) {
        prop_assume!(b < n && l < n);
        let w = kernel_window(n, b, l).unwrap();
        for j in 1..n {
            let k = -kernel_direct(n, b, l, j).unwrap();
            let want = if (w.s..=w.t).contains(&j) { int(w.sigma as i64 * n as i64) } else { int(0) };
            prop_assert_eq!(k, Cyclotomic::from_rational(2 * n, want));
        }
    }
}

fn two_var_series(terms: Vec<(u32, u32, Cyclotomic)>) -> MultiSeries {
    let reg = VarRegistry::u_vars(3);
    let mut s = MultiSeries::zero(reg, 6, Truncation::total(5));
    for (i, j, c) in terms {
        if i + j <= 5 {
            s.add_term(vec![i, j], c);
        }
    }
    s
}

fn series(min_degree: u32) -> impl Strategy<Value = MultiSeries> {
    prop::collection::vec((0u32..=3, 0u32..=3, cyclotomic(6)), 0..5).prop_map(move |t| {
        two_var_series(
            t.into_iter()
                .filter(|(i, j, _)| i + j >= min_degree)
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 32, ..ProptestConfig::default() })]

    #[test]
    fn series_ring_axioms(a in series(0), b in series(0), c in series(0)) {
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn exp_log_round_trip(a in series(1), b in series(1)) {
        let ea = a.exp().unwrap();
        prop_assert_eq!(ea.log().unwrap(), a.clone());
        let sum = a.add(&b).unwrap().exp().unwrap();
        prop_assert_eq!(sum, ea.mul(&b.exp().unwrap()).unwrap());
    }

    #[test]
    fn substitution_is_a_homomorphism(
        a in series(0),
        b in series(0),
        m in prop::collection::vec(cyclotomic(6), 4),
    ) {
        let target: Arc<VarRegistry> = VarRegistry::u_vars(3);
        let map = vec![
            vec![(0, m[0].clone()), (1, m[1].clone())],
            vec![(0, m[2].clone()), (1, m[3].clone())],
        ];
        let t = Truncation::total(5);
        let f = |s: &MultiSeries| s.substitute_linear(target.clone(), t, &map).unwrap();
        prop_assert_eq!(f(&a.mul(&b).unwrap()), f(&a).mul(&f(&b)).unwrap());
        prop_assert_eq!(f(&a.add(&b).unwrap()), f(&a).add(&f(&b)).unwrap());
    }
}

/// An admissible 2D key: monodromies summing to a multiple of `n`, at least one twisted.
fn key_2d() -> impl Strategy<Value = OrbKey> {
    (2u32..=4, 0u32..=2, 2usize..=5)
        .prop_flat_map(|(n, g, m)| {
            (
                Just(n),
                Just(g),
                prop::collection::vec(0..n, m),
                prop::collection::vec(0u32..=3, m),
            )
        })
        .prop_filter("admissible", |(n, _, a, _)| {
            a.iter().sum::<u32>() % n == 0 && a.iter().any(|&x| x != 0)
        })
        .prop_map(|(n, g, a, k)| OrbKey::new(n, g, a, k))
}

fn outcome(r: crepant_core::Result<Rational>) -> Result<Rational, String> {
    r.map_err(|e| e.to_string())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn correlator_2d_permutation_symmetry(key in key_2d(), shift in 0usize..5) {
        let m = key.a.len();
        let mut a = key.a.clone();
        let mut k = key.k.clone();
        a.rotate_left(shift % m);
        k.rotate_left(shift % m);
        a.swap(0, m - 1);
        k.swap(0, m - 1);
        let permuted = OrbKey::new(key.n, key.g, a, k);
        prop_assert_eq!(
            outcome(orbifold_correlator_2d(&key, BracketMode::BruteForce)),
            outcome(orbifold_correlator_2d(&permuted, BracketMode::BruteForce))
        );
    }

    #[test]
    fn correlator_2d_dimension_violation_is_zero(key in key_2d()) {
        let p = key.a.iter().filter(|&&x| x == 0).count() as u32;
        prop_assume!(key.k.iter().sum::<u32>() != key.g + p);
        prop_assert_eq!(orbifold_correlator_2d(&key, BracketMode::BruteForce).unwrap(), Rational::zero());
    }

    #[test]
    fn correlator_2d_closed_brackets_agree(key in key_2d()) {
        prop_assume!(key.a.iter().all(|&x| x != 0));
        prop_assert_eq!(
            outcome(orbifold_correlator_2d(&key, BracketMode::BruteForce)),
            outcome(orbifold_correlator_2d(&key, BracketMode::Closed))
        );
    }

    #[test]
    fn correlator_3d_permutation_symmetry(key in key_2d(), shift in 0usize..5) {
        prop_assume!(key.a.iter().all(|&x| x != 0));
        let mut a = key.a.clone();
        let m = a.len();
        a.rotate_left(shift % m);
        a.swap(0, m - 1);
        prop_assert_eq!(
            outcome(orbifold_correlator_3d(key.n, key.g, &key.a)),
            outcome(orbifold_correlator_3d(key.n, key.g, &a))
        );
    }
}
