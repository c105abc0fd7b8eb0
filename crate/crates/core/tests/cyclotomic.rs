use coxkit::cyclotomic::{arith, ArithOp};
use coxkit::{CycloNum, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

const CONDUCTORS: [u32; 8] = [1, 3, 4, 5, 8, 12, 15, 20];

fn z(n: u32, k: i64) -> CycloNum {
    CycloNum::root_of_unity(n, k)
}

fn element(n: u32) -> impl Strategy<Value = CycloNum> {
    prop::collection::vec((0..n as i64, -6i64..=6, 1i64..=4), 0..5).prop_map(move |terms| {
        terms.into_iter().fold(CycloNum::zero(n), |acc, (k, a, b)| {
            let c = CycloNum::from_rational(n, Rational::new(BigInt::from(a), BigInt::from(b)));
            &acc + &(&c * &z(n, k))
        })
    })
}

fn conductor_and_elements(count: usize) -> impl Strategy<Value = (u32, Vec<CycloNum>)> {
    prop::sample::select(CONDUCTORS.to_vec())
        .prop_flat_map(move |n| (Just(n), prop::collection::vec(element(n), count)))
}

fn units(n: u32) -> Vec<i64> {
    (1..=n as i64)
        .filter(|&k| num_integer::gcd(k, n as i64) == 1)
        .collect()
}

#[test]
fn sum_of_primitive_fifth_roots() {
    let s = arith(ArithOp::Add, &z(5, 1), &z(5, 4)).unwrap();
    let t = arith(
        ArithOp::Add,
        &s,
        &arith(ArithOp::Add, &z(5, 2), &z(5, 3)).unwrap(),
    )
    .unwrap();
    assert_eq!(t, CycloNum::from_int(5, -1));
}

#[test]
fn mixed_conductors_are_rejected() {
    assert!(arith(ArithOp::Mul, &z(5, 1), &z(10, 1)).is_err());
}

#[test]
fn conjugation_matches_complex_conjugate() {
    let x = &(&z(12, 1) + &z(12, 5)) * &CycloNum::from_int(12, 3);
    let (re, im) = x.to_complex_approx();
    let (cre, cim) = x.galois(11).unwrap().to_complex_approx();
    assert!((re - cre).abs() < 1e-9 && (im + cim).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms((_, xs) in conductor_and_elements(3)) {
        let (x, y, w) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(x + y, y + x);
        prop_assert_eq!(x * y, y * x);
        prop_assert_eq!(&(x + y) + w, x + &(y + w));
        prop_assert_eq!(&(x * y) * w, x * &(y * w));
        prop_assert_eq!(x * &(y + w), &(x * y) + &(x * w));
        prop_assert!((x - x).is_zero());
        prop_assert!((&(x + y) - y) == *x);
        if !x.is_zero() {
            prop_assert!((x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn galois_is_a_field_automorphism((n, xs) in conductor_and_elements(2), a in 0usize..8, b in 0usize..8) {
        let us = units(n);
        let (j, k) = (us[a % us.len()], us[b % us.len()]);
        let (x, y) = (&xs[0], &xs[1]);
        let g = |v: &CycloNum, k| v.galois(k).unwrap();
        prop_assert_eq!(g(&(x + y), j), &g(x, j) + &g(y, j));
        prop_assert_eq!(g(&(x * y), j), &g(x, j) * &g(y, j));
        prop_assert_eq!(g(&g(x, j), k), g(x, (j * k) % n as i64));
        prop_assert_eq!(g(x, 1), x.clone());
    }

    #[test]
    fn promotion_is_a_homomorphism((n, xs) in conductor_and_elements(2), m in 1u32..4) {
        let big = n * m;
        let p = |v: &CycloNum| v.promote(big).unwrap();
        let (x, y) = (&xs[0], &xs[1]);
        prop_assert_eq!(p(&(x + y)), &p(x) + &p(y));
        prop_assert_eq!(p(&(x * y)), &p(x) * &p(y));
        prop_assert_eq!(p(x) == p(y), x == y);
    }

    #[test]
    fn roots_of_unity_have_their_order(n in 1u32..40, k in 0i64..80) {
        let g = num_integer::gcd(k, n as i64) as u64;
        let want = n as u64 / g;
        prop_assert_eq!(z(n, k).root_of_unity_order(), Some(want));
        prop_assert!(z(n, k).pow(want).is_one());
    }

    #[test]
    fn complex_approximation_is_a_ring_map((_, xs) in conductor_and_elements(2)) {
        let (x, y) = (&xs[0], &xs[1]);
        let (a, b) = x.to_complex_approx();
        let (c, d) = y.to_complex_approx();
        let (re, im) = (x * y).to_complex_approx();
        prop_assert!((re - (a * c - b * d)).abs() < 1e-6);
        prop_assert!((im - (a * d + b * c)).abs() < 1e-6);
    }

    #[test]
    fn text_round_trip((_, xs) in conductor_and_elements(1)) {
        prop_assert_eq!(xs[0].to_string().parse::<CycloNum>().unwrap(), xs[0].clone());
    }
}
