//! Randomized kernel properties shared by the property tests and the
//! acceptance suite.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use qfrac::{cross_poch, pochhammer, Rational, Series};

pub const KERNEL_CASES: u32 = 10_000;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=40).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| !r.is_zero())
}

pub fn series(max_order: usize) -> impl Strategy<Value = Series> {
    prop::collection::vec(small_rational(), 1..=max_order + 1).prop_map(Series::new)
}

pub fn invertible_series(max_order: usize) -> impl Strategy<Value = Series> {
    (
        nonzero_rational(),
        prop::collection::vec(small_rational(), 0..=max_order),
    )
        .prop_map(|(c, mut rest)| {
            rest.insert(0, c);
            Series::new(rest)
        })
}

fn runner(cases: u32) -> TestRunner {
    // fixed seed so every run explores the same cases
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[7; 32]);
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        rng,
    )
}

fn check<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases)
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

pub type Property = (&'static str, fn(u32) -> Result<(), String>);

pub const PROPERTIES: &[Property] = &[
    ("pochhammer_recurrence", pochhammer_recurrence),
    ("pochhammer_contraction", pochhammer_contraction),
    ("cross_poch_recurrence", cross_poch_recurrence),
    ("cross_poch_matches_y_power_form", cross_poch_y_power_form),
    ("recip_is_inverse", recip_is_inverse),
    ("mul_commutative", mul_commutative),
    ("mul_associative", mul_associative),
    ("shift_down_undoes_shift_up", shift_round_trip),
    ("order_bookkeeping", order_bookkeeping),
];

/// `(a;q)_(n+1) = (a;q)_n (1 - a q^n)`
fn pochhammer_recurrence(cases: u32) -> Result<(), String> {
    check(
        cases,
        (small_rational(), small_rational(), 0usize..12),
        |(a, q, n)| {
            let qn = num_traits::pow(q.clone(), n);
            prop_assert_eq!(
                pochhammer(&a, &q, n + 1),
                pochhammer(&a, &q, n) * (Rational::one() - &a * qn)
            );
            Ok(())
        },
    )
}

/// `(y;q)_(n+1) = (1 - y) (yq;q)_n`
fn pochhammer_contraction(cases: u32) -> Result<(), String> {
    check(
        cases,
        (small_rational(), small_rational(), 0usize..12),
        |(y, q, n)| {
            prop_assert_eq!(
                pochhammer(&y, &q, n + 1),
                (Rational::one() - &y) * pochhammer(&(&y * &q), &q, n)
            );
            Ok(())
        },
    )
}

/// `Q_1 = 1`, `Q_(k+1) = Q_k (y - x q^(k-1))`
fn cross_poch_recurrence(cases: u32) -> Result<(), String> {
    let s = (
        small_rational(),
        small_rational(),
        small_rational(),
        1usize..12,
    );
    check(cases, s, |(x, y, q, k)| {
        prop_assert!(cross_poch(&x, &y, &q, 1).is_one());
        let step = &y - &x * num_traits::pow(q.clone(), k - 1);
        prop_assert_eq!(
            cross_poch(&x, &y, &q, k + 1),
            cross_poch(&x, &y, &q, k) * step
        );
        Ok(())
    })
}

/// `Q_k = y^(k-1) (x/y;q)_(k-1)` whenever `y != 0`
fn cross_poch_y_power_form(cases: u32) -> Result<(), String> {
    let s = (
        small_rational(),
        nonzero_rational(),
        small_rational(),
        1usize..12,
    );
    check(cases, s, |(x, y, q, k)| {
        let want = num_traits::pow(y.clone(), k - 1) * pochhammer(&(&x / &y), &q, k - 1);
        prop_assert_eq!(cross_poch(&x, &y, &q, k), want);
        Ok(())
    })
}

fn recip_is_inverse(cases: u32) -> Result<(), String> {
    check(cases, invertible_series(8), |a| {
        let inv = a.recip().map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(inv.valid_order(), a.valid_order());
        prop_assert_eq!(a.mul(&inv), Series::one(a.valid_order()));
        Ok(())
    })
}

fn mul_commutative(cases: u32) -> Result<(), String> {
    check(cases, (series(8), series(8)), |(a, b)| {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        Ok(())
    })
}

fn mul_associative(cases: u32) -> Result<(), String> {
    check(cases, (series(6), series(6), series(6)), |(a, b, c)| {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        Ok(())
    })
}

fn shift_round_trip(cases: u32) -> Result<(), String> {
    check(cases, series(8), |a| {
        let up = a.shift_up();
        prop_assert!(up.const_term().is_zero());
        let back = up
            .shift_down()
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(back, a);
        Ok(())
    })
}

/// Binary operations never report more precision than their least precise
/// input; shifts move the order by exactly one.
fn order_bookkeeping(cases: u32) -> Result<(), String> {
    check(
        cases,
        (series(8), invertible_series(8), small_rational()),
        |(a, b, c)| {
            let min = a.valid_order().min(b.valid_order());
            prop_assert_eq!(a.add(&b).valid_order(), min);
            prop_assert_eq!(a.sub(&b).valid_order(), min);
            prop_assert_eq!(a.mul(&b).valid_order(), min);
            prop_assert_eq!(a.scale(&c).valid_order(), a.valid_order());
            let inv = b.recip().map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(inv.valid_order(), b.valid_order());
            prop_assert_eq!(a.shift_up().valid_order(), a.valid_order() + 1);
            let t = a.truncate(a.valid_order() / 2);
            prop_assert!(t.valid_order() <= a.valid_order());
            prop_assert!(t.coeff(t.valid_order() + 1).is_err());
            Ok(())
        },
    )
}
