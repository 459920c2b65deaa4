#![allow(dead_code)]

use limshift::{SetSpec, ShiftSpec};
use proptest::prelude::*;

pub fn fin(xs: &[usize]) -> SetSpec {
    SetSpec::finite(xs.to_vec()).unwrap()
}

pub fn cof(xs: &[usize]) -> SetSpec {
    SetSpec::cofinite(xs.to_vec()).unwrap()
}

pub fn epd(initial: &[usize], diffs: &[usize]) -> SetSpec {
    SetSpec::eventually_periodic(initial.to_vec(), diffs.to_vec()).unwrap()
}

pub fn nat() -> SetSpec {
    SetSpec::naturals()
}

pub fn primes_to(bound: usize) -> SetSpec {
    let ps = (2..=bound).filter(|&n| (2..n).all(|d| n % d != 0)).collect();
    SetSpec::bounded_explicit(ps, bound).unwrap()
}

pub fn golden() -> ShiftSpec {
    ShiftSpec::ordered(vec![fin(&[1]), nat()]).unwrap()
}

pub fn even() -> ShiftSpec {
    ShiftSpec::ordered(vec![nat(), epd(&[2], &[2])]).unwrap()
}

pub fn odds() -> ShiftSpec {
    ShiftSpec::ordered(vec![epd(&[1], &[2]), epd(&[1], &[2])]).unwrap()
}

pub fn single_orbit() -> ShiftSpec {
    ShiftSpec::ordered(vec![fin(&[2]), fin(&[3])]).unwrap()
}

pub fn three_letters() -> ShiftSpec {
    ShiftSpec::ordered(vec![nat(); 3]).unwrap()
}

pub fn example_pair() -> (ShiftSpec, ShiftSpec) {
    (
        ShiftSpec::ordered(vec![nat(), epd(&[2], &[2]), fin(&[3, 5])]).unwrap(),
        ShiftSpec::ordered(vec![nat(), epd(&[3], &[2]), fin(&[2, 4])]).unwrap(),
    )
}

pub fn full_generalized() -> ShiftSpec {
    ShiftSpec::generalized(vec![nat(), nat()]).unwrap()
}

/// Every closed-form fixture with its name.
pub fn fixtures() -> Vec<(&'static str, ShiftSpec)> {
    let (s, t) = example_pair();
    vec![
        ("golden", golden()),
        ("even", even()),
        ("odds", odds()),
        ("single-orbit", single_orbit()),
        ("three-letters", three_letters()),
        ("pair-source", s),
        ("pair-target", t),
        ("full-generalized", full_generalized()),
        ("gen-mixed", ShiftSpec::generalized(vec![fin(&[1, 3]), epd(&[2], &[3]), cof(&[1])]).unwrap()),
        ("cofinite-gap", ShiftSpec::ordered(vec![cof(&[2]), fin(&[1, 2])]).unwrap()),
    ]
}

pub fn set_strategy() -> impl Strategy<Value = SetSpec> {
    prop_oneof![
        proptest::collection::btree_set(1usize..=6, 1..=3)
            .prop_map(|xs| SetSpec::finite(xs.into_iter().collect()).unwrap()),
        proptest::collection::btree_set(1usize..=4, 0..=2)
            .prop_map(|xs| SetSpec::cofinite(xs.into_iter().collect()).unwrap()),
        (proptest::collection::btree_set(1usize..=5, 1..=2), proptest::collection::vec(1usize..=3, 1..=2))
            .prop_map(|(xs, ds)| SetSpec::eventually_periodic(xs.into_iter().collect(), ds).unwrap()),
    ]
}

pub fn ordered_strategy() -> impl Strategy<Value = ShiftSpec> {
    (2usize..=4)
        .prop_flat_map(|p| proptest::collection::vec(set_strategy(), p))
        .prop_map(|sets| ShiftSpec::ordered(sets).unwrap())
}

pub fn any_variant_strategy() -> impl Strategy<Value = ShiftSpec> {
    (ordered_strategy(), any::<bool>()).prop_map(|(s, generalized)| {
        if generalized {
            ShiftSpec::generalized(s.sets().to_vec()).unwrap()
        } else {
            s
        }
    })
}
