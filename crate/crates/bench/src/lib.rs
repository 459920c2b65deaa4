//! Shifts shared by the benchmarks.

use limshift::{SetSpec, ShiftSpec};

pub fn golden() -> ShiftSpec {
    ShiftSpec::ordered(vec![SetSpec::finite(vec![1]).unwrap(), SetSpec::naturals()]).unwrap()
}

pub fn even() -> ShiftSpec {
    ShiftSpec::ordered(vec![SetSpec::naturals(), SetSpec::eventually_periodic(vec![2], vec![2]).unwrap()]).unwrap()
}

/// Five letters with mixed set kinds.
pub fn mixed() -> ShiftSpec {
    ShiftSpec::ordered(vec![
        SetSpec::cofinite(vec![2, 5]).unwrap(),
        SetSpec::eventually_periodic(vec![1, 4], vec![3]).unwrap(),
        SetSpec::finite(vec![1, 2, 7]).unwrap(),
        SetSpec::naturals(),
        SetSpec::eventually_periodic(vec![2], vec![2, 4]).unwrap(),
    ])
    .unwrap()
}

/// A source and target related by offsets `(0, 1, -1)`.
pub fn offset_pair() -> (ShiftSpec, ShiftSpec) {
    let s = ShiftSpec::ordered(vec![
        SetSpec::naturals(),
        SetSpec::eventually_periodic(vec![2], vec![2]).unwrap(),
        SetSpec::finite(vec![3, 5]).unwrap(),
    ])
    .unwrap();
    let t = ShiftSpec::ordered(vec![
        SetSpec::naturals(),
        SetSpec::eventually_periodic(vec![3], vec![2]).unwrap(),
        SetSpec::finite(vec![2, 4]).unwrap(),
    ])
    .unwrap();
    (s, t)
}
