//! Entropy from the block generating function.
//!
//! With `c_l` the number of core blocks of length `l`, the entropy is
//! `-ln(lambda)` where `lambda` is the root in `(0, 1]` of
//! `F(x) = sum c_l x^l = 1`. `F` is increasing, so bisection works once each
//! comparison of `F(x)` with 1 is made with rigorous bounds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::{CoreLengthSpectrum, ShiftSpec};
use crate::sets::SetSpec;

const INITIAL_TRUNCATION: usize = 64;
const MAX_TRUNCATION: usize = 8192;
/// Explicit tail terms summed before the ratio bound takes over.
const MAX_EXPLICIT_TAIL: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenfunBounds {
    pub lower: f64,
    pub upper: f64,
    /// The part of `upper - lower` due to blocks longer than the truncation.
    pub tail: f64,
}

/// `lambda_lo <= lambda <= lambda_hi`, witnessed by `F(lambda_lo) <= f1_upper_at_lo <= 1`
/// and `1 <= f1_lower_at_hi <= F(lambda_hi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    pub f1_upper_at_lo: f64,
    pub f1_lower_at_hi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EntropyResult {
    pub value: f64,
    pub lambda: f64,
    pub tolerance: f64,
    pub truncation_l: usize,
    pub certificate: Certificate,
}

fn refuse_bounded(shift: &ShiftSpec) -> Result<()> {
    shift.require_ordered()?;
    for (i, s) in shift.sets().iter().enumerate() {
        if let SetSpec::BoundedExplicit { bound, .. } = s {
            return Err(Error::UnknownMembership { letter: i as u32 + 1, n: bound + 1 });
        }
    }
    Ok(())
}

/// Longest block when every set is finite.
fn longest_block(shift: &ShiftSpec) -> Option<usize> {
    shift
        .sets()
        .iter()
        .map(|s| match s {
            SetSpec::Finite { elements } => elements.last().copied(),
            _ => None,
        })
        .sum()
}

/// `ln C(l - 1, k)` for `l - 1 >= k`.
fn ln_binomial(l: usize, k: usize) -> f64 {
    (1..=k).map(|j| ((l - j) as f64 / j as f64).ln()).sum()
}

/// Bound on `sum_{l > trunc} C(l - 1, p - 1) x^l`, the number of ways to
/// split `l` into `p` positive run lengths bounding `c_l`.
fn tail_bound(p: usize, x: f64, trunc: usize) -> f64 {
    let k = p - 1;
    let mut sum = 0.0;
    for l in ((trunc + 1).max(p)..).take(MAX_EXPLICIT_TAIL) {
        let term = (ln_binomial(l, k) + l as f64 * x.ln()).exp();
        // consecutive terms have ratio x * l / (l - k), decreasing in l
        let ratio = x * l as f64 / (l - k) as f64;
        if ratio < 1.0 {
            return (sum + term / (1.0 - ratio)) * (1.0 + 1e-12);
        }
        sum += term;
    }
    f64::INFINITY
}

fn bounds_from(spectrum: &CoreLengthSpectrum, p: usize, x: f64, exact_tail: bool) -> GenfunBounds {
    let mut sum = 0.0f64;
    let mut pow = 1.0f64;
    for &c in &spectrum.counts[1..] {
        pow *= x;
        sum += c as f64 * pow;
    }
    // absorb the rounding of the partial sum
    let slack = sum * 4.0 * (spectrum.counts.len() as f64 + 2.0) * f64::EPSILON + f64::MIN_POSITIVE;
    let tail = if exact_tail { 0.0 } else { tail_bound(p, x, spectrum.truncation) };
    GenfunBounds { lower: (sum - slack).max(0.0), upper: sum + slack + tail, tail }
}

/// Rigorous `(lower, upper)` on `F(x)` from blocks of length at most `trunc`.
pub fn genfun_bounds(shift: &ShiftSpec, x: f64, trunc: usize) -> Result<GenfunBounds> {
    refuse_bounded(shift)?;
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::InvalidShift(format!("generating function argument {x} outside (0, 1)")));
    }
    let spectrum = shift.length_spectrum(trunc)?;
    let exact = longest_block(shift).is_some_and(|m| trunc >= m);
    Ok(bounds_from(&spectrum, shift.p(), x, exact))
}

pub fn solve_entropy(shift: &ShiftSpec, tol: f64) -> Result<EntropyResult> {
    refuse_bounded(shift)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidShift(format!("tolerance must be positive, got {tol}")));
    }
    if shift.sets().iter().all(SetSpec::is_singleton) {
        let certificate = Certificate { lambda_lo: 1.0, lambda_hi: 1.0, f1_upper_at_lo: 1.0, f1_lower_at_hi: 1.0 };
        return Ok(EntropyResult { value: 0.0, lambda: 1.0, tolerance: tol, truncation_l: 1, certificate });
    }
    let longest = longest_block(shift);
    let mut trunc = longest.unwrap_or(INITIAL_TRUNCATION);
    let mut spectrum = shift.length_spectrum(trunc)?;
    let p = shift.p();
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let (mut at_lo, mut at_hi) = (0.0f64, f64::INFINITY);
    while lo == 0.0 || (hi / lo).ln() > tol {
        let mid = if lo == 0.0 { hi / 2.0 } else { (lo * hi).sqrt() };
        if mid <= lo || mid >= hi {
            break;
        }
        let b = bounds_from(&spectrum, p, mid, longest.is_some());
        let rounding = b.upper - b.lower - b.tail;
        if b.upper < 1.0 {
            (lo, at_lo) = (mid, b.upper);
        } else if b.lower > 1.0 {
            (hi, at_hi) = (mid, b.lower);
        } else if b.tail > rounding && trunc < MAX_TRUNCATION {
            trunc *= 2;
            spectrum = shift.length_spectrum(trunc)?;
        } else if b.tail <= rounding {
            // F(mid) equals 1 to within rounding
            (lo, hi, at_lo, at_hi) = (mid, mid, b.upper, b.lower);
        } else {
            return Err(Error::NoConvergence(format!(
                "generating function tail still {:.3e} at truncation {trunc}",
                b.tail
            )));
        }
    }
    let lambda = (lo * hi).sqrt();
    Ok(EntropyResult {
        value: -lambda.ln(),
        lambda,
        tolerance: tol,
        truncation_l: trunc,
        certificate: Certificate { lambda_lo: lo, lambda_hi: hi, f1_upper_at_lo: at_lo, f1_lower_at_hi: at_hi },
    })
}

/// Each set cut down to its first `n` members; the result is of finite type.
pub fn truncated_shift(shift: &ShiftSpec, n: usize) -> Result<ShiftSpec> {
    shift.require_ordered()?;
    if n == 0 {
        return Err(Error::InvalidSet("truncation must keep at least one member".into()));
    }
    let sets = shift.sets().iter().map(|s| SetSpec::finite(s.first_n(n))).collect::<Result<_>>()?;
    ShiftSpec::new(sets, shift.variant())
}

/// `ln |B_n| / n`.
pub fn empirical_entropy(shift: &ShiftSpec, n: usize) -> Result<f64> {
    Ok((shift.count_words(n)? as f64).ln() / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN_ENTROPY: f64 = 0.481_211_825_059_603_4;

    fn golden() -> ShiftSpec {
        ShiftSpec::ordered(vec![SetSpec::finite(vec![1]).unwrap(), SetSpec::naturals()]).unwrap()
    }

    fn even() -> ShiftSpec {
        ShiftSpec::ordered(vec![
            SetSpec::naturals(),
            SetSpec::eventually_periodic(vec![2], vec![2]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn genfun_examples() {
        let b = genfun_bounds(&golden(), 0.5, 20).unwrap();
        let partial: f64 = (2..=20).map(|l| 0.5f64.powi(l)).sum();
        assert!(b.lower <= partial && partial <= b.upper);
        assert!(b.lower <= 0.5 && 0.5 <= b.upper);
        assert!(b.upper - b.lower < 1e-4);
        let b = genfun_bounds(&golden(), 1e-9, 20).unwrap();
        assert!(b.upper < 1e-17);
        let x = (5f64.sqrt() - 1.0) / 2.0;
        let b = genfun_bounds(&even(), x * 0.999_999, 60).unwrap();
        assert!(b.upper < 1.0);
        let b = genfun_bounds(&even(), x * 1.000_001, 60).unwrap();
        assert!(b.lower > 1.0);
    }

    #[test]
    fn entropy_examples() {
        let r = solve_entropy(&golden(), 1e-9).unwrap();
        assert!((r.value - GOLDEN_ENTROPY).abs() <= 1e-9);
        assert!(r.certificate.f1_upper_at_lo <= 1.0 && r.certificate.f1_lower_at_hi >= 1.0);
        let r = solve_entropy(&even(), 1e-9).unwrap();
        assert!((r.value - GOLDEN_ENTROPY).abs() <= 1e-9);
        let orbit = ShiftSpec::ordered(vec![SetSpec::finite(vec![2]).unwrap(), SetSpec::finite(vec![3]).unwrap()])
            .unwrap();
        let r = solve_entropy(&orbit, 1e-9).unwrap();
        assert_eq!((r.value, r.lambda), (0.0, 1.0));
    }

    #[test]
    fn bounded_sets_refused() {
        let s = ShiftSpec::ordered(vec![
            SetSpec::naturals(),
            SetSpec::bounded_explicit(vec![2, 3, 5], 6).unwrap(),
        ])
        .unwrap();
        assert!(matches!(solve_entropy(&s, 1e-9), Err(Error::UnknownMembership { .. })));
    }

    #[test]
    fn truncation_examples() {
        let t = truncated_shift(&golden(), 3).unwrap();
        assert_eq!(t.sets()[0], SetSpec::finite(vec![1]).unwrap());
        assert_eq!(t.sets()[1], SetSpec::finite(vec![1, 2, 3]).unwrap());
        let t = truncated_shift(&even(), 2).unwrap();
        assert_eq!(t.sets()[0], SetSpec::finite(vec![1, 2]).unwrap());
        assert_eq!(t.sets()[1], SetSpec::finite(vec![2, 4]).unwrap());
        assert_eq!(truncated_shift(&t, 5).unwrap(), t);
    }

    #[test]
    fn empirical_examples() {
        assert!((empirical_entropy(&golden(), 10).unwrap() - 144f64.ln() / 10.0).abs() < 1e-15);
        let full = ShiftSpec::generalized(vec![SetSpec::naturals(); 2]).unwrap();
        assert!((empirical_entropy(&full, 8).unwrap() - 2f64.ln()).abs() < 1e-15);
        let orbit = ShiftSpec::ordered(vec![SetSpec::finite(vec![2]).unwrap(), SetSpec::finite(vec![3]).unwrap()])
            .unwrap();
        assert!((empirical_entropy(&orbit, 10).unwrap() - 5f64.ln() / 10.0).abs() < 1e-15);
    }
}
