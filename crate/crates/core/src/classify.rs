//! Finite type, soficity, mixing and irreducibility verdicts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::{ShiftSpec, Variant};
use crate::sets::SetSpec;
use crate::word::RunWord;
use crate::Letter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// A verdict together with the letter whose set decided it, if one did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SftVerdict {
    pub verdict: Verdict,
    pub letter: Option<Letter>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MixingVerdict {
    pub verdict: Verdict,
    pub gcd: Option<usize>,
    /// Largest block length (or selection sum) inspected.
    pub stabilization_bound: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationReport {
    pub sft: Verdict,
    pub sofic: Verdict,
    pub mixing: Verdict,
    pub irreducible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gcd_value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilization_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub synchronizing_example: Option<RunWord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forbidden_words: Option<Vec<RunWord>>,
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Allowed lengths are finite, or all lengths past some point.
fn finite_or_cofinite(s: &SetSpec) -> bool {
    matches!(s, SetSpec::Finite { .. }) || s.as_cofinite().is_some()
}

pub fn is_sft(shift: &ShiftSpec) -> SftVerdict {
    let sets = shift.sets();
    let letter_of = |i: usize| Some(i as Letter + 1);
    if let Some(i) = sets.iter().position(|s| s.is_closed_form() && !finite_or_cofinite(s)) {
        return SftVerdict { verdict: Verdict::No, letter: letter_of(i) };
    }
    if let Some(i) = sets.iter().position(|s| !s.is_closed_form()) {
        return SftVerdict { verdict: Verdict::Unknown, letter: letter_of(i) };
    }
    SftVerdict { verdict: Verdict::Yes, letter: None }
}

/// Every closed form has an eventually periodic gap sequence, so the only
/// possible verdicts are yes and unknown.
pub fn is_sofic(shift: &ShiftSpec) -> Verdict {
    if shift.has_bounded_sets() {
        Verdict::Unknown
    } else {
        Verdict::Yes
    }
}

fn sort_words(words: &mut Vec<RunWord>) {
    words.sort_by_cached_key(|w| (w.len(), w.letters()));
    words.dedup();
}

/// A finite forbidden list defining the shift: order violations (ordered
/// variant only) plus, per set, the disallowed interior runs and the first
/// run too long for a finite set.
pub fn forbidden_words(shift: &ShiftSpec) -> Result<Vec<RunWord>> {
    if is_sft(shift).verdict != Verdict::Yes {
        return Err(Error::NotSft);
    }
    let p = shift.p() as Letter;
    let pair = |a: Letter, b: Letter| RunWord::from_letters(&[a, b]).expect("distinct letters");
    let mut out = Vec::new();
    if shift.variant() == Variant::Ordered {
        for n in 1..p {
            for m in (1..=p).filter(|&m| m != n && m != n + 1) {
                out.push(pair(n, m));
            }
        }
        for i in 2..p {
            out.push(pair(p, i));
        }
    }
    for i in 1..=p {
        let set = shift.set(i);
        let (bad, too_long) = match set {
            SetSpec::Finite { elements } => {
                let max = *elements.last().unwrap();
                let bad: Vec<usize> = (1..=max).filter(|n| elements.binary_search(n).is_err()).collect();
                (bad, Some(max + 1))
            }
            _ => (set.as_cofinite().expect("sft sets are finite or cofinite"), None),
        };
        for &n in &bad {
            for a in (1..=p).filter(|&a| a != i) {
                for b in (1..=p).filter(|&b| b != i) {
                    out.push(RunWord::from_runs(&[(a, 1), (i, n), (b, 1)]).expect("distinct letters"));
                }
            }
        }
        if let Some(len) = too_long {
            out.push(RunWord::from_runs(&[(i, len)]).expect("positive run"));
        }
    }
    sort_words(&mut out);
    Ok(out)
}

/// Members of each set up to one full period past its irregular head.
fn representative_elements(shift: &ShiftSpec) -> Vec<Vec<usize>> {
    shift
        .sets()
        .iter()
        .map(|s| {
            let (h, period) = s.periodic_form().expect("closed form");
            s.enumerate_up_to(h + period).expect("closed form")
        })
        .collect()
}

/// Block lengths beyond this bound add nothing to their gcd.
pub fn stabilization_bound(shift: &ShiftSpec) -> Option<usize> {
    let forms: Option<Vec<(usize, usize)>> = shift.sets().iter().map(SetSpec::periodic_form).collect();
    let forms = forms?;
    let max_period = forms.iter().map(|&(_, period)| period).max().unwrap_or(0);
    Some(forms.iter().map(|&(h, period)| h + period).sum::<usize>() + shift.p() * max_period)
}

pub fn is_mixing(shift: &ShiftSpec) -> Result<MixingVerdict> {
    if shift.has_bounded_sets() {
        return Ok(MixingVerdict { verdict: Verdict::Unknown, gcd: None, stabilization_bound: None });
    }
    let (g, bound) = match shift.variant() {
        Variant::Ordered => {
            let bound = stabilization_bound(shift).expect("closed form");
            let spectrum = shift.length_spectrum(bound)?;
            (spectrum.support().fold(0, gcd), bound)
        }
        Variant::Generalized => generalized_gcd(shift),
    };
    let verdict = if g == 1 { Verdict::Yes } else { Verdict::No };
    Ok(MixingVerdict { verdict, gcd: Some(g), stabilization_bound: Some(bound) })
}

/// gcd of the sums `s_a1 + ... + s_ak` over sets of `k >= 2` distinct letters.
fn generalized_gcd(shift: &ShiftSpec) -> (usize, usize) {
    let elems = representative_elements(shift);
    let p = elems.len();
    // For one letter: its smallest member and the gcd of the offsets above it.
    let parts: Vec<(usize, usize)> =
        elems.iter().map(|xs| (xs[0], xs.iter().fold(0, |g, &x| gcd(g, x - xs[0])))).collect();
    let mut g = 0;
    for mask in 0u32..(1 << p) {
        if mask.count_ones() < 2 {
            continue;
        }
        let chosen = (0..p).filter(|i| mask & (1 << i) != 0);
        let (base, spread) =
            chosen.fold((0, 0), |(base, spread), i| (base + parts[i].0, gcd(spread, parts[i].1)));
        g = gcd(g, gcd(base, spread));
    }
    let bound = elems.iter().map(|xs| *xs.last().unwrap()).sum();
    (g, bound)
}

/// Both variants are irreducible; `p 1` resp. `1 2` is a synchronizing word.
pub fn irreducibility_and_sync(shift: &ShiftSpec) -> (bool, RunWord) {
    let word = match shift.variant() {
        Variant::Ordered => RunWord::from_letters(&[shift.p() as Letter, 1]),
        Variant::Generalized => RunWord::from_letters(&[1, 2]),
    };
    (true, word.expect("distinct letters"))
}

pub fn classify(shift: &ShiftSpec) -> Result<ClassificationReport> {
    let sft = is_sft(shift).verdict;
    let mixing = is_mixing(shift)?;
    let (irreducible, sync) = irreducibility_and_sync(shift);
    let forbidden = match sft {
        Verdict::Yes => Some(forbidden_words(shift)?),
        _ => None,
    };
    Ok(ClassificationReport {
        sft,
        sofic: is_sofic(shift),
        mixing: mixing.verdict,
        irreducible,
        gcd_value: mixing.gcd,
        stabilization_bound: mixing.stabilization_bound,
        synchronizing_example: Some(sync),
        forbidden_words: forbidden,
    })
}
