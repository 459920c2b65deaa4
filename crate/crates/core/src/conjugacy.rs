//! Conjugacy tests between ordered S-limited shifts.
//!
//! When the `m`-th member of each `T_i` is the `m`-th member of `S_i` shifted
//! by a constant `d_i` with `sum d_i = 0`, relabelling block exponents index
//! by index is length preserving and is induced by a sliding block code. The
//! code keeps block boundaries fixed and moves the `k -> k+1` run boundary
//! by `r_k = d_1 + ... + d_k`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::{CoreBlock, ShiftSpec};
use crate::sets::SetSpec;
use crate::word::RunWord;
use crate::Letter;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OffsetVector {
    pub d: Vec<i64>,
}

impl OffsetVector {
    pub fn zero(p: usize) -> Self {
        OffsetVector { d: vec![0; p] }
    }

    pub fn sum(&self) -> i64 {
        self.d.iter().sum()
    }

    /// `r_k` for `k = 1..p-1`.
    pub fn partial_sums(&self) -> Vec<i64> {
        let mut acc = 0;
        self.d[..self.d.len().saturating_sub(1)]
            .iter()
            .map(|&x| {
                acc += x;
                acc
            })
            .collect()
    }
}

/// First index where two count sequences differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub index: usize,
    pub left: u128,
    pub right: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Refutation {
    /// The offsets do not sum to zero, so blocks would change length.
    OffsetSum { sum: i64 },
    /// The sets for `letter` have different finite sizes.
    Cardinality { letter: Letter, left: usize, right: usize },
    /// Index `m` exists on one side only.
    MissingIndex { letter: Letter, m: usize },
    /// `t^m != s^m + d` for this letter.
    Element { letter: Letter, m: usize, left: usize, right: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum OffsetCheck {
    Accepted { offsets: OffsetVector },
    Refuted { offsets: OffsetVector, refutation: Refutation },
}

pub fn length_spectra_equal(s: &ShiftSpec, t: &ShiftSpec, max_len: usize) -> Result<Option<Mismatch>> {
    let (a, b) = (s.length_spectrum(max_len)?, t.length_spectrum(max_len)?);
    Ok((1..=max_len)
        .map(|l| Mismatch { index: l, left: a.count(l), right: b.count(l) })
        .find(|m| m.left != m.right))
}

pub fn periodic_counts_equal(s: &ShiftSpec, t: &ShiftSpec, max_period: usize) -> Result<Option<Mismatch>> {
    for n in 1..=max_period {
        let (left, right) = (s.periodic_points(n)?, t.periodic_points(n)?);
        if left != right {
            return Ok(Some(Mismatch { index: n, left, right }));
        }
    }
    Ok(None)
}

fn require_comparable(s: &ShiftSpec, t: &ShiftSpec) -> Result<()> {
    s.require_ordered()?;
    t.require_ordered()?;
    if s.p() != t.p() {
        return Err(Error::AlphabetSizeMismatch { left: s.p(), right: t.p() });
    }
    for (shift, _) in [(s, 0), (t, 1)] {
        for (i, set) in shift.sets().iter().enumerate() {
            if let SetSpec::BoundedExplicit { bound, .. } = set {
                return Err(Error::UnknownMembership { letter: i as Letter + 1, n: bound + 1 });
            }
        }
    }
    Ok(())
}

/// Members in the irregular head and members per repeating cycle, counted by index.
fn index_shape(set: &SetSpec) -> (usize, usize) {
    let (h, _) = set.periodic_form().expect("closed form");
    let head = set.index_of(h).expect("h is a member") + 1;
    let cycle = match set {
        SetSpec::EventuallyPeriodic { diffs, .. } => diffs.len(),
        _ => 1,
    };
    (head, cycle)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Checks whether `t_i^m = s_i^m + d_i` for every letter and index, with
/// `d_i = t_i^1 - s_i^1`.
pub fn sufficient_offsets(s: &ShiftSpec, t: &ShiftSpec) -> Result<OffsetCheck> {
    require_comparable(s, t)?;
    let d: Vec<i64> =
        s.sets().iter().zip(t.sets()).map(|(a, b)| b.min_element() as i64 - a.min_element() as i64).collect();
    let offsets = OffsetVector { d };
    let refuted = |refutation| Ok(OffsetCheck::Refuted { offsets: offsets.clone(), refutation });
    if offsets.sum() != 0 {
        return refuted(Refutation::OffsetSum { sum: offsets.sum() });
    }
    for (i, (a, b)) in s.sets().iter().zip(t.sets()).enumerate() {
        let letter = i as Letter + 1;
        let checked = match (a.finite_len(), b.finite_len()) {
            (Some(x), Some(y)) if x != y => {
                return refuted(Refutation::Cardinality { letter, left: x, right: y });
            }
            (Some(x), Some(_)) => x,
            (Some(x), None) | (None, Some(x)) => {
                return refuted(Refutation::MissingIndex { letter, m: x + 1 });
            }
            (None, None) => {
                // Both enumerations repeat with a fixed index cycle past their
                // heads; two full joint cycles pin down the drift too.
                let ((ha, ca), (hb, cb)) = (index_shape(a), index_shape(b));
                ha.max(hb) + 2 * (ca * cb / gcd(ca, cb))
            }
        };
        for m in 1..=checked {
            let (x, y) = (a.nth_element(m)?, b.nth_element(m)?);
            if y as i64 != x as i64 + offsets.d[i] {
                return refuted(Refutation::Element { letter, m, left: x, right: y });
            }
        }
    }
    Ok(OffsetCheck::Accepted { offsets })
}

/// The index-preserving bijection between core blocks.
#[derive(Debug, Clone)]
pub struct Psi {
    source: Vec<SetSpec>,
    target: Vec<SetSpec>,
}

impl Psi {
    pub fn apply(&self, block: &CoreBlock) -> Result<CoreBlock> {
        if block.exponents.len() != self.source.len() {
            return Err(Error::AlphabetSizeMismatch { left: block.exponents.len(), right: self.source.len() });
        }
        let exponents = block
            .exponents
            .iter()
            .zip(self.source.iter().zip(&self.target))
            .map(|(&m, (a, b))| {
                let idx = a.index_of(m).ok_or_else(|| Error::InvalidWord(format!("{m} is not an allowed run length")))?;
                b.nth_element(idx + 1)
            })
            .collect::<Result<_>>()?;
        Ok(CoreBlock { exponents })
    }
}

pub fn build_psi(s: &ShiftSpec, t: &ShiftSpec, d: &OffsetVector) -> Result<Psi> {
    require_comparable(s, t)?;
    check_offsets(d, s.p())?;
    Ok(Psi { source: s.sets().to_vec(), target: t.sets().to_vec() })
}

fn check_offsets(d: &OffsetVector, p: usize) -> Result<()> {
    if d.d.len() != p {
        return Err(Error::InvalidOffsets(format!("expected {p} offsets, got {}", d.d.len())));
    }
    if d.sum() != 0 {
        return Err(Error::InvalidOffsets(format!("offsets sum to {}, not 0", d.sum())));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TransitionKind {
    Internal,
    External,
}

/// A letter change; `index` is the position of the first letter after it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TransitionPoint {
    pub index: i64,
    pub kind: TransitionKind,
    pub from_letter: Letter,
    pub to_letter: Letter,
}

/// Transition points of `letters`, indexed relative to position `origin`.
pub fn transition_points(letters: &[Letter], origin: usize) -> Vec<TransitionPoint> {
    (1..letters.len())
        .filter(|&i| letters[i] != letters[i - 1])
        .map(|i| TransitionPoint {
            index: i as i64 - origin as i64,
            kind: if letters[i] == letters[i - 1] + 1 { TransitionKind::Internal } else { TransitionKind::External },
            from_letter: letters[i - 1],
            to_letter: letters[i],
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BlockRule {
    /// Window (as its word string) to output letter.
    Table { entries: BTreeMap<String, Letter> },
    /// Moves every internal `k -> k+1` transition by `partial_sums[k-1]`.
    Transition { offsets: Vec<i64>, partial_sums: Vec<i64>, radius: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockMap {
    pub memory: usize,
    pub anticipation: usize,
    pub rule: BlockRule,
}

impl BlockMap {
    pub fn window(&self) -> usize {
        self.memory + self.anticipation + 1
    }

    pub fn identity(p: usize) -> Self {
        let entries = (1..=p as Letter).map(|a| (a.to_string(), a)).collect();
        BlockMap { memory: 0, anticipation: 0, rule: BlockRule::Table { entries } }
    }

    pub fn from_table(memory: usize, anticipation: usize, entries: BTreeMap<String, Letter>) -> Self {
        BlockMap { memory, anticipation, rule: BlockRule::Table { entries } }
    }

    /// Output letter for one window of length [`BlockMap::window`].
    pub fn evaluate(&self, window: &[Letter]) -> Result<Letter> {
        if window.len() != self.window() {
            return Err(Error::WordTooShort { len: window.len(), window: self.window() });
        }
        match &self.rule {
            BlockRule::Table { entries } => {
                let key = RunWord::from_letters(window)?.to_string();
                entries.get(&key).copied().ok_or(Error::MissingWindow(key))
            }
            BlockRule::Transition { partial_sums, .. } => Ok(self.move_transitions(window, partial_sums)),
        }
    }

    fn move_transitions(&self, window: &[Letter], partial_sums: &[i64]) -> Letter {
        let center = self.memory;
        let moved = transition_points(window, center).into_iter().map(|tp| {
            let shift = match tp.kind {
                TransitionKind::Internal => partial_sums.get(tp.from_letter as usize - 1).copied().unwrap_or(0),
                TransitionKind::External => 0,
            };
            TransitionPoint { index: tp.index + shift, ..tp }
        });
        // nearest image transition, ties to the negative side
        match moved.min_by_key(|tp| (tp.index.abs(), tp.index > 0)) {
            None => window[center],
            Some(tp) if tp.index <= 0 => tp.to_letter,
            Some(tp) => tp.from_letter,
        }
    }
}

pub fn synthesize_block_map(s: &ShiftSpec, t: &ShiftSpec, d: &OffsetVector) -> Result<BlockMap> {
    require_comparable(s, t)?;
    check_offsets(d, s.p())?;
    let partial_sums = d.partial_sums();
    let radius = 1 + partial_sums.iter().map(|r| r.unsigned_abs() as usize).max().unwrap_or(0);
    Ok(BlockMap {
        memory: radius,
        anticipation: radius,
        rule: BlockRule::Transition { offsets: d.d.clone(), partial_sums, radius },
    })
}

pub fn apply_block_map(phi: &BlockMap, w: &RunWord) -> Result<RunWord> {
    let letters = w.letters();
    let k = phi.window();
    if letters.len() < k {
        return Err(Error::WordTooShort { len: letters.len(), window: k });
    }
    let out = letters.windows(k).map(|win| phi.evaluate(win)).collect::<Result<Vec<_>>>()?;
    RunWord::from_letters(&out)
}

/// The letter map on constant windows for letters with infinite sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiCheck {
    pub pi: BTreeMap<Letter, Letter>,
    pub domain: Vec<Letter>,
    pub target: Vec<Letter>,
    pub ok: bool,
}

fn infinite_letters(shift: &ShiftSpec) -> Result<Vec<Letter>> {
    let mut out = Vec::new();
    for a in shift.letters() {
        if shift.set(a).is_infinite().ok_or(Error::InfinitudeUnknown { letter: a })? {
            out.push(a);
        }
    }
    Ok(out)
}

pub fn compute_pi(phi: &BlockMap, s: &ShiftSpec, t: &ShiftSpec) -> Result<PiCheck> {
    let domain = infinite_letters(s)?;
    let target = infinite_letters(t)?;
    let mut pi = BTreeMap::new();
    for &a in &domain {
        pi.insert(a, phi.evaluate(&vec![a; phi.window()])?);
    }
    let image: BTreeSet<Letter> = pi.values().copied().collect();
    let ok = image == target.iter().copied().collect();
    Ok(PiCheck { pi, domain, target, ok })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EvidenceParams {
    pub word_len: usize,
    pub period_bound: usize,
    pub core_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub passed: bool,
    pub checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl CheckOutcome {
    fn pass(checked: usize) -> Self {
        CheckOutcome { passed: true, checked, failure: None }
    }

    fn fail(checked: usize, why: String) -> Self {
        CheckOutcome { passed: false, checked, failure: Some(why) }
    }
}

/// Finite checks supporting a conjugacy claim. Passing is evidence, not proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EvidenceReport {
    pub kind: String,
    pub params: EvidenceParams,
    pub induction: CheckOutcome,
    pub image_containment: CheckOutcome,
    pub periodic_points: CheckOutcome,
    pub pi: CheckOutcome,
    pub all_passed: bool,
}

/// The shortest few blocks, used as surrounding context.
const CONTEXT_SAMPLE: usize = 3;

fn repeat_to(block: &RunWord, len: usize) -> RunWord {
    let mut w = RunWord::empty();
    while w.len() < len.max(1) {
        w = w.concat(block);
    }
    w
}

fn check_induction(phi: &BlockMap, s: &ShiftSpec, t: &ShiftSpec, core_len: usize) -> Result<CheckOutcome> {
    let blocks = s.core_blocks_up_to(core_len)?;
    let offsets = match sufficient_offsets(s, t)? {
        OffsetCheck::Accepted { offsets } => offsets,
        OffsetCheck::Refuted { refutation, .. } => {
            return Ok(CheckOutcome::fail(0, format!("no block bijection: {refutation:?}")));
        }
    };
    let psi = build_psi(s, t, &offsets)?;
    let sample: Vec<RunWord> = blocks.iter().take(CONTEXT_SAMPLE).map(CoreBlock::to_word).collect();
    let mut checked = 0;
    for z in &blocks {
        let expected = psi.apply(z)?.to_word();
        let zw = z.to_word();
        for left in &sample {
            for right in &sample {
                let before = repeat_to(left, phi.memory);
                let after = repeat_to(right, phi.anticipation);
                let x = before.slice(before.len() - phi.memory, before.len());
                let y = after.slice(0, phi.anticipation);
                let got = apply_block_map(phi, &x.concat(&zw).concat(&y))?;
                checked += 1;
                if got != expected {
                    return Ok(CheckOutcome::fail(
                        checked,
                        format!("{x}|{zw}|{y} maps to {got}, expected {expected}"),
                    ));
                }
            }
        }
    }
    Ok(CheckOutcome::pass(checked))
}

fn check_image(phi: &BlockMap, s: &ShiftSpec, t: &ShiftSpec, word_len: usize) -> Result<CheckOutcome> {
    let words = s.enumerate_words(word_len + phi.memory + phi.anticipation)?;
    for (i, w) in words.iter().enumerate() {
        let image = apply_block_map(phi, w)?;
        if !t.is_in_language(&image)? {
            return Ok(CheckOutcome::fail(i + 1, format!("{w} maps to {image}, outside the target language")));
        }
    }
    Ok(CheckOutcome::pass(words.len()))
}

/// Image of the periodic point `w^∞`, as the period starting at position 0.
fn periodic_image(phi: &BlockMap, w: &RunWord) -> Result<RunWord> {
    let n = w.len();
    let letters = w.letters();
    let span = n + phi.memory + phi.anticipation;
    let ext: Vec<Letter> = (0..span).map(|i| letters[i % n]).collect();
    let out = apply_block_map(phi, &RunWord::from_letters(&ext)?)?.letters();
    // out[j] sits at position memory + j
    let rotated: Vec<Letter> = (0..n).map(|i| out[(i + n - phi.memory % n) % n]).collect();
    RunWord::from_letters(&rotated)
}

fn check_periodic(phi: &BlockMap, s: &ShiftSpec, t: &ShiftSpec, period_bound: usize) -> Result<CheckOutcome> {
    let mut checked = 0;
    for n in 1..=period_bound {
        let mut images: HashMap<RunWord, RunWord> = HashMap::new();
        for w in s.periodic_words(n)? {
            let image = periodic_image(phi, &w)?;
            checked += 1;
            if !t.is_periodic_point(&image)? {
                return Ok(CheckOutcome::fail(checked, format!("({w})^inf maps outside the target: ({image})^inf")));
            }
            if let Some(prev) = images.insert(image.clone(), w.clone()) {
                return Ok(CheckOutcome::fail(checked, format!("({prev})^inf and ({w})^inf both map to ({image})^inf")));
            }
        }
        let target = t.periodic_points(n)?;
        if images.len() as u128 != target {
            return Ok(CheckOutcome::fail(
                checked,
                format!("period {n}: {} images but {target} target points", images.len()),
            ));
        }
    }
    Ok(CheckOutcome::pass(checked))
}

pub fn verify_conjugacy_evidence(
    phi: &BlockMap,
    s: &ShiftSpec,
    t: &ShiftSpec,
    params: EvidenceParams,
) -> Result<EvidenceReport> {
    let induction = check_induction(phi, s, t, params.core_len)?;
    let image_containment = check_image(phi, s, t, params.word_len)?;
    let periodic_points = check_periodic(phi, s, t, params.period_bound)?;
    let pi = compute_pi(phi, s, t)?;
    let pi = if pi.ok {
        CheckOutcome::pass(pi.domain.len())
    } else {
        CheckOutcome::fail(pi.domain.len(), format!("pi {:?} does not map {:?} onto {:?}", pi.pi, pi.domain, pi.target))
    };
    let all_passed = induction.passed && image_containment.passed && periodic_points.passed && pi.passed;
    Ok(EvidenceReport {
        kind: "evidence".into(),
        params,
        induction,
        image_containment,
        periodic_points,
        pi,
        all_passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(xs: &[usize]) -> SetSpec {
        SetSpec::finite(xs.to_vec()).unwrap()
    }

    fn epd(i: &[usize], d: &[usize]) -> SetSpec {
        SetSpec::eventually_periodic(i.to_vec(), d.to_vec()).unwrap()
    }

    fn pair() -> (ShiftSpec, ShiftSpec) {
        let s = ShiftSpec::ordered(vec![SetSpec::naturals(), epd(&[2], &[2]), fin(&[3, 5])]).unwrap();
        let t = ShiftSpec::ordered(vec![SetSpec::naturals(), epd(&[3], &[2]), fin(&[2, 4])]).unwrap();
        (s, t)
    }

    fn w(s: &str) -> RunWord {
        s.parse().unwrap()
    }

    /// The hand-built memory-one map: `xy -> x` if `xy = 23`, else `y`.
    fn hand_map() -> BlockMap {
        let mut entries = BTreeMap::new();
        for x in 1..=3 {
            for y in 1..=3 {
                entries.insert(format!("{x}{y}"), if (x, y) == (2, 3) { x } else { y });
            }
        }
        BlockMap::from_table(1, 0, entries)
    }

    #[test]
    fn offsets_for_example_pair() {
        let (s, t) = pair();
        assert_eq!(
            sufficient_offsets(&s, &t).unwrap(),
            OffsetCheck::Accepted { offsets: OffsetVector { d: vec![0, 1, -1] } }
        );
        assert_eq!(sufficient_offsets(&s, &s).unwrap(), OffsetCheck::Accepted { offsets: OffsetVector::zero(3) });
    }

    #[test]
    fn offsets_refuted() {
        let a = ShiftSpec::ordered(vec![fin(&[1]), SetSpec::naturals()]).unwrap();
        let b = ShiftSpec::ordered(vec![fin(&[2]), SetSpec::naturals()]).unwrap();
        assert!(matches!(
            sufficient_offsets(&a, &b).unwrap(),
            OffsetCheck::Refuted { refutation: Refutation::OffsetSum { sum: 1 }, .. }
        ));
        // same heads but the tails drift apart
        let a = ShiftSpec::ordered(vec![epd(&[1], &[2]), SetSpec::naturals()]).unwrap();
        let b = ShiftSpec::ordered(vec![epd(&[1], &[3]), SetSpec::naturals()]).unwrap();
        assert!(matches!(
            sufficient_offsets(&a, &b).unwrap(),
            OffsetCheck::Refuted { refutation: Refutation::Element { letter: 1, m: 2, .. }, .. }
        ));
        let a = ShiftSpec::ordered(vec![fin(&[1, 2]), SetSpec::naturals()]).unwrap();
        let b = ShiftSpec::ordered(vec![SetSpec::naturals(), SetSpec::naturals()]).unwrap();
        assert!(matches!(
            sufficient_offsets(&a, &b).unwrap(),
            OffsetCheck::Refuted { refutation: Refutation::MissingIndex { letter: 1, m: 3 }, .. }
        ));
    }

    #[test]
    fn spectra_and_periodic_counts() {
        let (s, t) = pair();
        assert_eq!(length_spectra_equal(&s, &t, 30).unwrap(), None);
        assert_eq!(periodic_counts_equal(&s, &t, 12).unwrap(), None);
        let a = ShiftSpec::ordered(vec![fin(&[1]), SetSpec::naturals()]).unwrap();
        let b = ShiftSpec::ordered(vec![fin(&[2]), SetSpec::naturals()]).unwrap();
        assert_eq!(length_spectra_equal(&a, &b, 10).unwrap(), Some(Mismatch { index: 2, left: 1, right: 0 }));
        let orbit = ShiftSpec::ordered(vec![fin(&[2]), fin(&[3])]).unwrap();
        assert_eq!(periodic_counts_equal(&a, &orbit, 2).unwrap(), Some(Mismatch { index: 1, left: 1, right: 0 }));
    }

    #[test]
    fn psi_examples() {
        let (s, t) = pair();
        let psi = build_psi(&s, &t, &OffsetVector { d: vec![0, 1, -1] }).unwrap();
        let img = psi.apply(&CoreBlock { exponents: vec![1, 2, 3] }).unwrap();
        assert_eq!(img.exponents, vec![1, 3, 2]);
        let img = psi.apply(&CoreBlock { exponents: vec![2, 4, 5] }).unwrap();
        assert_eq!(img.exponents, vec![2, 5, 4]);
        let id = build_psi(&s, &s, &OffsetVector::zero(3)).unwrap();
        assert_eq!(id.apply(&CoreBlock { exponents: vec![4, 6, 5] }).unwrap().exponents, vec![4, 6, 5]);
    }

    #[test]
    fn synthesized_radius() {
        let (s, t) = pair();
        let phi = synthesize_block_map(&s, &t, &OffsetVector { d: vec![0, 1, -1] }).unwrap();
        assert_eq!((phi.memory, phi.anticipation), (2, 2));
        let id = synthesize_block_map(&s, &s, &OffsetVector::zero(3)).unwrap();
        assert_eq!((id.memory, id.anticipation), (1, 1));
        assert!(matches!(
            synthesize_block_map(&s, &t, &OffsetVector { d: vec![0, 1, 0] }),
            Err(Error::InvalidOffsets(_))
        ));
    }

    #[test]
    fn synthesized_map_matches_hand_map() {
        let (s, t) = pair();
        let phi = synthesize_block_map(&s, &t, &OffsetVector { d: vec![0, 1, -1] }).unwrap();
        let period = w("122333");
        assert_eq!(periodic_image(&phi, &period).unwrap(), w("122233"));
        assert_eq!(periodic_image(&hand_map(), &period).unwrap(), w("122233"));
        let longer = w("1222223333311222333");
        assert_eq!(periodic_image(&phi, &longer).unwrap(), periodic_image(&hand_map(), &longer).unwrap());
    }

    #[test]
    fn apply_examples() {
        assert_eq!(apply_block_map(&hand_map(), &w("3122333122")).unwrap(), w("122233122"));
        let id = BlockMap::identity(3);
        assert_eq!(apply_block_map(&id, &w("1223")).unwrap(), w("1223"));
        let (s, t) = pair();
        let phi = synthesize_block_map(&s, &t, &OffsetVector { d: vec![0, 1, -1] }).unwrap();
        assert_eq!(apply_block_map(&phi, &w("1122333")).unwrap().len(), 3);
        assert_eq!(apply_block_map(&phi, &w("12")), Err(Error::WordTooShort { len: 2, window: 5 }));
    }

    #[test]
    fn pi_examples() {
        let (s, t) = pair();
        let phi = synthesize_block_map(&s, &t, &OffsetVector { d: vec![0, 1, -1] }).unwrap();
        let pi = compute_pi(&phi, &s, &t).unwrap();
        assert!(pi.ok);
        assert_eq!(pi.domain, vec![1, 2]);
        let id = compute_pi(&BlockMap::identity(3), &s, &s).unwrap();
        assert!(id.ok && id.pi.iter().all(|(a, b)| a == b));
        let mut entries: BTreeMap<String, Letter> = (1..=3).map(|a: Letter| (a.to_string(), a)).collect();
        entries.insert("2".into(), 3);
        let bad = compute_pi(&BlockMap::from_table(0, 0, entries), &s, &s).unwrap();
        assert!(!bad.ok);
    }

    #[test]
    fn evidence_for_example_pair() {
        let (s, t) = pair();
        let phi = synthesize_block_map(&s, &t, &OffsetVector { d: vec![0, 1, -1] }).unwrap();
        let params = EvidenceParams { word_len: 10, period_bound: 10, core_len: 20 };
        let report = verify_conjugacy_evidence(&phi, &s, &t, params).unwrap();
        assert!(report.all_passed, "{report:?}");
        let id = verify_conjugacy_evidence(&BlockMap::identity(3), &s, &s, params).unwrap();
        assert!(id.all_passed, "{id:?}");
        let wrong = verify_conjugacy_evidence(&phi, &s, &s, params).unwrap();
        assert!(!wrong.image_containment.passed);
    }
}
