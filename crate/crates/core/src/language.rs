//! Words of an S-limited shift.
//!
//! A finite word belongs to the language when it occurs in some point of the
//! shift. Interior runs are pinned to the allowed lengths exactly; the first
//! and last runs may be cut, so they only need to fit inside some allowed
//! length. The ordered variant also forces runs to follow `1 -> 2 -> ... -> p -> 1`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets::{Membership, SetSpec};
use crate::word::{Run, RunWord};
use crate::Letter;

/// Default largest word length accepted by [`ShiftSpec::enumerate_words`].
pub const ENUMERATION_CAP: usize = 24;

/// Largest connector length searched by [`ShiftSpec::find_connector`].
pub const CONNECTOR_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Ordered,
    Generalized,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShiftSpec {
    sets: Vec<SetSpec>,
    variant: Variant,
}

/// A block `1^m1 2^m2 ... p^mp` with every `m_i` allowed for letter `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CoreBlock {
    pub exponents: Vec<usize>,
}

impl CoreBlock {
    pub fn len(&self) -> usize {
        self.exponents.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_word(&self) -> RunWord {
        let pairs: Vec<(Letter, usize)> =
            self.exponents.iter().enumerate().map(|(i, &m)| (i as Letter + 1, m)).collect();
        RunWord::from_runs(&pairs).expect("block exponents are positive")
    }
}

/// Number of core blocks of each total length, `counts[l]` for `l <= truncation`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreLengthSpectrum {
    pub truncation: usize,
    pub counts: Vec<u128>,
}

impl CoreLengthSpectrum {
    pub fn count(&self, l: usize) -> u128 {
        self.counts.get(l).copied().unwrap_or(0)
    }

    /// Lengths with at least one block.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(l, _)| l)
    }
}

/// `w = prefix · core · suffix`, the core split into whole blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub prefix: RunWord,
    pub core: RunWord,
    pub core_blocks: Vec<CoreBlock>,
    pub suffix: RunWord,
}

/// State of a valid word as seen from its right end: everything needed to
/// decide whether one more letter keeps it valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Cursor {
    letter: Letter,
    len: usize,
    /// The last run is also the first, so it may have been cut on the left.
    open: bool,
}

impl ShiftSpec {
    pub fn new(sets: Vec<SetSpec>, variant: Variant) -> Result<Self> {
        if sets.len() < 2 {
            return Err(Error::InvalidShift(format!(
                "alphabet size must be at least 2, got {}",
                sets.len()
            )));
        }
        for s in &sets {
            s.validate()?;
        }
        Ok(ShiftSpec { sets, variant })
    }

    pub fn ordered(sets: Vec<SetSpec>) -> Result<Self> {
        Self::new(sets, Variant::Ordered)
    }

    pub fn generalized(sets: Vec<SetSpec>) -> Result<Self> {
        Self::new(sets, Variant::Generalized)
    }

    pub fn p(&self) -> usize {
        self.sets.len()
    }

    pub fn sets(&self) -> &[SetSpec] {
        &self.sets
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// The set attached to `letter` (1-based).
    pub fn set(&self, letter: Letter) -> &SetSpec {
        &self.sets[letter as usize - 1]
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        1..=self.p() as Letter
    }

    pub fn next_letter(&self, a: Letter) -> Letter {
        if a as usize == self.p() {
            1
        } else {
            a + 1
        }
    }

    /// Whether a run of `b` may directly follow a run of `a`.
    pub fn may_follow(&self, a: Letter, b: Letter) -> bool {
        match self.variant {
            Variant::Ordered => b == self.next_letter(a),
            Variant::Generalized => a != b,
        }
    }

    pub fn has_bounded_sets(&self) -> bool {
        self.sets.iter().any(|s| !s.is_closed_form())
    }

    pub(crate) fn require_ordered(&self) -> Result<()> {
        match self.variant {
            Variant::Ordered => Ok(()),
            Variant::Generalized => Err(Error::VariantMismatch { expected: "ordered" }),
        }
    }

    pub(crate) fn exact(&self, letter: Letter, n: usize) -> Result<bool> {
        match self.set(letter).contains(n) {
            Membership::Yes => Ok(true),
            Membership::No => Ok(false),
            Membership::Unknown => Err(Error::UnknownMembership { letter, n }),
        }
    }

    pub(crate) fn extendable(&self, letter: Letter, n: usize) -> Result<bool> {
        match self.set(letter).has_member_at_least(n) {
            Membership::Yes => Ok(true),
            Membership::No => Ok(false),
            Membership::Unknown => Err(Error::UnknownMembership { letter, n }),
        }
    }

    fn check_letters(&self, w: &RunWord) -> Result<()> {
        match w.runs().iter().find(|r| r.letter as usize > self.p()) {
            Some(r) => Err(Error::InvalidWord(format!(
                "letter {} outside alphabet 1..{}",
                r.letter,
                self.p()
            ))),
            None => Ok(()),
        }
    }

    pub fn is_in_language(&self, w: &RunWord) -> Result<bool> {
        if w.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        self.check_letters(w)?;
        let runs = w.runs();
        if runs.windows(2).any(|pair| !self.may_follow(pair[0].letter, pair[1].letter)) {
            return Ok(false);
        }
        // A definite failure anywhere wins over an unknown elsewhere.
        let mut unknown = None;
        let last = runs.len() - 1;
        for (i, r) in runs.iter().enumerate() {
            let verdict = if i == 0 || i == last {
                self.extendable(r.letter, r.len)
            } else {
                self.exact(r.letter, r.len)
            };
            match verdict {
                Ok(true) => {}
                Ok(false) => return Ok(false),
                Err(e) => unknown = unknown.or(Some(e)),
            }
        }
        match unknown {
            Some(e) => Err(e),
            None => Ok(true),
        }
    }

    pub(crate) fn cursor_start(&self, a: Letter) -> Result<Option<Cursor>> {
        Ok(self.extendable(a, 1)?.then_some(Cursor { letter: a, len: 1, open: true }))
    }

    pub(crate) fn cursor_push(&self, c: Cursor, b: Letter) -> Result<Option<Cursor>> {
        if b == c.letter {
            return Ok(self.extendable(b, c.len + 1)?.then_some(Cursor { len: c.len + 1, ..c }));
        }
        if !self.may_follow(c.letter, b) {
            return Ok(None);
        }
        if !c.open && !self.exact(c.letter, c.len)? {
            return Ok(None);
        }
        Ok(self.extendable(b, 1)?.then_some(Cursor { letter: b, len: 1, open: false }))
    }

    fn cursor_of(&self, w: &RunWord) -> Result<Option<Cursor>> {
        let letters = w.letters();
        let Some((&first, rest)) = letters.split_first() else {
            return Ok(None);
        };
        let mut cur = match self.cursor_start(first)? {
            Some(c) => c,
            None => return Ok(None),
        };
        for &b in rest {
            cur = match self.cursor_push(cur, b)? {
                Some(c) => c,
                None => return Ok(None),
            };
        }
        Ok(Some(cur))
    }

    /// `|B_n|` by dynamic programming over (letter, run length, first run open).
    pub fn count_words(&self, n: usize) -> Result<u128> {
        if n == 0 {
            return Err(Error::InvalidWord("word length must be positive".into()));
        }
        let p = self.p();
        // table[open][letter - 1][len]
        let fresh = || vec![vec![vec![0u128; n + 2]; p]; 2];
        let mut cur = fresh();
        for a in self.letters() {
            if self.extendable(a, 1)? {
                cur[1][a as usize - 1][1] = 1;
            }
        }
        for _ in 1..n {
            let mut next = fresh();
            for open in 0..2 {
                for a in self.letters() {
                    for len in 1..=n {
                        let c = cur[open][a as usize - 1][len];
                        if c == 0 {
                            continue;
                        }
                        if self.extendable(a, len + 1)? {
                            next[open][a as usize - 1][len + 1] += c;
                        }
                        if open == 0 && !self.exact(a, len)? {
                            continue;
                        }
                        for b in self.letters() {
                            if self.may_follow(a, b) {
                                next[0][b as usize - 1][1] += c;
                            }
                        }
                    }
                }
            }
            cur = next;
        }
        Ok(cur.iter().flatten().flatten().sum())
    }

    /// All of `B_n` in lexicographic order; `n` may not exceed [`ENUMERATION_CAP`].
    pub fn enumerate_words(&self, n: usize) -> Result<Vec<RunWord>> {
        self.enumerate_words_capped(n, ENUMERATION_CAP)
    }

    pub fn enumerate_words_capped(&self, n: usize, cap: usize) -> Result<Vec<RunWord>> {
        if n == 0 {
            return Err(Error::InvalidWord("word length must be positive".into()));
        }
        if n > cap {
            return Err(Error::EnumerationCap { requested: n, cap });
        }
        let mut out = Vec::new();
        let mut buf = Vec::with_capacity(n);
        for a in self.letters() {
            if let Some(c) = self.cursor_start(a)? {
                buf.push(a);
                self.extend_words(c, n, &mut buf, &mut out)?;
                buf.pop();
            }
        }
        Ok(out)
    }

    fn extend_words(&self, c: Cursor, n: usize, buf: &mut Vec<Letter>, out: &mut Vec<RunWord>) -> Result<()> {
        if buf.len() == n {
            out.push(RunWord::from_letters(buf)?);
            return Ok(());
        }
        for b in self.letters() {
            if let Some(nc) = self.cursor_push(c, b)? {
                buf.push(b);
                self.extend_words(nc, n, buf, out)?;
                buf.pop();
            }
        }
        Ok(())
    }

    /// Some `xi` of length exactly `n` with `u xi v` in the language, the
    /// lexicographically smallest one if several exist.
    pub fn find_connector(&self, u: &RunWord, v: &RunWord, n: usize) -> Result<Option<RunWord>> {
        for w in [u, v] {
            if !self.is_in_language(w)? {
                return Err(Error::WordNotInLanguage(w.to_string()));
            }
        }
        if n > CONNECTOR_CAP {
            return Err(Error::EnumerationCap { requested: n, cap: CONNECTOR_CAP });
        }
        let start = self.cursor_of(u)?.expect("u is in the language");
        let tail = v.letters();
        let mut path = Vec::with_capacity(n);
        let mut dead = HashSet::new();
        if self.connect(start, n, &tail, &mut path, &mut dead)? {
            Ok(Some(RunWord::from_letters(&path)?))
        } else {
            Ok(None)
        }
    }

    fn connect(
        &self,
        c: Cursor,
        remaining: usize,
        tail: &[Letter],
        path: &mut Vec<Letter>,
        dead: &mut HashSet<(Cursor, usize)>,
    ) -> Result<bool> {
        if remaining == 0 {
            let mut cur = c;
            for &b in tail {
                match self.cursor_push(cur, b)? {
                    Some(nc) => cur = nc,
                    None => return Ok(false),
                }
            }
            return Ok(true);
        }
        if dead.contains(&(c, remaining)) {
            return Ok(false);
        }
        for b in self.letters() {
            if let Some(nc) = self.cursor_push(c, b)? {
                path.push(b);
                if self.connect(nc, remaining - 1, tail, path, dead)? {
                    return Ok(true);
                }
                path.pop();
            }
        }
        dead.insert((c, remaining));
        Ok(false)
    }

    fn infinitude(&self, letter: Letter) -> Result<bool> {
        self.set(letter).is_infinite().ok_or(Error::InfinitudeUnknown { letter })
    }

    /// Whether the periodic point `w^∞` lies in the shift.
    pub fn is_periodic_point(&self, w: &RunWord) -> Result<bool> {
        if w.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        self.check_letters(w)?;
        let runs = w.runs();
        if runs.len() == 1 {
            return self.infinitude(runs[0].letter);
        }
        let mut cyclic: Vec<Run> = runs.to_vec();
        if cyclic[0].letter == cyclic[cyclic.len() - 1].letter {
            let last = cyclic.pop().unwrap();
            cyclic[0].len += last.len;
        }
        let k = cyclic.len();
        for i in 0..k {
            if !self.may_follow(cyclic[i].letter, cyclic[(i + 1) % k].letter) {
                return Ok(false);
            }
        }
        for r in &cyclic {
            if !self.exact(r.letter, r.len)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Number of points fixed by the `n`-th power of the shift map.
    pub fn periodic_points(&self, n: usize) -> Result<u128> {
        if n == 0 {
            return Err(Error::InvalidWord("period must be positive".into()));
        }
        let p = self.p();
        let mut constants = 0u128;
        for a in self.letters() {
            if self.infinitude(a)? {
                constants += 1;
            }
        }
        let mut member = vec![vec![false; n + 1]; p];
        for a in self.letters() {
            for (len, slot) in member[a as usize - 1].iter_mut().enumerate().skip(1) {
                *slot = self.exact(a, len)?;
            }
        }
        // A non-constant periodic word is a rotation of a word whose first run
        // starts at position 0; the rotation offset ranges over that first run.
        let mut total = 0u128;
        for a in self.letters() {
            let mut f = vec![vec![0u128; p]; n + 1];
            for first in 1..n {
                if member[a as usize - 1][first] {
                    f[first][a as usize - 1] += first as u128;
                }
            }
            for pos in 1..n {
                for c in self.letters() {
                    let ways = f[pos][c as usize - 1];
                    if ways == 0 {
                        continue;
                    }
                    for j in self.letters().filter(|&j| self.may_follow(c, j)) {
                        for len in 1..=n - pos {
                            if member[j as usize - 1][len] {
                                f[pos + len][j as usize - 1] += ways;
                            }
                        }
                    }
                }
            }
            total += self
                .letters()
                .filter(|&b| self.may_follow(b, a))
                .map(|b| f[n][b as usize - 1])
                .sum::<u128>();
        }
        Ok(total + constants)
    }

    /// The words `w` of length `n` with `w^∞` in the shift.
    pub fn periodic_words(&self, n: usize) -> Result<Vec<RunWord>> {
        let mut out = Vec::new();
        for w in self.enumerate_words(n)? {
            if self.is_periodic_point(&w)? {
                out.push(w);
            }
        }
        Ok(out)
    }

    fn block_candidates(&self, max_len: usize) -> Result<Option<Vec<Vec<usize>>>> {
        let mins: Vec<usize> = self.sets.iter().map(SetSpec::min_element).collect();
        let total_min: usize = mins.iter().sum();
        if total_min > max_len {
            return Ok(None);
        }
        let mut out = Vec::with_capacity(self.p());
        for (i, s) in self.sets.iter().enumerate() {
            let limit = max_len - (total_min - mins[i]);
            let xs = s.enumerate_up_to(limit).map_err(|e| match e {
                Error::BoundBreached { limit, .. } => {
                    Error::UnknownMembership { letter: i as Letter + 1, n: limit }
                }
                other => other,
            })?;
            out.push(xs);
        }
        Ok(Some(out))
    }

    /// Every core block of length at most `max_len`, sorted by (length, exponents).
    pub fn core_blocks_up_to(&self, max_len: usize) -> Result<Vec<CoreBlock>> {
        self.require_ordered()?;
        let Some(cands) = self.block_candidates(max_len)? else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(self.p());
        fn rec(cands: &[Vec<usize>], budget: usize, cur: &mut Vec<usize>, out: &mut Vec<CoreBlock>) {
            let i = cur.len();
            if i == cands.len() {
                out.push(CoreBlock { exponents: cur.clone() });
                return;
            }
            let rest_min: usize = cands[i + 1..].iter().map(|c| c[0]).sum();
            for &m in &cands[i] {
                if m + rest_min > budget {
                    break;
                }
                cur.push(m);
                rec(cands, budget - m, cur, out);
                cur.pop();
            }
        }
        rec(&cands, max_len, &mut cur, &mut out);
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.exponents.cmp(&b.exponents)));
        Ok(out)
    }

    /// Block counts per length, by convolving the sets' indicator sequences.
    pub fn length_spectrum(&self, max_len: usize) -> Result<CoreLengthSpectrum> {
        self.require_ordered()?;
        let mut counts = vec![0u128; max_len + 1];
        if let Some(cands) = self.block_candidates(max_len)? {
            counts[0] = 1;
            for set in &cands {
                let mut next = vec![0u128; max_len + 1];
                for (l, &c) in counts.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for &m in set {
                        if l + m > max_len {
                            break;
                        }
                        next[l + m] += c;
                    }
                }
                counts = next;
            }
        }
        Ok(CoreLengthSpectrum { truncation: max_len, counts })
    }

    /// Runs climb by one letter at a time with no wrap, and runs strictly
    /// between the first and last are allowed lengths.
    fn climbs_within_block(&self, w: &RunWord) -> Result<bool> {
        let runs = w.runs();
        if runs.windows(2).any(|pair| pair[1].letter != pair[0].letter + 1) {
            return Ok(false);
        }
        for r in runs.iter().skip(1).take(runs.len().saturating_sub(2)) {
            if !self.exact(r.letter, r.len)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Membership in the prefix family: the tail `l^n (l+1)^s ... p^s` of a
    /// block, whose first run may have any length.
    pub fn is_prefix_part(&self, w: &RunWord) -> Result<bool> {
        self.require_ordered()?;
        let runs = w.runs();
        let Some(last) = runs.last() else {
            return Ok(false);
        };
        if last.letter as usize != self.p() || !self.climbs_within_block(w)? {
            return Ok(false);
        }
        if runs.len() > 1 && !self.exact(last.letter, last.len)? {
            return Ok(false);
        }
        Ok(true)
    }

    /// Membership in the suffix family: a piece of a single block that does
    /// not wrap past `p`; inner runs are allowed lengths and the two ends may
    /// be cut. Block heads `1^s ... k^n` are the main case.
    pub fn is_suffix_part(&self, w: &RunWord) -> Result<bool> {
        self.require_ordered()?;
        if w.is_empty() {
            return Ok(false);
        }
        self.climbs_within_block(w)
    }

    /// Whether `w` is a (possibly empty) concatenation of core blocks.
    pub fn is_core_concat(&self, w: &RunWord) -> Result<bool> {
        Ok(self.split_core(w)?.is_some())
    }

    fn split_core(&self, w: &RunWord) -> Result<Option<Vec<CoreBlock>>> {
        self.require_ordered()?;
        let runs = w.runs();
        let p = self.p();
        if !runs.len().is_multiple_of(p) {
            return Ok(None);
        }
        let mut blocks = Vec::with_capacity(runs.len() / p);
        for chunk in runs.chunks(p) {
            for (i, r) in chunk.iter().enumerate() {
                if r.letter as usize != i + 1 || !self.exact(r.letter, r.len)? {
                    return Ok(None);
                }
            }
            blocks.push(CoreBlock { exponents: chunk.iter().map(|r| r.len).collect() });
        }
        Ok(Some(blocks))
    }

    /// Splits `w` into prefix, whole blocks and suffix, choosing the shortest
    /// prefix and then the longest run of whole blocks.
    pub fn decompose(&self, w: &RunWord) -> Result<Decomposition> {
        self.require_ordered()?;
        if !self.is_in_language(w)? {
            return Err(Error::WordNotInLanguage(w.to_string()));
        }
        let n = w.len();
        for i in 0..=n {
            let prefix = w.slice(0, i);
            if i > 0 && !self.is_prefix_part(&prefix)? {
                continue;
            }
            for j in (i..=n).rev() {
                let suffix = w.slice(j, n);
                if j < n && !self.is_suffix_part(&suffix)? {
                    continue;
                }
                let core = w.slice(i, j);
                if let Some(core_blocks) = self.split_core(&core)? {
                    return Ok(Decomposition { prefix, core, core_blocks, suffix });
                }
            }
        }
        Err(Error::InvalidWord(format!("{w} has no prefix/core/suffix factorization")))
    }

    /// Number of length-`n` words in the language that belong to the prefix family.
    pub fn count_prefix_parts(&self, n: usize) -> Result<u128> {
        self.require_ordered()?;
        let p = self.p();
        let mut total = 0u128;
        for l in 1..=p {
            for first in 1..=n {
                if !self.extendable(l as Letter, first)? {
                    break;
                }
                let rest = n - first;
                if rest == 0 {
                    // a lone run counts only when it is already the last letter
                    total += u128::from(l == p);
                    continue;
                }
                // exact compositions of `rest` by the sets of letters l+1..=p
                let mut ways = vec![0u128; rest + 1];
                ways[0] = 1;
                for letter in l + 1..=p {
                    let mut next = vec![0u128; rest + 1];
                    for (used, &c) in ways.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        for len in 1..=rest - used {
                            if self.exact(letter as Letter, len)? {
                                next[used + len] += c;
                            }
                        }
                    }
                    ways = next;
                }
                if l < p {
                    total += ways[rest];
                }
            }
        }
        Ok(total)
    }
}
