use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::Letter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Run {
    pub letter: Letter,
    pub len: usize,
}

/// A finite word stored as maximal runs. The empty word has no runs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RunWord {
    runs: Vec<Run>,
}

impl RunWord {
    pub fn empty() -> Self {
        RunWord { runs: Vec::new() }
    }

    pub fn from_letters(letters: &[Letter]) -> Result<Self> {
        let mut w = RunWord::empty();
        for &a in letters {
            w.push(a)?;
        }
        Ok(w)
    }

    /// Builds from `(letter, length)` pairs; adjacent pairs must differ in letter.
    pub fn from_runs(pairs: &[(Letter, usize)]) -> Result<Self> {
        let mut runs = Vec::with_capacity(pairs.len());
        for &(letter, len) in pairs {
            if letter == 0 {
                return Err(Error::InvalidWord("letters start at 1".into()));
            }
            if len == 0 {
                return Err(Error::InvalidWord("run lengths must be positive".into()));
            }
            if runs.last().is_some_and(|r: &Run| r.letter == letter) {
                return Err(Error::InvalidWord("adjacent runs must use different letters".into()));
            }
            runs.push(Run { letter, len });
        }
        Ok(RunWord { runs })
    }

    pub fn push(&mut self, letter: Letter) -> Result<()> {
        self.push_run(letter, 1)
    }

    pub fn push_run(&mut self, letter: Letter, len: usize) -> Result<()> {
        if letter == 0 {
            return Err(Error::InvalidWord("letters start at 1".into()));
        }
        if len == 0 {
            return Ok(());
        }
        match self.runs.last_mut() {
            Some(r) if r.letter == letter => r.len += len,
            _ => self.runs.push(Run { letter, len }),
        }
        Ok(())
    }

    pub fn concat(&self, other: &RunWord) -> RunWord {
        let mut w = self.clone();
        for r in &other.runs {
            w.push_run(r.letter, r.len).expect("valid runs");
        }
        w
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn len(&self) -> usize {
        self.runs.iter().map(|r| r.len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(self.len());
        for r in &self.runs {
            out.extend(std::iter::repeat_n(r.letter, r.len));
        }
        out
    }

    pub fn max_letter(&self) -> Letter {
        self.runs.iter().map(|r| r.letter).max().unwrap_or(0)
    }

    /// Letters `start..end` as a new word.
    pub fn slice(&self, start: usize, end: usize) -> RunWord {
        let mut out = RunWord::empty();
        let mut pos = 0;
        for r in &self.runs {
            let (lo, hi) = (pos.max(start), (pos + r.len).min(end));
            if lo < hi {
                out.push_run(r.letter, hi - lo).expect("valid runs");
            }
            pos += r.len;
        }
        out
    }

    /// Run-length form, e.g. `1^1 2^2 1^1`.
    pub fn to_run_string(&self) -> String {
        self.runs.iter().map(|r| format!("{}^{}", r.letter, r.len)).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for RunWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.max_letter() <= 9 {
            for r in &self.runs {
                for _ in 0..r.len {
                    write!(f, "{}", r.letter)?;
                }
            }
            Ok(())
        } else {
            f.write_str(&self.to_run_string())
        }
    }
}

impl FromStr for RunWord {
    type Err = Error;

    /// Accepts flat digit strings (`1221`) and run form (`1^1 2^2 1^1`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(RunWord::empty());
        }
        let mut w = RunWord::empty();
        if !s.contains('^') && !s.contains(char::is_whitespace) {
            for c in s.chars() {
                let d = c
                    .to_digit(10)
                    .ok_or_else(|| Error::InvalidWord(format!("unexpected character {c:?}")))?;
                w.push(d)?;
            }
            return Ok(w);
        }
        for tok in s.split_whitespace() {
            let (l, n) = match tok.split_once('^') {
                Some((l, n)) => (l, n),
                None => (tok, "1"),
            };
            let letter: Letter =
                l.parse().map_err(|_| Error::InvalidWord(format!("bad letter in {tok:?}")))?;
            let len: usize =
                n.parse().map_err(|_| Error::InvalidWord(format!("bad run length in {tok:?}")))?;
            if len == 0 {
                return Err(Error::InvalidWord(format!("zero run length in {tok:?}")));
            }
            w.push_run(letter, len)?;
        }
        Ok(w)
    }
}

impl Serialize for RunWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RunWord {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
