//! Finitely describable subsets of the positive integers.
//!
//! Each letter of a shift carries one of these sets; it lists the run lengths
//! the letter may take inside a block. Four encodings are supported: finite
//! lists, cofinite sets (everything except a finite list), sets whose gap
//! sequence is eventually periodic, and explicit lists that are only known up
//! to a declared bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Three-valued answer for membership questions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Membership {
    Yes,
    No,
    Unknown,
}

impl Membership {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Membership::Yes
        } else {
            Membership::No
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SetSpec {
    /// A nonempty finite set, listed in increasing order.
    Finite { elements: Vec<usize> },
    /// All positive integers except `excluded`.
    Cofinite { excluded: Vec<usize> },
    /// `initial`, then continuing from its last element by cycling `diffs`.
    EventuallyPeriodic { initial: Vec<usize>, diffs: Vec<usize> },
    /// Exactly `elements` below or at `bound`; nothing known above it.
    BoundedExplicit { elements: Vec<usize>, bound: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum SetClass {
    Finite,
    Cofinite,
    EventuallyPeriodicDelta,
    Unknown,
}

/// Minimum element followed by consecutive differences, with an optional
/// repeating cycle for the tail.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaSequence {
    pub head: Vec<usize>,
    pub eventual_period: Option<Vec<usize>>,
}

impl DeltaSequence {
    /// Partial sums of the head, then of the repeating cycle, stopping past `limit`.
    pub fn members_up_to(&self, limit: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut acc = 0usize;
        for &d in &self.head {
            acc += d;
            if acc > limit {
                return out;
            }
            out.push(acc);
        }
        if let Some(cycle) = &self.eventual_period {
            'outer: loop {
                for &d in cycle {
                    acc += d;
                    if acc > limit {
                        break 'outer;
                    }
                    out.push(acc);
                }
            }
        }
        out
    }
}

fn check_increasing(what: &str, xs: &[usize]) -> Result<()> {
    if xs.contains(&0) {
        return Err(Error::InvalidSet(format!("{what} must be positive integers")));
    }
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidSet(format!("{what} must be strictly increasing")));
    }
    Ok(())
}

impl SetSpec {
    pub fn finite(elements: Vec<usize>) -> Result<Self> {
        let s = SetSpec::Finite { elements };
        s.validate()?;
        Ok(s)
    }

    pub fn cofinite(excluded: Vec<usize>) -> Result<Self> {
        let s = SetSpec::Cofinite { excluded };
        s.validate()?;
        Ok(s)
    }

    /// The full set of positive integers.
    pub fn naturals() -> Self {
        SetSpec::Cofinite { excluded: Vec::new() }
    }

    pub fn eventually_periodic(initial: Vec<usize>, diffs: Vec<usize>) -> Result<Self> {
        let s = SetSpec::EventuallyPeriodic { initial, diffs };
        s.validate()?;
        Ok(s)
    }

    pub fn bounded_explicit(elements: Vec<usize>, bound: usize) -> Result<Self> {
        let s = SetSpec::BoundedExplicit { elements, bound };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            SetSpec::Finite { elements } => {
                if elements.is_empty() {
                    return Err(Error::InvalidSet("finite set must be nonempty".into()));
                }
                check_increasing("elements", elements)
            }
            SetSpec::Cofinite { excluded } => check_increasing("excluded elements", excluded),
            SetSpec::EventuallyPeriodic { initial, diffs } => {
                if initial.is_empty() {
                    return Err(Error::InvalidSet("initial list must be nonempty".into()));
                }
                if diffs.is_empty() {
                    return Err(Error::InvalidSet("difference cycle must be nonempty".into()));
                }
                if diffs.contains(&0) {
                    return Err(Error::InvalidSet("differences must be positive".into()));
                }
                check_increasing("initial elements", initial)
            }
            SetSpec::BoundedExplicit { elements, bound } => {
                if elements.is_empty() {
                    return Err(Error::InvalidSet("explicit set must be nonempty".into()));
                }
                check_increasing("elements", elements)?;
                if *bound < *elements.last().unwrap() {
                    return Err(Error::InvalidSet(format!(
                        "bound {bound} is below the largest listed element"
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn is_closed_form(&self) -> bool {
        !matches!(self, SetSpec::BoundedExplicit { .. })
    }

    /// `(h, period)` such that `h` is a member and, for every `n >= h`,
    /// `n` is a member iff `n + period` is. `period == 0` means nothing lies
    /// above `h`. `None` for bounded sets.
    pub fn periodic_form(&self) -> Option<(usize, usize)> {
        match self {
            SetSpec::Finite { elements } => Some((*elements.last().unwrap(), 0)),
            SetSpec::Cofinite { excluded } => {
                let h = excluded.last().map_or(1, |&e| e + 1);
                Some((h, 1))
            }
            SetSpec::EventuallyPeriodic { initial, diffs } => {
                Some((*initial.last().unwrap(), diffs.iter().sum()))
            }
            SetSpec::BoundedExplicit { .. } => None,
        }
    }

    pub fn contains(&self, n: usize) -> Membership {
        if n == 0 {
            return Membership::No;
        }
        match self {
            SetSpec::Finite { elements } => Membership::from_bool(elements.binary_search(&n).is_ok()),
            SetSpec::Cofinite { excluded } => Membership::from_bool(excluded.binary_search(&n).is_err()),
            SetSpec::EventuallyPeriodic { initial, diffs } => {
                let h = *initial.last().unwrap();
                if n <= h {
                    return Membership::from_bool(initial.binary_search(&n).is_ok());
                }
                let period: usize = diffs.iter().sum();
                let r = (n - h) % period;
                let mut acc = 0;
                for &d in diffs {
                    if acc == r {
                        return Membership::Yes;
                    }
                    acc += d;
                }
                Membership::No
            }
            SetSpec::BoundedExplicit { elements, bound } => {
                if n > *bound {
                    Membership::Unknown
                } else {
                    Membership::from_bool(elements.binary_search(&n).is_ok())
                }
            }
        }
    }

    /// Whether some member is at least `n`.
    pub fn has_member_at_least(&self, n: usize) -> Membership {
        match self {
            SetSpec::Finite { elements } => Membership::from_bool(n <= *elements.last().unwrap()),
            SetSpec::Cofinite { .. } | SetSpec::EventuallyPeriodic { .. } => Membership::Yes,
            SetSpec::BoundedExplicit { elements, .. } => {
                if n <= *elements.last().unwrap() {
                    Membership::Yes
                } else {
                    Membership::Unknown
                }
            }
        }
    }

    pub fn is_infinite(&self) -> Option<bool> {
        match self {
            SetSpec::Finite { .. } => Some(false),
            SetSpec::Cofinite { .. } | SetSpec::EventuallyPeriodic { .. } => Some(true),
            SetSpec::BoundedExplicit { .. } => None,
        }
    }

    /// Cardinality when the set is known to be finite.
    pub fn finite_len(&self) -> Option<usize> {
        match self {
            SetSpec::Finite { elements } => Some(elements.len()),
            _ => None,
        }
    }

    pub fn min_element(&self) -> usize {
        match self {
            SetSpec::Finite { elements } | SetSpec::BoundedExplicit { elements, .. } => elements[0],
            SetSpec::EventuallyPeriodic { initial, .. } => initial[0],
            SetSpec::Cofinite { excluded } => {
                let mut m = 1;
                for &e in excluded {
                    if e == m {
                        m += 1;
                    } else {
                        break;
                    }
                }
                m
            }
        }
    }

    pub fn is_singleton(&self) -> bool {
        matches!(self, SetSpec::Finite { elements } if elements.len() == 1)
    }

    pub fn enumerate_up_to(&self, limit: usize) -> Result<Vec<usize>> {
        match self {
            SetSpec::Finite { elements } => Ok(elements.iter().copied().take_while(|&x| x <= limit).collect()),
            SetSpec::Cofinite { excluded } => {
                Ok((1..=limit).filter(|n| excluded.binary_search(n).is_err()).collect())
            }
            SetSpec::EventuallyPeriodic { initial, diffs } => {
                let mut out: Vec<usize> = initial.iter().copied().take_while(|&x| x <= limit).collect();
                if out.len() == initial.len() {
                    let mut acc = *initial.last().unwrap();
                    'outer: loop {
                        for &d in diffs {
                            acc += d;
                            if acc > limit {
                                break 'outer;
                            }
                            out.push(acc);
                        }
                    }
                }
                Ok(out)
            }
            SetSpec::BoundedExplicit { elements, bound } => {
                if limit > *bound {
                    return Err(Error::BoundBreached { limit, bound: *bound });
                }
                Ok(elements.iter().copied().take_while(|&x| x <= limit).collect())
            }
        }
    }

    /// The `m`-th smallest member, counting from 1.
    pub fn nth_element(&self, m: usize) -> Result<usize> {
        if m == 0 {
            return Err(Error::IndexBeyondSet { index: 0, size: 0 });
        }
        match self {
            SetSpec::Finite { elements } | SetSpec::BoundedExplicit { elements, .. } => elements
                .get(m - 1)
                .copied()
                .ok_or(Error::IndexBeyondSet { index: m, size: elements.len() }),
            SetSpec::Cofinite { excluded } => {
                let mut candidate = m;
                for &e in excluded {
                    if e <= candidate {
                        candidate += 1;
                    } else {
                        break;
                    }
                }
                Ok(candidate)
            }
            SetSpec::EventuallyPeriodic { initial, diffs } => {
                if m <= initial.len() {
                    return Ok(initial[m - 1]);
                }
                let k = m - initial.len() - 1;
                let period: usize = diffs.iter().sum();
                let (q, j) = (k / diffs.len(), k % diffs.len());
                let partial: usize = diffs[..=j].iter().sum();
                Ok(initial.last().unwrap() + q * period + partial)
            }
        }
    }

    /// Zero-based rank of `n` among the members, if `n` is a member.
    pub fn index_of(&self, n: usize) -> Option<usize> {
        if self.contains(n) != Membership::Yes {
            return None;
        }
        match self {
            SetSpec::Finite { elements } | SetSpec::BoundedExplicit { elements, .. } => {
                elements.binary_search(&n).ok()
            }
            SetSpec::Cofinite { excluded } => Some(n - 1 - excluded.partition_point(|&e| e < n)),
            SetSpec::EventuallyPeriodic { initial, diffs } => {
                if let Ok(i) = initial.binary_search(&n) {
                    return Some(i);
                }
                let h = *initial.last().unwrap();
                let period: usize = diffs.iter().sum();
                let q = (n - h - 1) / period;
                let mut acc = h + q * period;
                for (j, &d) in diffs.iter().enumerate() {
                    acc += d;
                    if acc == n {
                        return Some(initial.len() + q * diffs.len() + j);
                    }
                }
                None
            }
        }
    }

    /// The first `n` members (fewer if the set is smaller). For bounded sets
    /// only the listed members are used.
    pub fn first_n(&self, n: usize) -> Vec<usize> {
        match self {
            SetSpec::Finite { elements } | SetSpec::BoundedExplicit { elements, .. } => {
                elements.iter().copied().take(n).collect()
            }
            _ => (1..=n).map(|m| self.nth_element(m).expect("infinite set")).collect(),
        }
    }

    pub fn delta_sequence(&self) -> DeltaSequence {
        fn diffs_of(xs: &[usize]) -> Vec<usize> {
            let mut head = Vec::with_capacity(xs.len());
            let mut prev = 0;
            for &x in xs {
                head.push(x - prev);
                prev = x;
            }
            head
        }
        match self {
            SetSpec::Finite { elements } | SetSpec::BoundedExplicit { elements, .. } => {
                DeltaSequence { head: diffs_of(elements), eventual_period: None }
            }
            SetSpec::Cofinite { excluded } => {
                let h = excluded.last().map_or(1, |&e| e + 1);
                let members = self.enumerate_up_to(h).expect("closed form");
                DeltaSequence { head: diffs_of(&members), eventual_period: Some(vec![1]) }
            }
            SetSpec::EventuallyPeriodic { initial, diffs } => {
                DeltaSequence { head: diffs_of(initial), eventual_period: Some(diffs.clone()) }
            }
        }
    }

    pub fn classify(&self) -> SetClass {
        match self {
            SetSpec::Finite { .. } => SetClass::Finite,
            SetSpec::Cofinite { .. } => SetClass::Cofinite,
            SetSpec::EventuallyPeriodic { .. } => SetClass::EventuallyPeriodicDelta,
            SetSpec::BoundedExplicit { .. } => SetClass::Unknown,
        }
    }

    /// The excluded list when the set is cofinite in fact, whatever its encoding.
    pub fn as_cofinite(&self) -> Option<Vec<usize>> {
        match self {
            SetSpec::Cofinite { excluded } => Some(excluded.clone()),
            SetSpec::EventuallyPeriodic { initial, diffs } if diffs.iter().all(|&d| d == 1) => {
                let h = *initial.last().unwrap();
                Some((1..h).filter(|n| initial.binary_search(n).is_err()).collect())
            }
            _ => None,
        }
    }
}
