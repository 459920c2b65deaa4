//! Finite labeled graphs presenting sofic S-limited shifts.
//!
//! A state remembers the current letter and how long its run has been, with
//! run lengths folded back once the set becomes periodic. After dropping
//! states that lie on no bi-infinite path, states with identical futures
//! are merged.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::language::ShiftSpec;
use crate::sets::SetSpec;
use crate::Letter;

const POWER_ITERATION_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateTag {
    /// Run length below the periodic part of the set (or any length of a finite set).
    Head,
    /// Offset into the repeating part.
    Cycle(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct State {
    pub letter: Letter,
    pub run: usize,
    pub tag: StateTag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub label: Letter,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphPresentation {
    pub states: Vec<State>,
    /// Sorted by (src, label).
    pub edges: Vec<Edge>,
}

/// Row-major edge counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyMatrix {
    pub size: usize,
    pub entries: Vec<u64>,
}

impl AdjacencyMatrix {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.size.max(1)).map(<[u64]>::to_vec).take(self.size).collect()
    }

    /// `tr(A^n)`, the number of closed walks of length `n`.
    pub fn trace_of_power(&self, n: usize) -> u128 {
        let k = self.size;
        let base: Vec<u128> = self.entries.iter().map(|&x| u128::from(x)).collect();
        let mut acc = base.clone();
        for _ in 1..n {
            let mut next = vec![0u128; k * k];
            for i in 0..k {
                for l in 0..k {
                    let a = acc[i * k + l];
                    if a == 0 {
                        continue;
                    }
                    for j in 0..k {
                        next[i * k + j] += a * base[l * k + j];
                    }
                }
            }
            acc = next;
        }
        if n == 0 {
            return k as u128;
        }
        (0..k).map(|i| acc[i * k + i]).sum()
    }
}

impl GraphPresentation {
    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// Target of the edge leaving `src` with `label`, if any.
    pub fn follow(&self, src: usize, label: Letter) -> Option<usize> {
        self.edges.iter().find(|e| e.src == src && e.label == label).map(|e| e.dst)
    }

    pub fn is_right_resolving(&self) -> bool {
        self.edges.windows(2).all(|w| (w[0].src, w[0].label) != (w[1].src, w[1].label))
    }
}

/// `(h, period)` for a closed-form set; bounded sets have no finite presentation here.
fn set_form(shift: &ShiftSpec, letter: Letter) -> Result<(usize, usize)> {
    match shift.set(letter) {
        SetSpec::BoundedExplicit { bound, .. } => Err(Error::UnknownMembership { letter, n: bound + 1 }),
        s => Ok(s.periodic_form().expect("closed form")),
    }
}

pub fn build_follower_automaton(shift: &ShiftSpec) -> Result<GraphPresentation> {
    let forms: Vec<(usize, usize)> = shift.letters().map(|a| set_form(shift, a)).collect::<Result<_>>()?;
    let form = |a: Letter| forms[a as usize - 1];
    let top = |a: Letter| {
        let (h, period) = form(a);
        if period == 0 {
            h
        } else {
            h + period - 1
        }
    };
    let fold = |a: Letter, n: usize| {
        let (h, period) = form(a);
        if period > 0 && n >= h + period {
            h + (n - h) % period
        } else {
            n
        }
    };

    let mut raw: Vec<(Letter, usize)> = Vec::new();
    for a in shift.letters() {
        raw.extend((1..=top(a)).map(|n| (a, n)));
    }
    let index: HashMap<(Letter, usize), usize> = raw.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut edges = Vec::new();
    for (src, &(a, n)) in raw.iter().enumerate() {
        if shift.extendable(a, n + 1)? {
            edges.push(Edge { src, dst: index[&(a, fold(a, n + 1))], label: a });
        }
        if shift.exact(a, n)? {
            for b in shift.letters().filter(|&b| shift.may_follow(a, b)) {
                edges.push(Edge { src, dst: index[&(b, 1)], label: b });
            }
        }
    }

    let alive = essential_states(raw.len(), &edges);
    let classes = refine(&raw, &edges, &alive);

    // one representative per class: the state with the shortest run
    let mut reps: BTreeMap<usize, (Letter, usize)> = BTreeMap::new();
    for (i, &c) in classes.iter().enumerate() {
        if let Some(c) = c {
            let cand = raw[i];
            reps.entry(c).and_modify(|r| *r = (*r).min(cand)).or_insert(cand);
        }
    }
    let mut ordered: Vec<(Letter, usize, usize)> = reps.iter().map(|(&c, &(a, n))| (a, n, c)).collect();
    ordered.sort();
    let renumber: HashMap<usize, usize> = ordered.iter().enumerate().map(|(i, &(_, _, c))| (c, i)).collect();
    let states = ordered
        .iter()
        .map(|&(letter, run, _)| {
            let (h, period) = form(letter);
            let tag = if period == 0 || run < h { StateTag::Head } else { StateTag::Cycle(run - h) };
            State { letter, run, tag }
        })
        .collect();
    let mut merged: Vec<Edge> = edges
        .iter()
        .filter_map(|e| {
            let (s, d) = (classes[e.src]?, classes[e.dst]?);
            Some(Edge { src: renumber[&s], dst: renumber[&d], label: e.label })
        })
        .collect();
    merged.sort_by_key(|e| (e.src, e.label, e.dst));
    merged.dedup();
    Ok(GraphPresentation { states, edges: merged })
}

/// Repeatedly drops states without an incoming or without an outgoing edge.
fn essential_states(n: usize, edges: &[Edge]) -> Vec<bool> {
    let mut alive = vec![true; n];
    loop {
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for e in edges.iter().filter(|e| alive[e.src] && alive[e.dst]) {
            outdeg[e.src] += 1;
            indeg[e.dst] += 1;
        }
        let mut changed = false;
        for i in 0..n {
            if alive[i] && (indeg[i] == 0 || outdeg[i] == 0) {
                alive[i] = false;
                changed = true;
            }
        }
        if !changed {
            return alive;
        }
    }
}

/// Moore-style partition refinement over the live states, starting from the
/// partition by letter. Dead states get `None`.
fn refine(raw: &[(Letter, usize)], edges: &[Edge], alive: &[bool]) -> Vec<Option<usize>> {
    let mut out: Vec<Vec<(Letter, usize)>> = vec![Vec::new(); raw.len()];
    for e in edges.iter().filter(|e| alive[e.src] && alive[e.dst]) {
        out[e.src].push((e.label, e.dst));
    }
    for row in &mut out {
        row.sort();
    }
    let mut class: Vec<usize> = raw.iter().map(|&(a, _)| a as usize).collect();
    let mut count = 0;
    loop {
        let mut ids: BTreeMap<(usize, Vec<(Letter, usize)>), usize> = BTreeMap::new();
        let mut next = vec![0; raw.len()];
        for i in (0..raw.len()).filter(|&i| alive[i]) {
            let sig = (class[i], out[i].iter().map(|&(l, d)| (l, class[d])).collect());
            let fresh = ids.len();
            next[i] = *ids.entry(sig).or_insert(fresh);
        }
        let n = ids.len();
        class = next;
        if n == count {
            break;
        }
        count = n;
    }
    (0..raw.len()).map(|i| alive[i].then_some(class[i])).collect()
}

pub fn adjacency_matrix(g: &GraphPresentation) -> AdjacencyMatrix {
    let size = g.states.len();
    let mut entries = vec![0u64; size * size];
    for e in &g.edges {
        entries[e.src * size + e.dst] += 1;
    }
    AdjacencyMatrix { size, entries }
}

/// Certified bounds `(lower, upper)` on the spectral radius.
pub fn spectral_radius_bounds(g: &GraphPresentation, tol: f64) -> Result<(f64, f64)> {
    if g.states.is_empty() || g.edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut graph = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..g.states.len()).map(|_| graph.add_node(())).collect();
    for e in &g.edges {
        graph.add_edge(nodes[e.src], nodes[e.dst], ());
    }
    let a = adjacency_matrix(g);
    let (mut lo, mut hi) = (0.0f64, 0.0f64);
    for comp in tarjan_scc(&graph) {
        let idx: Vec<usize> = comp.iter().map(|n| n.index()).collect();
        let k = idx.len();
        let sub: Vec<f64> =
            idx.iter().flat_map(|&i| idx.iter().map(move |&j| (i, j))).map(|(i, j)| a.get(i, j) as f64).collect();
        if sub.iter().all(|&x| x == 0.0) {
            continue;
        }
        let (l, h) = perron_bounds(&sub, k, tol)?;
        lo = lo.max(l);
        hi = hi.max(h);
    }
    if hi == 0.0 {
        return Err(Error::EmptyGraph);
    }
    Ok((lo, hi))
}

/// Power iteration on `B + I` for an irreducible block `B`, with
/// Collatz-Wielandt bounds shifted back by one.
fn perron_bounds(b: &[f64], k: usize, tol: f64) -> Result<(f64, f64)> {
    let mut v = vec![1.0f64; k];
    for _ in 0..POWER_ITERATION_CAP {
        let w: Vec<f64> = (0..k).map(|i| v[i] + (0..k).map(|j| b[i * k + j] * v[j]).sum::<f64>()).collect();
        let ratios = (0..k).map(|i| w[i] / v[i]);
        let (lo, hi) = ratios.fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
        let (lo, hi) = (lo - 1.0, hi - 1.0);
        if lo > 0.0 && hi.ln() - lo.ln() <= tol {
            return Ok((lo, hi));
        }
        let scale = w.iter().cloned().fold(0.0, f64::max);
        v = w.into_iter().map(|x| x / scale).collect();
    }
    Err(Error::NoConvergence(format!("power iteration on a {k}-state component")))
}

/// Natural log of the spectral radius of the adjacency matrix.
pub fn spectral_entropy(g: &GraphPresentation, tol: f64) -> Result<f64> {
    let (lo, hi) = spectral_radius_bounds(g, tol)?;
    Ok(((lo + hi) / 2.0).ln())
}

fn node_name(s: &State) -> String {
    format!("L{}R{}", s.letter, s.run)
}

pub fn export_dot(g: &GraphPresentation) -> String {
    let mut out = String::from("digraph shift {\n");
    for s in &g.states {
        writeln!(out, "  {};", node_name(s)).unwrap();
    }
    let mut edges = g.edges.clone();
    edges.sort_by_key(|e| (e.src, e.label, e.dst));
    for e in &edges {
        let (s, d) = (node_name(&g.states[e.src]), node_name(&g.states[e.dst]));
        writeln!(out, "  {s} -> {d} [label=\"{}\"];", e.label).unwrap();
    }
    out.push_str("}\n");
    out
}
