//! Line-oriented shift specification files.
//!
//! ```text
//! name: golden mean
//! alphabet: 2
//! variant: ordered
//! S1: finite 1
//! S2: cofinite []
//! ```

use std::fmt::Write as _;

use limshift::{SetSpec, ShiftSpec, Variant};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
    #[error("{0}")]
    Incomplete(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecDocument {
    pub name: Option<String>,
    pub alphabet: usize,
    pub variant: Variant,
    pub sets: Vec<SetSpec>,
}

impl SpecDocument {
    pub fn to_shift(&self) -> limshift::Result<ShiftSpec> {
        ShiftSpec::new(self.sets.clone(), self.variant)
    }
}

/// A token and its 1-based column.
type Token<'a> = (&'a str, usize);

fn tokens(text: &str, offset: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        let sep = c.is_whitespace() || matches!(c, ',' | '[' | ']');
        match (sep, start) {
            (true, Some(s)) => {
                out.push((&text[s..i], offset + s + 1));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((&text[s..], offset + s + 1));
    }
    out
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> SpecError {
    SpecError::Parse { line, column, message: message.into() }
}

fn number(line: usize, (tok, col): Token<'_>) -> Result<usize, SpecError> {
    tok.parse().map_err(|_| parse_err(line, col, format!("expected a positive integer, found {tok:?}")))
}

fn parse_set(line: usize, toks: &[Token<'_>], end_col: usize) -> Result<SetSpec, SpecError> {
    let Some(&(kind, kind_col)) = toks.first() else {
        return Err(parse_err(line, end_col, "expected a set kind"));
    };
    let rest = &toks[1..];
    let semantic = |e: limshift::Error| SpecError::Semantic { line, message: e.to_string() };
    match kind {
        "finite" => {
            let xs = rest.iter().map(|&t| number(line, t)).collect::<Result<Vec<_>, _>>()?;
            SetSpec::finite(xs).map_err(semantic)
        }
        "cofinite" => {
            let xs = rest.iter().map(|&t| number(line, t)).collect::<Result<Vec<_>, _>>()?;
            SetSpec::cofinite(xs).map_err(semantic)
        }
        "epd" => {
            let (mut initial, mut diffs) = (Vec::new(), Vec::new());
            let mut target: Option<&mut Vec<usize>> = None;
            for &(tok, col) in rest {
                let value = if let Some(v) = tok.strip_prefix("initial=") {
                    target = Some(&mut initial);
                    (v, col + "initial=".len())
                } else if let Some(v) = tok.strip_prefix("diffs=") {
                    target = Some(&mut diffs);
                    (v, col + "diffs=".len())
                } else {
                    (tok, col)
                };
                let Some(list) = target.as_deref_mut() else {
                    return Err(parse_err(line, col, "expected initial=... or diffs=..."));
                };
                if !value.0.is_empty() {
                    list.push(number(line, value)?);
                }
            }
            SetSpec::eventually_periodic(initial, diffs).map_err(semantic)
        }
        "explicit" => {
            let mut xs = Vec::new();
            let mut bound = None;
            for &(tok, col) in rest {
                match tok.strip_prefix("bound=") {
                    Some(v) => bound = Some(number(line, (v, col + "bound=".len()))?),
                    None => xs.push(number(line, (tok, col))?),
                }
            }
            let bound = bound.ok_or_else(|| parse_err(line, end_col, "explicit sets need bound=<B>"))?;
            SetSpec::bounded_explicit(xs, bound).map_err(semantic)
        }
        other => Err(parse_err(
            line,
            kind_col,
            format!("unknown set kind {other:?} (expected finite, cofinite, epd or explicit)"),
        )),
    }
}

pub fn parse_spec(text: &str) -> Result<SpecDocument, SpecError> {
    let mut name = None;
    let mut alphabet: Option<(usize, usize)> = None;
    let mut variant = Variant::Ordered;
    let mut clauses: Vec<Option<(SetSpec, usize)>> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let Some(colon) = body.find(':') else {
            let col = body.len() - body.trim_start().len() + 1;
            return Err(parse_err(line, col, "expected <key>: <value>"));
        };
        let key = body[..colon].trim();
        let key_col = body.len() - body.trim_start().len() + 1;
        let value = &body[colon + 1..];
        let value_col = colon + 2 + (value.len() - value.trim_start().len());
        let toks = tokens(value, colon + 1);
        let end_col = body.trim_end().len() + 1;
        match key {
            "name" => name = Some(value.trim().to_string()),
            "alphabet" => {
                let tok = match toks.as_slice() {
                    [t] => *t,
                    _ => return Err(parse_err(line, value_col, "expected a single integer")),
                };
                let p = number(line, tok)?;
                if p < 2 {
                    return Err(SpecError::Semantic { line, message: format!("alphabet must be at least 2, got {p}") });
                }
                alphabet = Some((p, line));
            }
            "variant" => {
                variant = match value.trim() {
                    "ordered" => Variant::Ordered,
                    "generalized" => Variant::Generalized,
                    other => {
                        return Err(parse_err(
                            line,
                            value_col,
                            format!("unknown variant {other:?} (expected ordered or generalized)"),
                        ))
                    }
                }
            }
            _ => {
                let index = key
                    .strip_prefix('S')
                    .and_then(|i| i.parse::<usize>().ok())
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| parse_err(line, key_col, format!("unknown key {key:?}")))?;
                let set = parse_set(line, &toks, end_col)?;
                if clauses.len() < index {
                    clauses.resize(index, None);
                }
                if clauses[index - 1].is_some() {
                    return Err(SpecError::Semantic { line, message: format!("S{index} is defined twice") });
                }
                clauses[index - 1] = Some((set, line));
            }
        }
    }

    let p = match alphabet {
        Some((p, line)) => {
            if clauses.len() > p {
                return Err(SpecError::Semantic {
                    line: clauses[p..].iter().flatten().map(|c| c.1).min().unwrap_or(line),
                    message: format!("set S{} is outside the alphabet of size {p}", clauses.len()),
                });
            }
            p
        }
        None if clauses.len() >= 2 => clauses.len(),
        None => return Err(SpecError::Incomplete("alphabet size missing and fewer than two sets given".into())),
    };
    let mut sets = Vec::with_capacity(p);
    for i in 0..p {
        match clauses.get(i).cloned().flatten() {
            Some((set, _)) => sets.push(set),
            None => return Err(SpecError::Incomplete(format!("no clause for S{}", i + 1))),
        }
    }
    Ok(SpecDocument { name, alphabet: p, variant, sets })
}

fn join(xs: &[usize], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

/// Inverse of [`parse_spec`].
pub fn render(doc: &SpecDocument) -> String {
    let mut out = String::new();
    if let Some(name) = &doc.name {
        writeln!(out, "name: {name}").unwrap();
    }
    writeln!(out, "alphabet: {}", doc.alphabet).unwrap();
    let variant = match doc.variant {
        Variant::Ordered => "ordered",
        Variant::Generalized => "generalized",
    };
    writeln!(out, "variant: {variant}").unwrap();
    for (i, set) in doc.sets.iter().enumerate() {
        let body = match set {
            SetSpec::Finite { elements } => format!("finite {}", join(elements, " ")),
            SetSpec::Cofinite { excluded } => format!("cofinite [{}]", join(excluded, " ")),
            SetSpec::EventuallyPeriodic { initial, diffs } => {
                format!("epd initial={} diffs={}", join(initial, ","), join(diffs, ","))
            }
            SetSpec::BoundedExplicit { elements, bound } => format!("explicit {} bound={bound}", join(elements, " ")),
        };
        writeln!(out, "S{}: {body}", i + 1).unwrap();
    }
    out
}
