//! Command-line front end for `limshift`.

pub mod doc;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use limshift::classify::{self, Verdict};
use limshift::conjugacy::{self, BlockMap, EvidenceParams, OffsetCheck};
use limshift::{entropy, presentation, Error, RunWord, ShiftSpec};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use doc::{parse_spec, render, SpecDocument, SpecError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_UNKNOWN: i32 = 4;

/// Version of every JSON document written by the tool.
pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "limshift", about = "Analyse S-limited shift spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Genfun,
    Perron,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Finite type, sofic, mixing and irreducibility verdicts.
    Classify { spec: PathBuf },
    /// Topological entropy (natural log).
    Entropy {
        spec: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Method::Genfun)]
        method: Method,
        /// Keep only the first N members of each set; the result is a lower bound.
        #[arg(long, value_name = "N")]
        truncate: Option<usize>,
    },
    /// Words of length N in the language.
    Words {
        spec: PathBuf,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Number of core blocks of each length up to L.
    Spectrum {
        spec: PathBuf,
        #[arg(short = 'L')]
        max_len: usize,
    },
    /// Periodic point counts for periods 1..=N.
    Periodic {
        spec: PathBuf,
        #[arg(short = 'n')]
        n: usize,
    },
    /// Follower-set graph presentation.
    Graph {
        spec: PathBuf,
        #[arg(long, value_name = "OUT")]
        dot: Option<PathBuf>,
    },
    /// Split a word into prefix, whole blocks and suffix.
    Decompose {
        spec: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Conjugacy tests between two ordered shifts.
    #[command(subcommand)]
    Conjugacy(ConjugacyCommand),
}

#[derive(Debug, Subcommand)]
enum ConjugacyCommand {
    /// Necessary invariants and the sufficient offset condition.
    Check {
        a: PathBuf,
        b: PathBuf,
        #[arg(short = 'L', default_value_t = 30)]
        max_len: usize,
        #[arg(short = 'N', default_value_t = 10)]
        max_period: usize,
    },
    /// Build the sliding block code from the offsets and write it out.
    Synthesize {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Finite checks of a block map against both shifts.
    Verify {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(short = 'n', default_value_t = 10)]
        word_len: usize,
        #[arg(short = 'N', default_value_t = 10)]
        period_bound: usize,
        #[arg(short = 'L', default_value_t = 20)]
        core_len: usize,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A block map as stored on disk.
#[derive(Debug, Serialize, Deserialize)]
struct MapFile {
    schema: u32,
    #[serde(flatten)]
    map: BlockMap,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            e if e.is_undecidable() => EXIT_UNKNOWN,
            Error::WordNotInLanguage(_) => EXIT_REFUTED,
            Error::VariantMismatch { .. }
            | Error::EnumerationCap { .. }
            | Error::NotSft
            | Error::NotSofic
            | Error::EmptyGraph
            | Error::AlphabetSizeMismatch { .. }
            | Error::NoConvergence(_) => EXIT_UNSUPPORTED,
            _ => EXIT_PARSE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<SpecError> for Failure {
    fn from(e: SpecError) -> Self {
        Failure { code: EXIT_PARSE, message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: EXIT_PARSE, message: format!("{}: {e}", path.display()) }
}

type CmdResult = Result<(i32, Value), Failure>;

fn load(path: &Path) -> Result<ShiftSpec, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let doc = parse_spec(&text).map_err(|e| Failure { code: EXIT_PARSE, message: format!("{}: {e}", path.display()) })?;
    Ok(doc.to_shift()?)
}

/// Counts beyond `u64` are written as strings.
fn num(x: u128) -> Value {
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn report(command: &str, mut body: Value) -> Value {
    let obj = body.as_object_mut().expect("object body");
    obj.insert("schema".into(), json!(SCHEMA));
    obj.insert("command".into(), json!(command));
    body
}

fn classify_cmd(spec: &Path) -> CmdResult {
    let shift = load(spec)?;
    let r = classify::classify(&shift)?;
    let unknown = [r.sft, r.sofic, r.mixing].contains(&Verdict::Unknown);
    let code = if unknown { EXIT_UNKNOWN } else { EXIT_OK };
    Ok((code, report("classify", json!({ "report": to_value(&r) }))))
}

fn entropy_cmd(spec: &Path, tol: f64, method: Method, truncate: Option<usize>) -> CmdResult {
    let mut shift = load(spec)?;
    if let Some(n) = truncate {
        shift = entropy::truncated_shift(&shift, n)?;
    }
    let mut body = json!({ "log_base": "e", "method": format!("{method:?}").to_lowercase(), "lower_bound": truncate.is_some() });
    let mut values = Vec::new();
    if matches!(method, Method::Genfun | Method::Both) {
        let r = entropy::solve_entropy(&shift, tol)?;
        values.push(r.value);
        body["genfun"] = to_value(&r);
    }
    if matches!(method, Method::Perron | Method::Both) {
        let g = presentation::build_follower_automaton(&shift)?;
        let (lo, hi) = presentation::spectral_radius_bounds(&g, tol)?;
        let value = ((lo + hi) / 2.0).ln();
        values.push(value);
        body["perron"] = json!({ "value": value, "rhoLower": lo, "rhoUpper": hi, "states": g.state_count() });
    }
    if let [a, b] = values[..] {
        body["difference"] = json!((a - b).abs());
    }
    Ok((EXIT_OK, report("entropy", body)))
}

fn words_cmd(spec: &Path, n: usize, count_only: bool) -> CmdResult {
    let shift = load(spec)?;
    let body = if count_only {
        json!({ "n": n, "count": num(shift.count_words(n)?) })
    } else {
        let ws = shift.enumerate_words(n)?;
        json!({ "n": n, "count": ws.len(), "words": to_value(&ws) })
    };
    Ok((EXIT_OK, report("words", body)))
}

fn spectrum_cmd(spec: &Path, max_len: usize) -> CmdResult {
    let shift = load(spec)?;
    let s = shift.length_spectrum(max_len)?;
    let counts: Vec<Value> = s.counts.iter().map(|&c| num(c)).collect();
    Ok((EXIT_OK, report("spectrum", json!({ "truncation": max_len, "counts": counts }))))
}

fn periodic_cmd(spec: &Path, n: usize) -> CmdResult {
    let shift = load(spec)?;
    let counts = (1..=n).map(|k| shift.periodic_points(k).map(num)).collect::<Result<Vec<_>, _>>()?;
    Ok((EXIT_OK, report("periodic", json!({ "max_period": n, "counts": counts }))))
}

fn graph_cmd(spec: &Path, dot: Option<&Path>) -> CmdResult {
    let shift = load(spec)?;
    let g = presentation::build_follower_automaton(&shift)?;
    let text = presentation::export_dot(&g);
    let mut body = json!({
        "states": to_value(&g.states),
        "edges": to_value(&g.edges),
        "adjacency": presentation::adjacency_matrix(&g).rows(),
    });
    match dot {
        Some(path) => {
            fs::write(path, &text).map_err(|e| io_failure(path, e))?;
            body["dot_file"] = json!(path.display().to_string());
        }
        None => body["dot"] = json!(text),
    }
    Ok((EXIT_OK, report("graph", body)))
}

fn decompose_cmd(spec: &Path, word: &str) -> CmdResult {
    let shift = load(spec)?;
    let w: RunWord = word.parse()?;
    let d = shift.decompose(&w)?;
    Ok((EXIT_OK, report("decompose", json!({ "word": w.to_string(), "decomposition": to_value(&d) }))))
}

fn check_cmd(a: &Path, b: &Path, max_len: usize, max_period: usize) -> CmdResult {
    let (s, t) = (load(a)?, load(b)?);
    let spectra = conjugacy::length_spectra_equal(&s, &t, max_len)?;
    let periodic = conjugacy::periodic_counts_equal(&s, &t, max_period)?;
    let offsets = if s.p() == t.p() { Some(conjugacy::sufficient_offsets(&s, &t)?) } else { None };
    let code = if spectra.is_some() || periodic.is_some() {
        EXIT_REFUTED
    } else if matches!(offsets, Some(OffsetCheck::Accepted { .. })) {
        EXIT_OK
    } else {
        EXIT_UNKNOWN
    };
    let verdict = match code {
        EXIT_OK => "conjugate",
        EXIT_REFUTED => "not_conjugate",
        _ => "undecided",
    };
    let body = json!({
        "verdict": verdict,
        "length_spectra": { "truncation": max_len, "equal": spectra.is_none(), "first_mismatch": to_value(&spectra) },
        "periodic_counts": { "max_period": max_period, "equal": periodic.is_none(), "first_mismatch": to_value(&periodic) },
        "offsets": to_value(&offsets),
    });
    Ok((code, report("conjugacy check", body)))
}

fn synthesize_cmd(a: &Path, b: &Path, out: &Path) -> CmdResult {
    let (s, t) = (load(a)?, load(b)?);
    let offsets = match conjugacy::sufficient_offsets(&s, &t)? {
        OffsetCheck::Accepted { offsets } => offsets,
        refuted @ OffsetCheck::Refuted { .. } => {
            let body = json!({ "offsets": to_value(&refuted) });
            return Ok((EXIT_REFUTED, report("conjugacy synthesize", body)));
        }
    };
    let map = conjugacy::synthesize_block_map(&s, &t, &offsets)?;
    let file = MapFile { schema: SCHEMA, map: map.clone() };
    let text = serde_json::to_string_pretty(&file).expect("serializable") + "\n";
    fs::write(out, text).map_err(|e| io_failure(out, e))?;
    let body = json!({
        "offsets": to_value(&offsets),
        "memory": map.memory,
        "anticipation": map.anticipation,
        "map_file": out.display().to_string(),
    });
    Ok((EXIT_OK, report("conjugacy synthesize", body)))
}

fn verify_cmd(a: &Path, b: &Path, map: &Path, params: EvidenceParams) -> CmdResult {
    let (s, t) = (load(a)?, load(b)?);
    let text = fs::read_to_string(map).map_err(|e| io_failure(map, e))?;
    let file: MapFile = serde_json::from_str(&text)
        .map_err(|e| Failure { code: EXIT_PARSE, message: format!("{}: {e}", map.display()) })?;
    let r = conjugacy::verify_conjugacy_evidence(&file.map, &s, &t, params)?;
    let code = if r.all_passed { EXIT_OK } else { EXIT_REFUTED };
    Ok((code, report("conjugacy verify", json!({ "report": to_value(&r) }))))
}

fn dispatch(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Classify { spec } => classify_cmd(&spec),
        Command::Entropy { spec, tol, method, truncate } => entropy_cmd(&spec, tol, method, truncate),
        Command::Words { spec, n, count_only } => words_cmd(&spec, n, count_only),
        Command::Spectrum { spec, max_len } => spectrum_cmd(&spec, max_len),
        Command::Periodic { spec, n } => periodic_cmd(&spec, n),
        Command::Graph { spec, dot } => graph_cmd(&spec, dot.as_deref()),
        Command::Decompose { spec, word } => decompose_cmd(&spec, &word),
        Command::Conjugacy(ConjugacyCommand::Check { a, b, max_len, max_period }) => {
            check_cmd(&a, &b, max_len, max_period)
        }
        Command::Conjugacy(ConjugacyCommand::Synthesize { a, b, out }) => synthesize_cmd(&a, &b, &out),
        Command::Conjugacy(ConjugacyCommand::Verify { a, b, map, word_len, period_bound, core_len }) => {
            verify_cmd(&a, &b, &map, EvidenceParams { word_len, period_bound, core_len })
        }
    }
}

/// Runs one command line (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() { (String::new(), text) } else { (text, String::new()) };
            return Outcome { code, stdout, stderr };
        }
    };
    match dispatch(cli) {
        Ok((code, body)) => Outcome {
            code,
            stdout: serde_json::to_string_pretty(&body).expect("serializable") + "\n",
            stderr: String::new(),
        },
        Err(f) => Outcome { code: f.code, stdout: String::new(), stderr: format!("error: {}\n", f.message) },
    }
}
