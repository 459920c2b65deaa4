use std::path::PathBuf;

use limshift::{SetSpec, Variant};
use limshift_cli::{parse_spec, render, run, SpecDocument, SpecError};
use proptest::prelude::*;
use serde_json::Value;

fn fx(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(format!("{name}.shift"))
        .to_string_lossy()
        .into_owned()
}

fn limshift(args: &[&str]) -> (i32, Value, String) {
    let mut argv = vec!["limshift"];
    argv.extend_from_slice(args);
    let out = run(argv);
    let json = if out.stdout.is_empty() { Value::Null } else { serde_json::from_str(&out.stdout).unwrap() };
    (out.code, json, out.stderr)
}

#[test]
fn classify_golden() {
    let (code, json, _) = limshift(&["classify", &fx("golden")]);
    assert_eq!(code, 0);
    assert_eq!(json["schema"], 1);
    assert_eq!(json["report"]["sft"], "yes");
    assert_eq!(json["report"]["forbiddenWords"], serde_json::json!(["11"]));
}

#[test]
fn entropy_methods_agree() {
    let (code, json, _) = limshift(&["entropy", &fx("golden"), "--method", "both"]);
    assert_eq!(code, 0);
    assert_eq!(json["log_base"], "e");
    assert!(json["difference"].as_f64().unwrap() <= 1e-6);
    let (code, json, _) = limshift(&["entropy", &fx("primes"), "--truncate", "10"]);
    assert_eq!(code, 0);
    assert_eq!(json["lower_bound"], true);
    assert_eq!(limshift(&["entropy", &fx("primes")]).0, 4);
    assert_eq!(limshift(&["entropy", &fx("full_generalized")]).0, 3);
    assert_eq!(limshift(&["entropy", &fx("full_generalized"), "--method", "perron"]).0, 0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    assert_eq!(limshift(&["graph", &fx("primes"), "--dot", dot.to_str().unwrap()]).0, 4);
    assert_eq!(limshift(&["words", &fx("golden"), "-n", "30"]).0, 3);
    assert_eq!(limshift(&["spectrum", &fx("full_generalized"), "-L", "5"]).0, 3);
    assert_eq!(limshift(&["decompose", &fx("golden"), "--word", "11"]).0, 1);
    assert_eq!(limshift(&["classify", "/definitely/not/here.shift"]).0, 2);
    assert_eq!(limshift(&["nonsense"]).0, 2);

    let bad = dir.path().join("bad.shift");
    std::fs::write(&bad, "alphabet: 2\nS1: finite 1\nS2: cofinit []\n").unwrap();
    let (code, _, stderr) = limshift(&["classify", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 3, column 5"), "{stderr}");
}

#[test]
fn graph_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("golden.dot");
    let (code, json, _) = limshift(&["graph", &fx("golden"), "--dot", dot.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(json["adjacency"], serde_json::json!([[0, 1], [1, 1]]));
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph shift {") && text.matches("->").count() == 3);
}

#[test]
fn words_and_counts() {
    let (_, json, _) = limshift(&["words", &fx("golden"), "-n", "2"]);
    assert_eq!(json["words"], serde_json::json!(["12", "21", "22"]));
    let (_, json, _) = limshift(&["words", &fx("golden"), "-n", "10", "--count-only"]);
    assert_eq!(json["count"], 144);
    let (_, json, _) = limshift(&["periodic", &fx("golden"), "-n", "6"]);
    assert_eq!(json["counts"], serde_json::json!([1, 3, 4, 7, 11, 18]));
    let (_, json, _) = limshift(&["spectrum", &fx("even"), "-L", "5"]);
    assert_eq!(json["counts"], serde_json::json!([0, 0, 0, 1, 1, 2]));
}

#[test]
fn conjugacy_round_trip() {
    let (code, json, _) = limshift(&["conjugacy", "check", &fx("exS"), &fx("exT")]);
    assert_eq!(code, 0);
    assert_eq!(json["offsets"]["offsets"]["d"], serde_json::json!([0, 1, -1]));
    assert_eq!(limshift(&["conjugacy", "check", &fx("shortA"), &fx("shortB")]).0, 1);
    assert_eq!(limshift(&["conjugacy", "check", &fx("golden"), &fx("golden")]).0, 0);

    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("map.json");
    let map = map.to_str().unwrap();
    let (code, json, _) = limshift(&["conjugacy", "synthesize", &fx("exS"), &fx("exT"), "--out", map]);
    assert_eq!((code, json["memory"].as_u64()), (0, Some(2)));
    let (code, json, _) = limshift(&["conjugacy", "verify", &fx("exS"), &fx("exT"), "--map", map]);
    assert_eq!(code, 0);
    assert_eq!(json["report"]["allPassed"], true);
    // the same map cannot land in the source shift
    let (code, json, _) = limshift(&["conjugacy", "verify", &fx("exS"), &fx("exS"), "--map", map]);
    assert_eq!(code, 1);
    assert_eq!(json["report"]["imageContainment"]["passed"], false);
}

#[test]
fn parse_examples() {
    let doc = parse_spec("alphabet: 3\nS1: cofinite []\nS2: epd initial=2 diffs=2\nS3: finite 3 5\n").unwrap();
    assert_eq!(doc.sets[2], SetSpec::finite(vec![3, 5]).unwrap());
    assert!(matches!(parse_spec("alphabet: 2\nS1: finite 3 1\nS2: finite 1\n"), Err(SpecError::Semantic { line: 2, .. })));
}

fn set_strategy() -> impl Strategy<Value = SetSpec> {
    let sorted = |lo: usize, hi: usize| {
        proptest::collection::btree_set(1usize..40, lo..hi).prop_map(|s| s.into_iter().collect::<Vec<_>>())
    };
    prop_oneof![
        sorted(1, 5).prop_map(|xs| SetSpec::finite(xs).unwrap()),
        sorted(0, 4).prop_map(|xs| SetSpec::cofinite(xs).unwrap()),
        (sorted(1, 4), proptest::collection::vec(1usize..6, 1..4))
            .prop_map(|(xs, ds)| SetSpec::eventually_periodic(xs, ds).unwrap()),
        (sorted(1, 5), 0usize..20).prop_map(|(xs, extra)| {
            let bound = xs.last().unwrap() + extra;
            SetSpec::bounded_explicit(xs, bound).unwrap()
        }),
    ]
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(
        name in proptest::option::of("[a-z][a-z0-9 -]{0,12}[a-z0-9]"),
        generalized in any::<bool>(),
        sets in proptest::collection::vec(set_strategy(), 2..6),
    ) {
        let variant = if generalized { Variant::Generalized } else { Variant::Ordered };
        let doc = SpecDocument { name, alphabet: sets.len(), variant, sets };
        prop_assert_eq!(parse_spec(&render(&doc)).unwrap(), doc);
    }
}
