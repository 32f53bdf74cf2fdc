use std::io::Write as _;

use proptest::prelude::*;
use serde_json::{json, Value};
use tempfile::NamedTempFile;

use valinf::cli::{run, SequenceDocument, EXIT_BUDGET, EXIT_INVALID, EXIT_OK, EXIT_USAGE};

const TYPE_A: &str = r#"{"type":"A","core":[18,12,33,4],"last":-5}"#;
const TYPE_B: &str = r#"{"type":"B","core":[18,12,33,4]}"#;
const TYPE_C: &str = r#"{"type":"C","core":[18,12,33,4]}"#;
const TYPE_D: &str = r#"{"type":"D","prefix":["3/2","1","33/12","1/3"],"surd":{"a":147,"b":-1,"c":186,"d":2}}"#;
const TYPE_E: &str = r#"{"type":"E","rule":{"kind":"geometric","head":["5/3","1"],"ratio":"3/2"}}"#;

fn doc(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

struct Output {
    code: i32,
    out: String,
    err: String,
}

impl Output {
    fn json(&self) -> Value {
        serde_json::from_str(&self.out).unwrap_or_else(|e| panic!("{e}: {}", self.out))
    }
}

fn valinf(args: &[&str]) -> Output {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("valinf").chain(args.iter().copied()), &mut out, &mut err);
    Output {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn on(text: &str, args: &[&str]) -> Output {
    let f = doc(text);
    let path = f.path().to_str().unwrap().to_string();
    let mut full: Vec<&str> = vec![args[0], &path];
    full.extend(&args[1..]);
    valinf(&full)
}

#[test]
fn validate_reports_and_exit_codes() {
    let r = on(TYPE_A, &["validate"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.err);
    assert!(r.out.contains("type: A") && r.out.ends_with("valid\n"));

    let r = on(r#"{"type":"A","core":[4,6],"last":0}"#, &["validate"]);
    assert_eq!(r.code, EXIT_INVALID);
    assert!(r.err.contains("condition (3): δ0 > δ1 fails"), "{}", r.err);

    assert_eq!(on("{bad", &["validate"]).code, EXIT_USAGE);
    assert_eq!(valinf(&["validate", "/nonexistent/file.json"]).code, EXIT_USAGE);

    for text in [TYPE_B, TYPE_C, TYPE_D, TYPE_E] {
        let r = on(text, &["validate"]);
        assert_eq!(r.code, EXIT_OK, "{text}: {}", r.err);
    }
    // last entry above n_g δ_g
    assert_eq!(on(r#"{"type":"A","core":[18,12,33,4],"last":13}"#, &["validate"]).code, EXIT_INVALID);
}

#[test]
fn schema_violations_are_usage_errors() {
    for text in [
        r#"{"type":"A","core":[18,12,33,4]}"#,
        r#"{"type":"B","core":[18,12,33,4],"last":1}"#,
        r#"{"type":"A","core":[18,12,33,4],"last":-5.0}"#,
        r#"{"type":"Z","core":[5,3]}"#,
        r#"{"type":"A","core":[5,3],"last":1,"extra":0}"#,
        r#"{"type":"D","prefix":["3/0"],"surd":{"a":1,"b":1,"c":1,"d":2}}"#,
        r#"{"type":"E","rule":{"kind":"spiral"}}"#,
    ] {
        let r = on(text, &["validate"]);
        assert_eq!(r.code, EXIT_USAGE, "{text}");
        assert!(!r.err.is_empty());
    }
}

#[test]
fn invariants_examples() {
    let v = on(TYPE_A, &["invariants"]).json();
    assert_eq!(v["em_pairs"], json!([[21, 6], [62, 3]]));
    assert_eq!(v["cf"], json!(["<3;2>", "<20;1,2>"]));
    assert_eq!(v["f_free"], json!(17));

    let v = on(TYPE_D, &["invariants"]).json();
    assert_eq!(v["cf"].as_array().unwrap().last().unwrap(), "<2;1,1,1,1,2,2*sqrt(2)>");

    let v = on(TYPE_B, &["invariants"]).json();
    assert_eq!(v["generators"].as_array().unwrap().last().unwrap(), &json!([-1, 324]));
}

#[test]
fn semigroup_examples() {
    let r = on(TYPE_A, &["semigroup", "--core", "--member", "47"]);
    assert_eq!(r.json(), json!({"member": false}));
    let r = on(TYPE_A, &["semigroup", "--core", "--enumerate", "0", "20"]);
    assert_eq!(r.json(), json!({"members": [0, 4, 8, 12, 16, 18, 20]}));
    let v = on(TYPE_B, &["semigroup", "--member", "(-1,336)"]).json();
    assert_eq!(v["member"], json!(true));
    let w: Vec<i64> = serde_json::from_value(v["witness"].clone()).unwrap();
    let gens = [(0, 18), (0, 12), (0, 33), (0, 4), (-1, 324)];
    let sum = w.iter().zip(gens).fold((0, 0), |(a, b), (k, (x, y))| (a + k * x, b + k * y));
    assert_eq!(sum, (-1, 336));
    // with the negative last entry every integer is reachable
    let r = on(TYPE_A, &["semigroup", "--member", "47"]);
    assert_eq!(r.json()["member"], json!(true));
    assert_eq!(on(TYPE_A, &["semigroup", "--member", "x"]).code, EXIT_USAGE);
    assert_eq!(on(TYPE_A, &["semigroup"]).code, EXIT_USAGE);
}

#[test]
fn dualgraph_outputs() {
    let v = on(TYPE_A, &["dualgraph"]).json();
    assert_eq!(v["is_tree"], json!(true));
    assert_eq!(v["branch_vertices"], json!([4, 27]));
    assert_eq!(v["vertex_count"], json!(45));

    let r = on(TYPE_A, &["dualgraph", "--dot"]);
    assert!(r.out.starts_with("graph") || r.out.contains("graph"), "{}", r.out);
    assert!(r.out.contains("cluster_gamma"));

    let v = on(TYPE_B, &["dualgraph", "--truncate", "10"]).json();
    assert_eq!(v["points"].as_array().unwrap().len(), 10);
    assert_eq!(v["truncated"], json!(true));
}

#[test]
fn curve_and_value_examples() {
    let v = on(TYPE_A, &["curve"]).json();
    assert_eq!(v["q2"], json!("y^3 - x^2"));
    assert_eq!(v["degrees"], json!([3, 6, 18]));
    assert_eq!(on(TYPE_A, &["value", "--poly", "x*y"]).json(), json!({"value": 30, "generic": false}));
    assert_eq!(on(TYPE_B, &["value", "--poly", "x"]).json()["value"], json!([0, 18]));
    assert_eq!(on(TYPE_A, &["value", "--poly", "x*"]).code, EXIT_USAGE);
    assert_eq!(on(TYPE_A, &["value", "--poly", "0"]).code, EXIT_INVALID);
    // curves exist only for integer cores
    assert_eq!(on(TYPE_D, &["curve"]).code, EXIT_USAGE);
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(valinf(&["--help"]).code, EXIT_OK);
    assert_eq!(valinf(&["--version"]).code, EXIT_OK);
    assert_eq!(valinf(&[]).code, EXIT_USAGE);
    assert_eq!(valinf(&["frobnicate"]).code, EXIT_USAGE);
}

#[test]
fn output_is_deterministic() {
    for args in [&["invariants"][..], &["dualgraph", "--dot"], &["curve"]] {
        assert_eq!(on(TYPE_A, args).out, on(TYPE_A, args).out);
    }
}

#[test]
fn canonical_documents_round_trip() {
    for text in [TYPE_A, TYPE_B, TYPE_C, TYPE_D, TYPE_E] {
        assert_eq!(on(text, &["validate"]).code, EXIT_OK);
        let parsed = SequenceDocument::parse(text).unwrap();
        assert_eq!(parsed.to_canonical_json(), text);
    }
}

fn mutate(base: &str, cut: usize, insert: &str) -> String {
    let mut s: Vec<char> = base.chars().collect();
    let at = cut % (s.len() + 1);
    s.splice(at..at, insert.chars());
    s.into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn malformed_documents_never_panic(
        base in prop::sample::select(vec![TYPE_A, TYPE_B, TYPE_C, TYPE_D, TYPE_E]),
        cut in 0usize..200,
        insert in "[\\[\\]{}\":,0-9a-z/ -]{0,4}",
        drop in 0usize..3,
    ) {
        let mut text = mutate(base, cut, &insert);
        for _ in 0..drop {
            let at = cut % text.len().max(1);
            if at < text.len() && text.is_char_boundary(at) {
                text.remove(at);
            }
        }
        for cmd in ["validate", "invariants"] {
            let r = on(&text, &[cmd]);
            prop_assert!([EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_BUDGET].contains(&r.code));
            if r.code != EXIT_OK {
                prop_assert!(!r.err.trim().is_empty());
            }
        }
    }

    #[test]
    fn random_polynomial_text_never_panics(text in "[xy0-9*^+()/ -]{0,16}") {
        let r = on(TYPE_A, &["value", "--poly", &text]);
        prop_assert!([EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_BUDGET].contains(&r.code));
        if r.code != EXIT_OK {
            prop_assert!(!r.err.trim().is_empty());
        }
    }
}
