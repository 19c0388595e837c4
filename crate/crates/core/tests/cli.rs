use std::path::PathBuf;
use std::process::{Command, Stdio};

use coxtor::cli::{run, Outcome};
use jsonschema::{Registry, Resource, Validator};
use serde_json::{json, Value};

const BASE: &str = "file:///coxtor/schemas/";

const B3_SYMBOL: &str = r#"{"nodes":["a","b","c"],"edges":[["a","b",3],["b","c",4]]}"#;

fn schema_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas")
}

/// Validators for every schema file, with relative `$ref`s resolved among them.
fn validator(name: &str) -> Validator {
    let mut resources = Vec::new();
    for entry in std::fs::read_dir(schema_dir()).unwrap() {
        let path = entry.unwrap().path();
        let file = path.file_name().unwrap().to_string_lossy().into_owned();
        let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        doc["$id"] = json!(format!("{BASE}{file}"));
        resources.push((format!("{BASE}{file}"), Resource::from_contents(doc)));
    }
    let registry = Box::leak(Box::new(Registry::new().extend(resources).unwrap().prepare().unwrap()));
    jsonschema::options()
        .with_registry(registry)
        .build(&json!({ "$ref": format!("{BASE}{name}.schema.json") }))
        .unwrap()
}

fn cli(args: &[&str], stdin: &str) -> Outcome {
    let argv = std::iter::once("coxtor").chain(args.iter().copied());
    run(argv, &mut stdin.as_bytes())
}

fn json_of(out: &Outcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", out.stdout))
}

fn assert_schema(schema: &str, value: &Value) {
    let v = validator(schema);
    let errors: Vec<String> = v.iter_errors(value).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{schema}: {errors:#?}\n{value}");
}

#[test]
fn every_verb_matches_its_schema() {
    let cases: &[(&[&str], &str, &str)] = &[
        (&["symbol", "classify"], B3_SYMBOL, "symbol-classify"),
        (&["symbol", "euler"], B3_SYMBOL, "symbol-euler"),
        (&["symbol", "signature", "--inf", "-1.0"], B3_SYMBOL, "symbol-signature"),
        (&["weyl", "info", "A", "4"], "", "weyl-info"),
        (&["weyl", "info", "E", "8"], "", "weyl-info"),
        (&["modtwo", "weight", "A", "4", "--node", "2"], "", "modtwo-weight"),
        (&["modtwo", "admissible", "E", "6"], "", "modtwo-admissible"),
        (&["modtwo", "dpsi", "B", "6"], "", "modtwo-dpsi"),
        (&["involutions", "classes"], B3_SYMBOL, "classes"),
        (&["tf", "build", "--psi", "E6", "--nodes", "1"], "", "tf-build"),
        (&["tf", "certify", "--psi", "A", "4", "--nodes", "2"], "", "certificate"),
        (&["tf", "certify", "--psi", "D10", "--nodes", "2,6", "--mode", "plain"], "", "certificate"),
        (&["tf", "extend", "--psi", "E6", "--nodes", "1"], "", "certificate"),
        (&["tf", "extend", "--psi", "E8", "--nodes", "7"], "", "certificate"),
        (&["geometry", "volume", "6"], "", "volume"),
        (&["geometry", "covol", "--route", "siegel", "--dim", "8"], "", "covolume"),
        (&["geometry", "covol", "--route", "gb", "--dim", "4"], "", "covolume"),
    ];
    for (args, stdin, schema) in cases {
        let out = cli(args, stdin);
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        assert_schema(schema, &json_of(&out));
    }
}

#[test]
fn symbol_input_matches_symbol_schema() {
    assert_schema("symbol", &serde_json::from_str(B3_SYMBOL).unwrap());
    let out = cli(&["tf", "build", "--psi", "A", "4", "--nodes", "2"], "");
    assert_schema("symbol", &json_of(&out)["gamma"]);
}

#[test]
fn documented_examples() {
    let out = cli(&["geometry", "volume", "4"], "");
    assert_eq!(out.code, 0);
    let v = json_of(&out);
    assert_eq!(v["vol"], json!({"num": 8, "den": 3, "pi_power": 2}));
    assert_eq!(v["chi"], json!({"num": 2, "den": 1}));

    assert_eq!(cli(&["tf", "certify", "--psi", "B", "2", "--nodes", "1"], "").code, 2);
    assert_eq!(cli(&["weyl", "info", "Z", "9"], "").code, 2);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["frobnicate"][..],
        &["weyl"],
        &["weyl", "info", "A"],
        &["modtwo", "weight", "A", "4"],
        &["modtwo", "weight", "A", "4", "--node", "9"],
        &["tf", "certify", "--psi", "E6"],
        &["tf", "certify", "--psi", "E6", "--nodes", "1", "--mode", "sideways"],
        &["geometry", "volume", "5"],
        &["geometry", "covol", "--route", "siegel", "--dim", "5"],
    ] {
        let out = cli(args, "");
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?} wrote stdout");
        assert!(!out.stderr.is_empty(), "{args:?} gave no message");
    }
    assert_eq!(cli(&["symbol", "euler"], "{not json").code, 2);
    assert_eq!(cli(&["symbol", "euler"], r#"{"nodes":["a"],"edges":[["a","z",3]]}"#).code, 2);
}

#[test]
fn refusals_are_nonzero() {
    // plain mode needs special attachments; node 2 of A4 is plain, so this is refused up front
    assert_eq!(cli(&["tf", "certify", "--psi", "A4", "--nodes", "2", "--mode", "plain"], "").code, 2);
    // odd Coxeter number: there is no half-turn, so the extension is refused before any check
    let out = cli(&["tf", "extend", "--psi", "A4", "--nodes", "2"], "");
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
    // an infinite-type symbol has no finite classification but is still valid input
    let out = cli(&["symbol", "euler"], r#"{"nodes":["a","b"],"edges":[["a","b","inf"]]}"#);
    assert_eq!(out.code, 0);
}

#[test]
fn help_and_version_go_to_stdout() {
    for args in [&["--help"][..], &["--version"], &["tf", "--help"]] {
        let out = cli(args, "");
        assert_eq!(out.code, 0);
        assert!(!out.stdout.is_empty());
    }
}

#[test]
fn quiet_only_drops_the_table() {
    let loud = cli(&["modtwo", "admissible", "D", "8"], "");
    let quiet = cli(&["-q", "modtwo", "admissible", "D", "8"], "");
    assert!(!loud.stderr.is_empty());
    assert!(quiet.stderr.is_empty());
    assert_eq!(loud.stdout, quiet.stdout);
    let json = cli(&["--json", "modtwo", "admissible", "D", "8"], "");
    assert_eq!(json.stdout, loud.stdout);
}

#[test]
fn output_is_deterministic() {
    let args = ["tf", "certify", "--psi", "E", "7", "--nodes", "6"];
    let first = cli(&args, "");
    for _ in 0..3 {
        let again = cli(&args, "");
        assert_eq!(again.stdout, first.stdout);
        assert_eq!(again.stderr, first.stderr);
    }
}

#[test]
fn file_flag_matches_stdin() {
    let path = std::env::temp_dir().join(format!("coxtor-cli-{}.json", std::process::id()));
    std::fs::write(&path, B3_SYMBOL).unwrap();
    let p = path.to_str().unwrap();
    let from_file = cli(&["--file", p, "symbol", "classify"], "");
    let from_flag = cli(&["involutions", "classes", "--symbol", p], "");
    std::fs::remove_file(&path).unwrap();
    assert_eq!(from_file.stdout, cli(&["symbol", "classify"], B3_SYMBOL).stdout);
    assert_eq!(from_flag.stdout, cli(&["involutions", "classes"], B3_SYMBOL).stdout);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_coxtor");
    let status = |args: &[&str]| Command::new(bin).args(args).stdin(Stdio::null()).output().unwrap();
    let ok = status(&["-q", "geometry", "volume", "4"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(ok.stderr.is_empty());
    assert_eq!(json_of(&Outcome { code: 0, stdout: String::from_utf8(ok.stdout).unwrap(), stderr: String::new() })["deck"], json!(1));
    assert_eq!(status(&["weyl", "info", "Z", "9"]).status.code(), Some(2));
    assert_eq!(status(&["nope"]).status.code(), Some(2));
}
