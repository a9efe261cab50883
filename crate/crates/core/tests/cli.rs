//! The command line, driven in-process.

use std::path::PathBuf;

use asphere::cli::{run, Config, Outcome};
use serde_json::Value;

fn asphere(args: &[&str]) -> Outcome {
    run(std::iter::once("asphere").chain(args.iter().copied()))
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let text = std::fs::read_to_string(&path).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{errors:#?}\n{doc:#}");
}

const R1: &str = "x c t x^-1 e t f t x^-1 h t i";
const R2: &str = "x^-1 t^-1 a t t";
const S: &str = "a t b t c t^-1 d t e t f t^-1 g t h t i t^-1";

#[test]
fn parse_prints_normal_forms() {
    let o = asphere(&["parse", S]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "a t b t c t^-1 d t e t f t^-1 g t h t i t^-1\n"));
    let o = asphere(&["parse", ""]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "1\n"));
    let o = asphere(&["parse", "a t^"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("offset 4"), "{}", o.stderr);
    assert_eq!(asphere(&["parse", "a t t^-1 a^-1 c"]).stdout, "c\n");
    assert_eq!(asphere(&["parse", "--cyclic", "t^-1 a t b"]).stdout, "a t b t^-1\n");
}

#[test]
fn parse_json_matches_schema() {
    let o = asphere(&["--format", "json", "parse", S]);
    let doc: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_valid(&schema("word.schema.json"), &doc);
    assert_eq!(doc["length"], 9);
    assert_eq!(doc["exponent_sum"], 3);
}

#[test]
fn stargraph_outputs() {
    let dot = asphere(&["stargraph", "--dot", S]);
    assert_eq!(dot.code, 0);
    assert!(dot.stdout.starts_with("digraph star {"));
    assert_eq!(dot.stdout.matches(" -> ").count(), 9);
    let text = asphere(&["stargraph", R1, R2]);
    assert!(text.stdout.starts_with("vertices: t, t^-1, x, x^-1\n"), "{}", text.stdout);
    let json = asphere(&["--format", "json", "stargraph", R1, R2]);
    let doc: Value = serde_json::from_str(&json.stdout).unwrap();
    assert_valid(&schema("stargraph.schema.json"), &doc);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 11);
}

#[test]
fn weightcheck_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    let names = ["γ1", "γ2", "γ3", "γ4", "γ5", "γ6", "γ7", "η1", "η2", "η3", "η4"];
    let zero = ["γ1", "γ7", "η1", "η2"];
    let theta: serde_json::Map<String, Value> = names
        .iter()
        .map(|n| (n.to_string(), Value::from(if zero.contains(n) { "0" } else { "1" })))
        .collect();
    std::fs::write(&good, Value::Object(theta.clone()).to_string()).unwrap();
    assert_valid(&schema("weight_function.schema.json"), &Value::Object(theta));

    let rels = "a=d^-1, a=g^-1, d=g";
    let o = asphere(&["--format", "json", "weightcheck", R1, R2, "--theta", good.to_str().unwrap(), "--relations", rels]);
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    let doc: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_valid(&schema("weight_report.schema.json"), &doc);
    assert_eq!(doc["verdict"], "pass");

    let text = asphere(&["weightcheck", R1, R2, "--theta", good.to_str().unwrap(), "--relations", rels]);
    assert!(text.stdout.starts_with("verdict: PASS\n"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"γ1": "1", "γ2": "1", "γ3": "1", "γ4": "1", "γ5": "1", "γ6": "1", "γ7": "1", "γ8": "1", "γ9": "1"}"#).unwrap();
    let o = asphere(&["--format", "json", "weightcheck", S, "--theta", bad.to_str().unwrap()]);
    assert_eq!(o.code, 1);
    let doc: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_valid(&schema("weight_report.schema.json"), &doc);
    assert_eq!(doc["verdict"], "fail");

    let missing = dir.path().join("missing.json");
    std::fs::write(&missing, r#"{"γ1": "1"}"#).unwrap();
    assert_eq!(asphere(&["weightcheck", S, "--theta", missing.to_str().unwrap()]).code, 2);
    assert_eq!(asphere(&["weightcheck", S, "--theta", "/nonexistent/theta.json"]).code, 2);
}

#[test]
fn weightsearch_exit_codes() {
    let o = asphere(&["--format", "json", "weightsearch", "t a t^-1 c"]);
    assert_eq!(o.code, 0);
    let doc: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_valid(&schema("weight_function.schema.json"), &doc);
    let o = asphere(&["weightsearch", S]);
    assert_eq!(o.code, 1);
    let o = asphere(&["--grid", "1/2", "weightsearch", "t a t^-1 c"]);
    assert_eq!(o.code, 1, "{}", o.stdout);
}

#[test]
fn classify_lines_and_summary() {
    let o = asphere(&["classify", "--N", "0"]);
    assert_eq!(o.code, 0);
    let first: Value = serde_json::from_str(o.stdout.lines().next().unwrap()).unwrap();
    assert_eq!(first["verdict"], "ASPHERICAL_CURVATURE");
    assert_eq!(first["bound"], serde_json::json!({"num": -1, "den": 1}));
    assert!(o.stdout.contains("\nN "));

    let o = asphere(&["--format", "json", "classify", "--N", "0..3"]);
    let v = schema("classification.schema.json");
    let lines: Vec<Value> = o.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 1 + 8 + 39 + 62);
    for l in &lines {
        assert_valid(&v, l);
    }
    let ones: Vec<&Value> = lines.iter().filter(|l| l["N"] == 1).collect();
    assert!(ones.iter().all(|l| l["verdict"] == "ASPHERICAL_CURVATURE"));
    assert!(ones.iter().all(|l| l["bound"] == serde_json::json!({"num": -1, "den": 3})));

    let o = asphere(&["--format", "json", "classify", "--case", "d=g, f=i, h=e"]);
    let doc: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_valid(&v, &doc);
    assert_eq!(doc["verdict"], "EXCEPTIONAL");
    assert_eq!(doc["exception_item"], 1);

    let o = asphere(&["--format", "json", "classify", "--case", "ad, ag, dg^-1"]);
    let doc: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_valid(&v, &doc);
    assert_valid(&schema("weight_report.schema.json"), &doc["weight"]["report"]);

    assert_eq!(asphere(&["classify", "--case", "ad, ad^-1"]).code, 2);
    assert_eq!(asphere(&["classify", "--N", "3..1"]).code, 2);
}

#[test]
fn exceptions_listing() {
    let o = asphere(&["exceptions"]);
    assert_eq!(o.stdout.lines().count(), 17);
    assert!(o.stdout.starts_with(" 1. d=g, f=i, h=e\n"));
    assert!(o.stdout.contains("15. a=d, a=g, d=g, c=i, c=f, f=i and R ∈ {he^-1, eb^-1}\n"));
    let o = asphere(&["--format", "json", "exceptions"]);
    let doc: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_valid(&schema("exceptions.schema.json"), &doc);
}

#[test]
fn theory_json_matches_schema() {
    use asphere::theory::CoefficientTheory;
    let v = schema("theory.schema.json");
    for rels in [&[][..], &["a=d^-1", "a=g^-1"], &["a=d", "a=d^-1"], &["h=e"]] {
        let th = CoefficientTheory::base().with_relations(rels.iter().map(|r| r.parse().unwrap())).close();
        assert_valid(&v, &serde_json::to_value(&th).unwrap());
    }
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["classify", "--N", "2..3"][..],
        &["--format", "json", "exceptions"],
        &["stargraph", "--dot", R1, R2],
        &["weightsearch", "t a t c t^-1 d"],
    ] {
        assert_eq!(asphere(args), asphere(args), "{args:?}");
    }
}

#[test]
fn config_files_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("asphere.toml");
    std::fs::write(&cfg, "max_cycle_len = 6\nweight_grid = [\"0\", \"1\"]\noutput_format = \"json\"\n").unwrap();
    let loaded = Config::load(&cfg).unwrap();
    assert_eq!(loaded.max_cycle_len, 6);
    assert_eq!(loaded.weight_grid.len(), 2);
    let o = asphere(&["--config", cfg.to_str().unwrap(), "parse", "a t"]);
    assert!(o.stdout.trim_start().starts_with('{'));
    let o = asphere(&["--config", cfg.to_str().unwrap(), "--format", "text", "parse", "a t"]);
    assert_eq!(o.stdout, "a t\n");

    std::fs::write(&cfg, "max_cycle_len = 1\n").unwrap();
    assert_eq!(asphere(&["--config", cfg.to_str().unwrap(), "exceptions"]).code, 2);
    std::fs::write(&cfg, "weight_grid = []\n").unwrap();
    assert_eq!(asphere(&["--config", cfg.to_str().unwrap(), "exceptions"]).code, 2);
    std::fs::write(&cfg, "colour = \"red\"\n").unwrap();
    assert_eq!(asphere(&["--config", cfg.to_str().unwrap(), "exceptions"]).code, 2);
    assert_eq!(asphere(&["--max-cycle-len", "1", "exceptions"]).code, 2);
    assert_eq!(asphere(&["--grid", "", "exceptions"]).code, 2);
    assert_eq!(Config::default().max_cycle_len, 4);
}

#[test]
fn usage_errors() {
    assert_eq!(asphere(&[]).code, 2);
    assert_eq!(asphere(&["frobnicate"]).code, 2);
    assert_eq!(asphere(&["--help"]).code, 0);
}

#[test]
fn binary_reads_config_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("env.toml");
    std::fs::write(&cfg, "output_format = \"json\"\n").unwrap();
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_asphere"))
        .args(["parse", "a t"])
        .env("ASPHERE_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["word"], "a t");

    let out = std::process::Command::new(env!("CARGO_BIN_EXE_asphere"))
        .args(["parse", "a t^"])
        .env_remove("ASPHERE_CONFIG")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
