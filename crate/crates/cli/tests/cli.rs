use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_groupsmith"))
        .args(args)
        .env_remove("GROUPSMITH_CAP")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json", "--no-timing"]);
    let out = run(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn schema() -> Value {
    let text = include_str!("../../../docs/report.schema.json");
    serde_json::from_str(text).unwrap()
}

fn type_matches(v: &Value, ty: &str) -> bool {
    match ty {
        "string" => v.is_string(),
        "number" => v.is_number(),
        "null" => v.is_null(),
        "object" => v.is_object(),
        "array" => v.is_array(),
        _ => false,
    }
}

/// Checks the subset of JSON Schema the report schema uses.
fn conforms(v: &Value, s: &Value) -> Result<(), String> {
    if let Some(ty) = s.get("type") {
        let ok = match ty {
            Value::String(t) => type_matches(v, t),
            Value::Array(ts) => ts.iter().any(|t| type_matches(v, t.as_str().unwrap())),
            _ => false,
        };
        if !ok {
            return Err(format!("{v} is not {ty}"));
        }
    }
    if let Some(allowed) = s.get("enum").and_then(Value::as_array) {
        if !allowed.contains(v) {
            return Err(format!("{v} not in enum"));
        }
    }
    if let Some(obj) = v.as_object() {
        for key in s.get("required").and_then(Value::as_array).into_iter().flatten() {
            if !obj.contains_key(key.as_str().unwrap()) {
                return Err(format!("missing {key}"));
            }
        }
        let props = s.get("properties").and_then(Value::as_object);
        for (k, child) in obj {
            match props.and_then(|p| p.get(k)) {
                Some(sub) => conforms(child, sub)?,
                None if s.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    return Err(format!("unexpected key {k}"))
                }
                None => {}
            }
        }
    }
    if let (Some(items), Some(arr)) = (s.get("items"), v.as_array()) {
        for item in arr {
            conforms(item, items)?;
        }
    }
    Ok(())
}

#[test]
fn adjoin_sqrt_of_transposition_gives_36() {
    let v = json(&["adjoin-sqrt", "--group", "S3", "--element", "(1 2)"]);
    assert_eq!(v["result"]["overgroup_order"], 36);
    assert!(v["assertions"].as_array().unwrap().iter().all(|a| a["status"] == "pass"));
}

#[test]
fn every_subcommand_conforms_to_schema() {
    let s = schema();
    let cases: &[&[&str]] = &[
        &["construct", "--group", "D5"],
        &["construct", "--group", "S3", "--n", "2"],
        &["adjoin-sqrt", "--group", "D7", "--element", "s"],
        &["adjoin-nth-root", "--group", "Z5", "--element", "1", "--n", "3"],
        &["solve-positive", "--group", "S3", "--equation", "(1 2)*x*(2 3)*x*"],
        &["solve-positive", "--group", "D5", "--n", "3", "--seed", "4"],
        &["lemma7-check", "--group", "Z6", "--element", "1"],
        &["lemma8-check", "--group", "Z6", "--subgroup", "2"],
        &["lemma8-check", "--group", "S3", "--subgroup", "(1 2 3)"],
        &["prop1-embed", "--group", "S3", "--element", "(1 2)"],
        &["theorem1-verify", "--p", "3"],
        &["theorem1-verify", "--p", "3", "--m", "6", "--kind", "doubled", "--cap", "1000"],
        &["residue-check", "--max-p", "100"],
        &["search", "--p", "3", "--m", "6", "--cap", "1000"],
    ];
    for args in cases {
        let v = json(args);
        conforms(&v, &s).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert_eq!(v["command"], args[0]);
        assert!(v["timing_ms"].is_null());
    }
}

#[test]
fn schema_checker_rejects_bad_reports() {
    let s = schema();
    let mut v = json(&["residue-check", "--max-p", "20"]);
    v["assertions"][0]["status"] = "maybe".into();
    assert!(conforms(&v, &s).is_err());
    let mut v = json(&["residue-check", "--max-p", "20"]);
    v.as_object_mut().unwrap().remove("params");
    assert!(conforms(&v, &s).is_err());
}

#[test]
fn no_timing_output_is_byte_identical() {
    let args = ["solve-positive", "--group", "S3", "--n", "3", "--seed", "9", "--format", "json", "--no-timing"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let mut w = args.to_vec();
    w.extend(["--workers", "1"]);
    assert_eq!(run(&w).stdout, a.stdout);
}

#[test]
fn residue_check_has_no_mismatches() {
    let v = json(&["residue-check"]);
    assert_eq!(v["result"]["primes"], 167);
    assert_eq!(v["result"]["mismatches"], Value::Array(vec![]));
    let csv = run(&["residue-check", "--max-p", "13", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("p,p_mod_4,minus_one_square,mismatch"));
    assert_eq!(text.lines().count(), 6);
    assert!(text.contains("\n13,1,true,false\n"));
}

#[test]
fn search_natural_is_vacuous_and_doubled_reaches_36() {
    let v = json(&["search", "--p", "3", "--m", "6", "--cap", "1000"]);
    assert_eq!(v["result"]["verdict"], "vacuous");
    assert_eq!(v["result"]["roots"], 0);
    let v = json(&["search", "--p", "3", "--m", "6", "--kind", "doubled", "--cap", "1000"]);
    assert_eq!(v["result"]["minimum"]["order"], "36");
    assert_eq!(v["result"]["verdict"], "holds");
    let csv = run(&["search", "--p", "3", "--m", "6", "--kind", "doubled", "--cap", "1000", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "order,count\n36,2\n120,2\n");
}

#[test]
fn exit_codes() {
    let ok = run(&["construct", "--group", "Z4"]);
    assert_eq!(code(&ok), 0);

    // Unknown family: parse error, one line on stderr.
    let bad = run(&["construct", "--group", "Q8"]);
    assert_eq!(code(&bad), 2);
    let err = String::from_utf8(bad.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error kind=parse:"), "{err}");

    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["search", "--p", "3"])), 2);
    assert_eq!(code(&run(&["theorem1-verify", "--p", "5"])), 2);
    assert_eq!(code(&run(&["construct", "--group", "S3", "--format", "csv"])), 2);
    assert_eq!(code(&run(&["solve-positive", "--group", "S3"])), 2);

    let capped = run(&["solve-positive", "--group", "S3", "--equation", "(1 2)*x*()*x*", "--cap", "10"]);
    assert_eq!(code(&capped), 3);
    assert!(String::from_utf8(capped.stderr).unwrap().starts_with("error kind=resource-cap"));
    assert_eq!(code(&run(&["construct", "--group", "S5", "--cap", "50"])), 3);

    assert_eq!(code(&run(&["--help"])), 0);
}

#[test]
fn environment_cap_applies_without_flag() {
    let out = Command::new(env!("CARGO_BIN_EXE_groupsmith"))
        .args(["construct", "--group", "S5"])
        .env("GROUPSMITH_CAP", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_groupsmith"))
        .args(["construct", "--group", "S5", "--cap", "200"])
        .env("GROUPSMITH_CAP", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn lemma8_reports_non_normal_witness() {
    let v = json(&["lemma8-check", "--group", "S3", "--subgroup", "(1 2 3)"]);
    assert_eq!(v["result"]["k_normal"], false);
    assert_eq!(v["result"]["witness"][0], "[(1 2 3),(1 3 2);0]");
    let v = json(&["lemma8-check", "--group", "Z6", "--subgroup", "2"]);
    assert_eq!(v["result"]["quotient_order"], 24);
}

#[test]
fn random_equation_depends_only_on_seed() {
    let a = json(&["solve-positive", "--group", "D5", "--n", "3", "--seed", "11"]);
    let b = json(&["solve-positive", "--group", "D5", "--n", "3", "--seed", "11"]);
    let c = json(&["solve-positive", "--group", "D5", "--n", "3", "--seed", "12"]);
    assert_eq!(a["result"]["equation"], b["result"]["equation"]);
    assert_ne!(a["result"]["equation"], c["result"]["equation"]);
}
