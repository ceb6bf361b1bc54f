use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> String {
    root().join("fixtures").join(name).display().to_string()
}

fn twreal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twreal"))
        .args(args)
        .env_remove("TWREAL_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn assert_schema_valid(schema_file: &str, doc: &Value) {
    let schema: Value = serde_json::from_str(
        &std::fs::read_to_string(root().join("schema").join(schema_file)).unwrap(),
    )
    .unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(doc) {
        Ok(()) => Vec::new(),
        Err(errors) => errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect(),
    };
    assert!(msgs.is_empty(), "{schema_file}: {msgs:#?}");
}

#[test]
fn cone_json_reports_ko_two() {
    let o = twreal(&[
        "verify",
        "cone",
        "--modulus",
        "2",
        "--cutoff",
        "4",
        "--algebra-cutoff",
        "4",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["verdict"], "pass");
    assert_eq!(report["ko_dimension"], 2);
    assert_eq!(report["signs"]["epsilon"], -1);
    assert_eq!(report["signs"]["epsilon_prime"], 1);
    assert_eq!(report["signs"]["epsilon_double_prime"], -1);
    assert_schema_valid("report.schema.json", &report);
}

#[test]
fn bad_modulus_exits_two() {
    let o = twreal(&["verify", "cone", "--modulus", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("N must be ≥ 2"), "{}", stderr(&o));
    assert!(stdout(&o).is_empty());
}

#[test]
fn conformal_gns_passes() {
    let o = twreal(&[
        "verify",
        "conformal",
        "--fixture",
        &fixture("gns_m2.json"),
        "--k",
        &fixture("k_21_11.json"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    assert!(
        last.starts_with("PASS (") && last.ends_with(" instances)"),
        "{text}"
    );
}

#[test]
fn fixture_errors_exit_two() {
    let o = twreal(&[
        "verify",
        "conformal",
        "--fixture",
        &fixture("twopoint_negative.json"),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ORDER_ONE_VIOLATED"));

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.json");
    std::fs::write(&empty, "").unwrap();
    let o = twreal(&["verify", "conformal", "--fixture", empty.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("PARSE_ERROR"));

    let mut doc: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("gns_m2.json")).unwrap()).unwrap();
    doc.as_object_mut().unwrap().remove("D");
    let missing = dir.path().join("missing.json");
    std::fs::write(&missing, doc.to_string()).unwrap();
    let o = twreal(&[
        "verify",
        "conformal",
        "--fixture",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("`D`"), "{}", stderr(&o));

    let o = twreal(&[
        "verify",
        "conformal",
        "--fixture",
        dir.path().join("nope.json").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("IO_ERROR"));
}

#[test]
fn axiom_failure_exits_one_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc: Value =
        serde_json::from_str(&std::fs::read_to_string(fixture("gns_m2.json")).unwrap()).unwrap();
    doc["epsilon_prime"] = Value::from(-1);
    let wrong = dir.path().join("wrong_sign.json");
    std::fs::write(&wrong, doc.to_string()).unwrap();
    let args = ["verify", "conformal", "--fixture", wrong.to_str().unwrap()];

    let o = twreal(&args);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.starts_with("FAIL TC #0\n  lhs: "), "{text}");
    assert!(text.lines().last().unwrap().starts_with("FAIL ("));

    let o = twreal(&[&args[..], &["--format", "json"]].concat());
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["verdict"], "fail");
    assert_schema_valid("report.schema.json", &report);
    let saved = dir.path().join("report.json");
    std::fs::write(&saved, stdout(&o)).unwrap();
    let o = twreal(&["replay", saved.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("reproduced TC #0"));
}

#[test]
fn json_is_independent_of_worker_count() {
    let run = |jobs: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_twreal"))
            .args([
                "verify",
                "cone",
                "--modulus",
                "3",
                "--cutoff",
                "4",
                "--format",
                "json",
            ])
            .env("TWREAL_JOBS", jobs)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        o.stdout
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn retwist_and_fluctuate() {
    let gns = fixture("gns_m2.json");
    let k = fixture("k_21_11.json");
    let o = twreal(&[
        "retwist",
        "--fixture",
        &gns,
        "--k",
        &k,
        "--k2",
        &fixture("k_21_11_squared.json"),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = twreal(&[
        "retwist",
        "--fixture",
        &gns,
        "--k",
        &k,
        "--k2",
        &fixture("k_diag_1_4.json"),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("TWIST_INCOMPATIBLE"));
    let o = twreal(&[
        "fluctuate",
        "--fixture",
        &gns,
        "--k",
        &k,
        "--pairs",
        &fixture("pairs_gns.json"),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let axioms: Vec<&str> = report["reports"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["axiom"].as_str().unwrap())
        .collect();
    for want in [
        "ALPHA_PRIME_CENTRAL",
        "FLUCTUATION_CLOSURE",
        "FLUCTUATION_TC",
        "FLUCTUATION_COMPOSITE",
        "TO1",
    ] {
        assert!(axioms.contains(&want), "{want}");
    }
    assert_schema_valid("report.schema.json", &report);
}

#[test]
fn ko_dim_lookup() {
    let o = twreal(&[
        "ko-dim",
        "--epsilon",
        "-1",
        "--epsilon-prime",
        "1",
        "--epsilon-double-prime",
        "-1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("KO-dimension 2"));
    let o = twreal(&[
        "ko-dim",
        "--epsilon",
        "1",
        "--epsilon-prime",
        "-1",
        "--epsilon-double-prime",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("NOT_IN_TABLE"));
}

#[test]
fn bundled_files_match_schemas() {
    for entry in std::fs::read_dir(root().join("fixtures")).unwrap() {
        let path = entry.unwrap().path();
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let schema = if doc.get("k").is_some() {
            "factor.schema.json"
        } else if doc.get("alpha").is_some() {
            "pairs.schema.json"
        } else {
            "fixture.schema.json"
        };
        assert_schema_valid(schema, &doc);
    }
}
