use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const FEASIBLE: &str = "bifactor 1\nxy 1 1\nedge 0 0 3\ngx 2\nfx 3\nfy 2\n";
const INFEASIBLE: &str = "bifactor 1\nxy 2 1\nedge 0 0 1\nedge 1 0 1\ngx 1 1\nfx 1 1\nfy 1\n";

fn bifactor(args: &[&str], stdin: &str) -> Output {
    bifactor_env(args, stdin, &[])
}

fn bifactor_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_bifactor"))
        .args(args)
        .envs(env.iter().copied())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn validate_reports_and_rejects() {
    let out = bifactor(&["validate"], FEASIBLE);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["total_multiplicity"], 3);

    let out = bifactor(&["validate"], "bifactor 1\nxy 1 1\ngx 2\nfx 1\nfy 0\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("g exceeds f at x=0"));
}

#[test]
fn solve_exit_codes() {
    let out = bifactor(&["solve"], FEASIBLE);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["edges"], serde_json::json!([[0, 0, 2]]));

    let out = bifactor(&["solve", "-"], INFEASIBLE);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["kind"], "certificate");
    assert_eq!(v["a"], serde_json::json!([0, 1]));
    assert_eq!(v["b"], serde_json::json!([0]));
    assert_eq!(v["deficiency"], 1);
}

#[test]
fn solve_output_pipes_into_verifiers() {
    let dir = tempfile::tempdir().unwrap();
    for (text, verifier) in [(FEASIBLE, "verify-factor"), (INFEASIBLE, "verify-cert")] {
        let path = write(dir.path(), "inst.txt", text);
        let solved = bifactor(&["solve", &path], "");
        let doc = String::from_utf8(solved.stdout).unwrap();
        let out = bifactor(&[verifier, &path], &doc);
        assert_eq!(out.status.code(), Some(0), "{verifier}");
        assert_eq!(json(&out)["valid"], true);

        let doc_path = write(dir.path(), "doc.json", &doc);
        assert_eq!(
            bifactor(&[verifier, &path, &doc_path], "").status.code(),
            Some(0)
        );
    }
}

#[test]
fn verifiers_reject_bad_documents() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "inst.txt", INFEASIBLE);

    let stale = r#"{"kind":"certificate","a":[0,1],"b":[0],"deficiency":5}"#;
    let out = bifactor(&["verify-cert", &path], stale);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["recomputed"], 1);

    let over = r#"{"kind":"factor","edges":[[0,0,1],[1,0,1]]}"#;
    let out = bifactor(&["verify-factor", &path], over);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["violations"][0]
        .as_str()
        .unwrap()
        .contains("upper bound at y=0"));

    let unknown = r#"{"kind":"factor","edges":[[0,5,1]]}"#;
    assert_eq!(
        bifactor(&["verify-factor", &path], unknown).status.code(),
        Some(2)
    );

    let wrong_kind = r#"{"kind":"no-factor"}"#;
    assert_eq!(
        bifactor(&["verify-cert", &path], wrong_kind).status.code(),
        Some(2)
    );
}

#[test]
fn check_every_criterion() {
    for (criterion, extra) in [
        ("new", None),
        ("cymer-kano", None),
        ("heinrich", None),
        ("hall", Some("1")),
    ] {
        let mut args = vec!["check", "--criterion", criterion];
        if let Some(m) = extra {
            args.extend(["--m-floor", m]);
        }
        let out = bifactor(&args, INFEASIBLE);
        assert_eq!(out.status.code(), Some(1), "{criterion}");
        let v = json(&out);
        assert_eq!(v["holds"], false);
        assert!(v["witness"]["required"].as_u64() > v["witness"]["available"].as_u64());

        let out = bifactor(&args, "bifactor 1\nxy 1 1\nedge 0 0 1\ngx 1\nfx 1\nfy 1\n");
        assert_eq!(out.status.code(), Some(0), "{criterion}");
        assert!(json(&out).get("witness").is_none());
    }
    let out = bifactor(
        &["check", "--criterion", "ore"],
        "bifactor 1\nxy 1 1\nedge 0 0 1\ngx 1\nfx 1\nfy 1\n",
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn hall_not_applicable_is_an_input_error() {
    let out = bifactor(
        &["check", "--criterion", "hall", "--m-floor", "2"],
        INFEASIBLE,
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("corollary not applicable"));
}

#[test]
fn exhaustion_limit_from_environment() {
    let args = ["check", "--criterion", "heinrich"];
    let out = bifactor_env(&args, INFEASIBLE, &[("BIFACTOR_EXHAUSTION_LIMIT", "2")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exhaustion limit exceeded"));
    let out = bifactor_env(&args, INFEASIBLE, &[("BIFACTOR_EXHAUSTION_LIMIT", "3")]);
    assert_eq!(out.status.code(), Some(1));
    let out = bifactor_env(&args, INFEASIBLE, &[("BIFACTOR_EXHAUSTION_LIMIT", "lots")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_find_and_count() {
    let out = bifactor(&["oracle"], FEASIBLE);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["edges"], serde_json::json!([[0, 0, 2]]));

    let out = bifactor(&["oracle"], INFEASIBLE);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["kind"], "no-factor");

    let out = bifactor(&["oracle", "--count"], FEASIBLE);
    assert_eq!(json(&out)["count"], 1);

    let out = bifactor(&["oracle", "--budget", "3"], FEASIBLE);
    assert_eq!(out.status.code(), Some(2));

    // gy block is honoured by the oracle
    let with_gy = "bifactor 1\nxy 1 1\nedge 0 0 3\ngx 0\nfx 3\nfy 3\ngy 3\n";
    let out = bifactor(&["oracle"], with_gy);
    assert_eq!(json(&out)["edges"], serde_json::json!([[0, 0, 3]]));
}

#[test]
fn gen_is_deterministic_and_parseable() {
    let args = [
        "gen",
        "--x-count",
        "6",
        "--y-count",
        "5",
        "--edge-prob",
        "0.4",
        "--max-mult",
        "3",
        "--g-max",
        "2",
        "--f-slack",
        "1",
        "--seed",
        "42",
    ];
    let a = bifactor(&args, "");
    let b = bifactor(&args, "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(bifactor(&["validate"], &text).status.code(), Some(0));
    let solved = bifactor(&["solve"], &text);
    assert!(matches!(solved.status.code(), Some(0) | Some(1)));

    let mut other = args.to_vec();
    *other.last_mut().unwrap() = "43";
    assert_ne!(bifactor(&other, "").stdout, text.as_bytes());
}

#[test]
fn parse_errors_exit_two() {
    let dup = "bifactor 1\nxy 1 1\nedge 0 0 1\nedge 0 0 1\ngx 1\nfx 1\nfy 1\n";
    let out = bifactor(&["solve"], dup);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(
        err.contains("line 4") && err.contains("duplicate edge"),
        "{err}"
    );

    assert_eq!(
        bifactor(&["solve", "/nonexistent/file"], "").status.code(),
        Some(2)
    );
    assert_eq!(bifactor(&["check"], INFEASIBLE).status.code(), Some(2));
}

#[test]
fn repeated_solves_are_byte_identical() {
    let a = bifactor(&["solve"], INFEASIBLE).stdout;
    let b = bifactor(&["solve"], INFEASIBLE).stdout;
    assert_eq!(a, b);
}
