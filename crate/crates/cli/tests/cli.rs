use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sprimary::scenario::parse_scenario;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sprimary"))
}

fn dir(sub: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn fixture(name: &str) -> PathBuf {
    dir("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("UTF-8 output")
}

/// Compares against a committed report; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, args: &[&str]) {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let path = dir("golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &o.stdout).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap();
    assert_eq!(stdout(&o), expected, "report differs from {}", path.display());
}

#[test]
fn classify_reports_match_goldens() {
    for f in ["z18", "z12_delta"] {
        let scn = fixture(&format!("{f}.scn"));
        let scn = scn.to_str().unwrap();
        golden(&format!("{f}_classify.json"), &["classify", scn, "--format", "machine"]);
        golden(&format!("{f}_lattice.json"), &["lattice", scn, "--format", "machine"]);
    }
}

#[test]
fn search_report_matches_golden() {
    let scn = fixture("z12_delta.scn");
    golden(
        "z12_delta_search.json",
        &[
            "search",
            "--scenario",
            scn.to_str().unwrap(),
            "--holds",
            "phi-delta-s-primary",
            "--fails",
            "delta-s-primary",
            "--format",
            "machine",
        ],
    );
}

#[test]
fn z18_scenario_is_phi_delta_s_primary() {
    let o = run(&["classify", fixture("z18.scn").to_str().unwrap(), "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["payload"]["verdict"]["holds"], true);
    assert_eq!(v["payload"]["verdict"]["reduced"], "{0,6,12}");
    assert_eq!(v["payload"]["verdict"]["expanded"], "3Z");
}

#[test]
fn z12_scenario_separates_the_two_notions() {
    let o = run(&["classify", fixture("z12_delta.scn").to_str().unwrap(), "--format", "machine"]);
    let p = &serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()["payload"];
    assert_eq!(p["verdict"]["holds"], true);
    assert_eq!(p["verdict"]["reduced"], "{0,4,8}");
    assert_eq!(p["delta_s_verdict"]["holds"], false);
    assert_eq!(p["delta_s_verdict"]["counterexample"]["a"], "2");
    assert_eq!(p["delta_s_verdict"]["counterexample"]["m"], "2");
}

#[test]
fn fixtures_round_trip() {
    for entry in std::fs::read_dir(dir("fixtures")).unwrap() {
        let text = std::fs::read_to_string(entry.unwrap().path()).unwrap();
        let s = parse_scenario(&text).unwrap();
        assert_eq!(parse_scenario(&s.serialize()).unwrap(), s);
    }
}

#[test]
fn product_scenario_classifies() {
    let o = run(&["classify", fixture("product.scn").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("φ-δ-S-primary"));
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "--suite", "P05,P12", "--max-module-size", "12"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("2 propositions, 0 violations"));
    let corrupt = run(&["verify", "--suite", "P05", "--max-module-size", "12", "--corrupt-classify"]);
    assert_eq!(corrupt.status.code(), Some(1));
}

#[test]
fn full_suite_reports_every_proposition() {
    let o = run(&["verify", "--format", "machine"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let reports = v["payload"]["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 27);
    // The idempotent-reduction statement has counterexamples; see the README.
    assert_eq!(v["payload"]["summary"]["failing"], serde_json::json!(["P14"]));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reports_do_not_depend_on_the_seed() {
    let args = |seed: &'static str| {
        ["verify", "--suite", "all", "--max-module-size", "8", "--seed", seed, "--format", "machine"]
    };
    assert_eq!(run(&args("1")).stdout, run(&args("99")).stdout);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["verify", "--suite", "P99"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "/nonexistent.scn"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("sprimary-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let huge = dir.join("huge.scn");
    std::fs::write(&huge, "[ring]\ncomponents = Z\n[module]\norders = 1000000000\n").unwrap();
    let o = run(&["classify", huge.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds the bound"));
    let no_submodule = dir.join("bare.scn");
    std::fs::write(&no_submodule, "[ring]\ncomponents = Z\n[module]\norders = 6\n").unwrap();
    assert_eq!(run(&["classify", no_submodule.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["lattice", no_submodule.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn search_reports_none() {
    let o = run(&["search", "--holds", "prime", "--fails", "prime"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "holds prime, fails prime: none\n");
}

#[test]
fn output_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("sprimary-out-{}.json", std::process::id()));
    let o = run(&[
        "classify",
        fixture("z18.scn").to_str().unwrap(),
        "--format",
        "machine",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.contains("\"schema_version\": 1"));
}
