//! Drives the command-line binary over every fixture directory.

mod common;

use std::path::Path;
use std::process::Command;

use common::fixtures_dir;
use daerealize::cli::{parse_dae, SystemSource};
use serde_json::Value;

fn daerealize(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_daerealize"))
        .arg("--json")
        .args(args)
        .env_remove("DAEREALIZE_BRANCH_LOG")
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exit code");
    let stream = if code == 3 { &out.stderr } else { &out.stdout };
    let json: Value = serde_json::from_slice(stream).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    (code, json)
}

fn status_code(status: &str) -> i32 {
    match status {
        "TRUE" | "OK" | "REALIZED" => 0,
        "FALSE" | "NO" => 1,
        "UNSUPPORTED" => 2,
        _ => 3,
    }
}

fn path(dir: &Path, file: &str) -> String {
    dir.join(file).to_string_lossy().into_owned()
}

fn check_status(what: &str, (code, json): &(i32, Value), expected: &str) {
    assert_eq!(json["status"], expected, "{what}: {json}");
    assert_eq!(*code, status_code(expected), "{what}: exit code");
}

fn check_fixture(dir: &Path) {
    let name = dir.file_name().unwrap().to_string_lossy().into_owned();
    let expected: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("expected.json")).unwrap()).unwrap();
    let (system, dae) = (path(dir, "system.json"), path(dir, "dae.txt"));

    let verify = daerealize(&["verify", "--system", &system, "--dae", &dae]);
    check_status(&format!("{name} verify"), &verify, expected["verify"].as_str().unwrap());

    let io = daerealize(&["io", "--system", &system]);
    check_status(&format!("{name} io"), &io, expected["io"].as_str().unwrap());
    if io.1["status"] == "OK" {
        let src = SystemSource::from_json(&std::fs::read_to_string(&system).unwrap()).unwrap();
        let text = std::fs::read_to_string(&dae).unwrap();
        let fixture = parse_dae(&text, &src.param_vars()).unwrap();
        let computed = parse_dae(io.1["equation"].as_str().unwrap(), &src.param_vars()).unwrap();
        assert_eq!(computed.monic(), fixture.monic(), "{name}: io equation differs from the fixture");
    }

    for case in expected["realize"].as_array().into_iter().flatten() {
        let mode = case["mode"].as_str().unwrap();
        let out = daerealize(&["realize", "--dae", &dae, "--mode", mode]);
        check_status(&format!("{name} realize {mode}"), &out, case["status"].as_str().unwrap());
        if let Some(output) = case.get("output") {
            assert_eq!(&out.1["system"]["output"], output, "{name} realize {mode}");
        }
        if let Some(n) = case.get("dimension") {
            assert_eq!(out.1["system"]["states"].as_array().map(|s| s.len() as u64), n.as_u64(), "{name} realize {mode}");
        }
    }

    for case in expected["realizations"].as_array().into_iter().flatten() {
        let file = path(dir, case["system"].as_str().unwrap());
        let out = daerealize(&["verify", "--system", &file, "--dae", &dae]);
        check_status(&format!("{name} verify {file}"), &out, case["verify"].as_str().unwrap());
    }
}

#[test]
fn every_fixture_matches_its_expectations() {
    let mut dirs: Vec<_> = std::fs::read_dir(fixtures_dir()).unwrap().map(|e| e.unwrap().path()).filter(|p| p.is_dir()).collect();
    dirs.sort();
    assert!(dirs.len() >= 4);
    for dir in dirs {
        check_fixture(&dir);
    }
}

#[test]
fn json_output_is_byte_stable() {
    let dae = path(&fixtures_dir().join("pp_y1"), "dae.txt");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_daerealize"))
            .args(["--json", "realize", "--dae", &dae, "--mode", "order-zero"])
            .env_remove("DAEREALIZE_BRANCH_LOG")
            .output()
            .unwrap()
            .stdout
    };
    let first = run();
    assert!(!first.is_empty());
    assert_eq!(first, run());
}

#[test]
fn realized_output_round_trips_through_verify() {
    let dir = fixtures_dir().join("pp_y1");
    let dae = path(&dir, "dae.txt");
    let (_, report) = daerealize(&["realize", "--dae", &dae, "--mode", "order-zero"]);
    let tmp = std::env::temp_dir().join(format!("daerealize-{}.json", std::process::id()));
    std::fs::write(&tmp, serde_json::to_string(&report["system"]).unwrap()).unwrap();
    let params = SystemSource::from_json(&std::fs::read_to_string(&tmp).unwrap()).unwrap().params;
    assert!(!params.is_empty());
    let verify = daerealize(&["verify", "--system", tmp.to_str().unwrap(), "--dae", &dae]);
    std::fs::remove_file(&tmp).ok();
    check_status("realized system", &verify, "TRUE");
}

#[test]
fn usage_errors_report_exit_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_daerealize")).args(["realize"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_daerealize")).args(["--version"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}
