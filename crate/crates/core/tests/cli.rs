use std::process::{Command, Output};

use kernelsplit::report::{
    verify_complement_witness, verify_lien_report, AnalyzeReport, LieReport, LienReport,
    ReproduceReport,
};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kernelsplit"))
        .args(args)
        .env_remove("KERNELSPLIT_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn run_text(args: &[&str]) -> (i32, String) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
    )
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, text) = run_text(args);
    (code, serde_json::from_str(&text).unwrap_or(Value::Null))
}

/// Typed reports are parsed from text: `Value` cannot carry `u128` fields.
fn run_typed<T: serde::de::DeserializeOwned>(args: &[&str]) -> (i32, T) {
    let (code, text) = run_text(args);
    (code, serde_json::from_str(&text).unwrap())
}

fn strip_timing(mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.remove("elapsed_us");
    }
    v
}

fn golden(name: &str) -> Value {
    let path = format!("{}/tests/golden/{name}.json", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn analyze_examples() {
    for (spec, anti, split) in [
        ("A5", true, true),
        ("S5", false, true),
        ("A5 x A5", true, true),
        ("A6", true, false),
    ] {
        let (code, r): (_, AnalyzeReport) = run_typed(&["analyze", spec]);
        assert_eq!(code, 0, "{spec}");
        assert_eq!(r.anti_solvable, anti, "{spec}");
        assert_eq!(r.aut_split, split, "{spec}");
        if let Some(w) = &r.complement {
            verify_complement_witness(w).unwrap();
        }
        assert_eq!(r.complement.is_some(), split);
    }
}

#[test]
fn lie_examples() {
    for (args, want) in [
        (["A", "1", "3", "2"], false),
        (["2D", "4", "3", "1"], false),
        (["A", "1", "2", "3"], true),
    ] {
        let mut full = vec!["lie"];
        full.extend_from_slice(&args);
        let (code, r): (_, LieReport) = run_typed(&full);
        assert_eq!(code, 0);
        assert_eq!(r.verdict.aut_split, want, "{args:?}");
    }
}

#[test]
fn lien_examples() {
    for (f, kappa, want) in [
        ("A5", "1:s", true),
        ("A6", "1:m", false),
        ("A5 x A5", "1:swap", true),
    ] {
        let (code, r): (_, LienReport) =
            run_typed(&["lien", "--f", f, "--gamma", "C2", "--kappa", kappa]);
        assert_eq!(code, 0, "{f}");
        assert_eq!(r.neutral, want, "{f}");
        assert_eq!(r.section.is_some(), want);
        assert_eq!(r.certificate.is_some(), !want);
        assert!(r.tower.agrees_with_search);
        verify_lien_report(&r).unwrap();
    }
}

#[test]
fn tampered_section_is_rejected() {
    let (_, mut r): (_, LienReport) =
        run_typed(&["lien", "--f", "A5", "--gamma", "C2", "--kappa", "1:s"]);
    let identity: Vec<String> = kernelsplit::catalog::alternating(5)
        .unwrap()
        .generators()
        .iter()
        .map(|g| g.to_cycle_string())
        .collect();
    r.section.as_mut().unwrap().generator_images[0] = identity;
    assert!(verify_lien_report(&r).is_err());
}

#[test]
fn json_round_trips() {
    let args = ["lien", "--f", "PSL(2,7)", "--gamma", "S3", "--kappa", "1:s"];
    let (code, text) = run_text(&args);
    assert_eq!(code, 0);
    let r: LienReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap(), text.trim_end());
    let (_, text) = run_text(&["analyze", "S3 x S3"]);
    let r: AnalyzeReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap(), text.trim_end());
}

#[test]
fn reports_are_stable_across_runs() {
    for args in [
        &["analyze", "A6"][..],
        &[
            "lien",
            "--f",
            "A5 x A5",
            "--gamma",
            "C2 x C2",
            "--kappa",
            "1:swap,2:o1",
        ][..],
    ] {
        let a = strip_timing(run_json(args).1);
        let b = strip_timing(run_json(args).1);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn golden_reports() {
    assert_eq!(
        strip_timing(run_json(&["lie", "A", "1", "3", "2"]).1),
        golden("lie_a1_9")
    );
    assert_eq!(
        strip_timing(run_json(&["analyze", "C3"]).1),
        golden("analyze_c3")
    );
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", "B5"]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "perm:(1 2"]).status.code(), Some(2));
    assert_eq!(run(&["lie", "A", "1", "4", "1"]).status.code(), Some(2));
    assert_eq!(run(&["lie", "A", "1", "2", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["lien", "--f", "A5", "--gamma", "C2", "--kappa", "x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["analyze", "S8"]).status.code(), Some(3));
    assert_eq!(
        run(&["lien", "--f", "A5", "--gamma", "C3", "--kappa", "1:s"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["lien", "--f", "S3", "--gamma", "C5"]).status.code(),
        Some(0)
    );
}

#[test]
fn human_output() {
    let out = run(&["lien", "--f", "A6", "--gamma", "C2", "--kappa", "1:m"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("neutral    no"));
    assert!(text.contains("certificate"));
    let out = run(&["analyze", "A5"]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("aut-split        yes"));
}

#[test]
fn reproduce_succeeds() {
    let (code, r): (_, ReproduceReport) = run_typed(&["reproduce"]);
    assert_eq!(code, 0);
    assert!(r.failures.is_empty());
    let a6 = r.a6.unwrap();
    assert_eq!(a6.classes.len(), 3);
    assert_eq!(a6.non_neutral, 1);
    assert_eq!(r.sweep_total, r.sweep.len());
    assert_eq!(r.sweep_neutral, r.sweep_total);
    let mut keys: Vec<_> = r
        .sweep
        .iter()
        .map(|c| (c.f.clone(), c.gamma.clone(), c.kappa.clone()))
        .collect();
    let before = keys.clone();
    keys.sort();
    assert_eq!(keys, before);
}
