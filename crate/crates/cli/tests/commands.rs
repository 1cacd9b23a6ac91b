use std::path::PathBuf;
use std::process::Command;

use algebra_spec::{load_spec, AlgebraElement};
use mpdo::{build_rho, read_matrix, StateMetadata};
use serde_json::Value;

fn preset(name: &str) -> String {
    let p: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "..",
        "..",
        "presets",
        &format!("{name}.json"),
    ]
    .iter()
    .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wha"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn report(args: &[&str]) -> (i32, Value) {
    let (code, stdout, stderr) = run(args);
    let v = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout} {stderr}"));
    (code, v)
}

#[test]
fn validate_group_algebra() {
    let (code, r) = report(&["validate", &preset("z2")]);
    assert_eq!(code, 0);
    assert_eq!(r["pass"], true);
    assert_eq!(r["measurements"]["is_hopf"], true);
    let (code, r) = report(&["validate", "--spec", &preset("lee_yang")]);
    assert_eq!(code, 0);
    assert_eq!(r["measurements"]["is_hopf"], false);
    assert_eq!(r["measurements"]["is_weak_hopf"], true);
}

#[test]
fn info_reports_the_golden_ratio() {
    let (code, r) = report(&["info", &preset("lee_yang")]);
    assert_eq!(code, 0);
    let dims = r["measurements"]["fp_dims"].as_array().unwrap();
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    assert!(dims
        .iter()
        .any(|d| (d.as_f64().unwrap() - golden).abs() <= 1e-10));
    assert!((r["measurements"]["d2"].as_f64().unwrap() - (5.0 + 5f64.sqrt()) / 2.0).abs() <= 1e-10);
    assert_eq!(r["measurements"]["biconnected"], true);
}

#[test]
fn circuit_suite_on_lee_yang() {
    let (code, r) = report(&["verify", &preset("lee_yang"), "--suite", "circuit"]);
    assert_eq!(code, 0);
    let c = &r["checks"]["circuit.unit.n4"];
    assert!(c["residual"].as_f64().unwrap() <= 1e-8);
    assert_eq!(c["tolerance"].as_f64().unwrap(), 1e-8);
    assert!(r["measurements"]["circuit.chihat1_attempt.n4"].is_number());
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", &preset("z2"), "--suite", "rfp"];
    let (c1, a, _) = run(&args);
    let (c2, b, _) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert!(!a.contains("timings"));
    let (_, r) = report(&["verify", &preset("z2"), "--suite", "rfp", "--timings"]);
    assert!(r["timings"].is_object());
}

#[test]
fn fingerprint_is_independent_of_formatting() {
    let dir = tempfile::tempdir().unwrap();
    let spec: Value =
        serde_json::from_str(&std::fs::read_to_string(preset("z2")).unwrap()).unwrap();
    let compact = dir.path().join("z2_compact.json");
    std::fs::write(&compact, serde_json::to_string(&spec).unwrap()).unwrap();
    let (_, a) = report(&["validate", &preset("z2")]);
    let (_, b) = report(&["validate", compact.to_str().unwrap()]);
    assert_eq!(a["spec_sha256"], b["spec_sha256"]);
    assert_eq!(a["spec_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn exit_codes() {
    let (code, _, err) = run(&["validate", "no/such/file.json"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, err) = run(&["verify", &preset("lee_yang"), "--suite", "hopf-special"]);
    assert_eq!(code, 2, "{err}");
    let (code, _, _) = run(&["verify", &preset("z2"), "--suite", "nonsense"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["mpdo", &preset("lee_yang"), "--n", "6"]);
    assert_eq!(code, 2);
    // Witness distance 0.4 does not exceed a threshold of 0.5.
    let (code, r) = report(&["witness-nogluing", &preset("lee_yang"), "--tol", "0.5"]);
    assert_eq!(code, 1);
    assert_eq!(r["pass"], false);
    let (code, r) = report(&["witness-nogluing", &preset("lee_yang")]);
    assert_eq!(code, 0);
    assert!(
        (r["checks"]["nogluing.distance"]["residual"]
            .as_f64()
            .unwrap()
            - 0.4)
            .abs()
            <= 1e-9
    );
}

#[test]
fn mpdo_dump_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rho.bin");
    let (code, r) = report(&[
        "mpdo",
        &preset("lee_yang"),
        "--x",
        "unit",
        "--n",
        "2",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(r["measurements"]["dump_sha256"].is_string());
    let bytes = std::fs::read(&out).unwrap();
    let nl = bytes.iter().position(|&b| b == b'\n').unwrap();
    let meta: StateMetadata = serde_json::from_slice(&bytes[..nl]).unwrap();
    assert_eq!((meta.rows, meta.n_sites, meta.site_dim), (25, 2, 5));
    let rho = read_matrix(&bytes[nl + 1..], meta.rows, meta.cols).unwrap();
    let spec = load_spec(preset("lee_yang")).unwrap();
    let d = wha_engine::distinguished_elements(&spec).unwrap();
    let expected = build_rho(&spec, &d, &spec.unit(), 2).unwrap().rho;
    assert_eq!(rho, expected);
}

#[test]
fn element_files_select_x() {
    let dir = tempfile::tempdir().unwrap();
    let spec = load_spec(preset("z2")).unwrap();
    let x = AlgebraElement::from_real(&[1.0, 0.5]);
    let coeffs: Vec<[f64; 2]> = x.coeffs().iter().map(|z| [z.re, z.im]).collect();
    let path = dir.path().join("x.json");
    std::fs::write(&path, serde_json::to_string(&coeffs).unwrap()).unwrap();
    let (code, r) = report(&[
        "verify",
        &preset("z2"),
        "--suite",
        "rfp",
        "--x",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(
        r["checks"]
            .as_object()
            .unwrap()
            .keys()
            .filter(|k| k.starts_with("rfp."))
            .count(),
        2
    );
    std::fs::write(&path, "[1.0]").unwrap();
    let (code, _, _) = run(&["mpdo", &preset("z2"), "--x", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    // −1 is not a positive element.
    std::fs::write(&path, "[-1.0, 0.0]").unwrap();
    let (code, _, _) = run(&["mpdo", &preset("z2"), "--x", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(spec.n(), 2);
}

#[test]
fn exported_presets_match_committed_files() {
    for (name, file) in [
        ("z2", "z2"),
        ("fun-z2", "fun_z2"),
        ("s3", "s3"),
        ("h8", "h8"),
        ("lee-yang", "lee_yang"),
    ] {
        let (code, text, _) = run(&["export-preset", name]);
        assert_eq!(code, 0);
        assert_eq!(
            text,
            std::fs::read_to_string(preset(file)).unwrap(),
            "{name}"
        );
    }
}
