//! End-to-end tests of the command-line interface: exit codes, output
//! formats and the generate -> verify round trip.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sl2r-biharmonic"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn binary")
}

fn tmp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("sl2r-cli-{}-{name}", std::process::id()));
    p
}

#[test]
fn classify_reports_case_and_constants() {
    let out = run(&["classify", "--tau", "1", "--cos2theta", "0.95"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["case"], "less");
    assert!((v["a"].as_f64().unwrap() - 1.2271584).abs() <= 1e-6);
    assert!((v["b"].as_f64().unwrap() + 2.1824185).abs() <= 1e-6);
    assert!((v["equal_case_cos2theta"].as_f64().unwrap() - 0.9).abs() <= 1e-12);

    let out = run(&["classify", "--tau", "1", "--cos2theta", "0.895"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["case"], "greater");
}

#[test]
fn classify_rejects_inadmissible_angle() {
    let out = run(&["classify", "--tau", "1", "--cos2theta", "0.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("inadmissible"));
}

#[test]
fn generate_verify_round_trip() {
    for (family, angle) in [
        ("equal", None),
        ("greater", Some("0.895")),
        ("less", Some("0.95")),
    ] {
        let csv = tmp_path(&format!("{family}.csv"));
        let csv_str = csv.to_str().unwrap();
        let mut args = vec![
            "generate",
            "--tau",
            "1",
            "--family",
            family,
            "--s-min",
            "-1",
            "--s-max",
            "1",
            "--samples",
            "401",
            "--out",
            csv_str,
        ];
        if let Some(a) = angle {
            args.extend(["--cos2theta", a]);
        }
        let out = run(&args);
        assert!(out.status.success(), "generate {family}: {:?}", out);

        let text = std::fs::read_to_string(&csv) .unwrap();
        assert!(text.starts_with("s,x1,x2,x3,x4\n"));
        assert_eq!(text.lines().count(), 402);

        let mut vargs = vec!["verify", csv_str, "--tau", "1"];
        let effective = angle.unwrap_or("0.9");
        vargs.extend(["--cos2theta", effective]);
        let out = run(&vargs);
        assert!(out.status.success(), "verify {family}: {:?}", out);
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(v["overall"], true);
        std::fs::remove_file(&csv).ok();
    }
}

#[test]
fn verify_flags_perturbed_curve() {
    let csv = tmp_path("perturb.csv");
    let csv_str = csv.to_str().unwrap();
    let out = run(&[
        "generate", "--tau", "1", "--family", "less", "--cos2theta", "0.95", "--s-min", "-1",
        "--s-max", "1", "--samples", "401", "--out", csv_str,
    ]);
    assert!(out.status.success());

    // bump one coordinate of one interior row
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut fields: Vec<String> = lines[200].split(',').map(String::from).collect();
    let x1: f64 = fields[1].parse().unwrap();
    fields[1] = format!("{:.16e}", x1 + 1e-4);
    lines[200] = fields.join(",");
    std::fs::write(&csv, lines.join("\n")).unwrap();

    let out = run(&["verify", csv_str, "--tau", "1", "--cos2theta", "0.95"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["overall"], false);
    std::fs::remove_file(&csv).ok();
}

#[test]
fn generate_rejects_commuting_matrix_for_greater() {
    let mat = tmp_path("identity.json");
    std::fs::write(&mat, "[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]").unwrap();
    let out = run(&[
        "generate", "--tau", "1", "--family", "greater", "--cos2theta", "0.895", "--matrix",
        mat.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("anticommute"));
    std::fs::remove_file(&mat).ok();
}

#[test]
fn generate_requires_angle_for_nonequal_families() {
    let out = run(&["generate", "--tau", "1", "--family", "less"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--cos2theta"));
}

#[test]
fn generate_json_with_derivatives() {
    let out = run(&[
        "generate", "--tau", "1", "--family", "equal", "--s-min", "0", "--s-max", "1",
        "--samples", "11", "--format", "json", "--with-derivatives",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0]["s"], 0.0);
    assert_eq!(rows[0]["gamma"].as_array().unwrap().len(), 4);
    assert_eq!(rows[0]["derivatives"].as_array().unwrap().len(), 4);
}

#[test]
fn hopf_projects_to_hyperbolic_quadric() {
    let csv = tmp_path("hopf-in.csv");
    let csv_str = csv.to_str().unwrap();
    let out = run(&[
        "generate", "--tau", "1", "--family", "equal", "--s-min", "-1", "--s-max", "1",
        "--samples", "101", "--out", csv_str,
    ]);
    assert!(out.status.success());

    let out = run(&["hopf", csv_str, "--tau", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("s,y1,y2,y3"));
    for line in lines {
        let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        let q = f[1] * f[1] + f[2] * f[2] - f[3] * f[3];
        assert!((q + 1.0).abs() <= 1e-10, "quadric value {q}");
    }
    std::fs::remove_file(&csv).ok();
}

#[test]
fn verify_rejects_malformed_input() {
    let csv = tmp_path("malformed.csv");
    std::fs::write(&csv, "a,b,c\n1,2,3\n").unwrap();
    let out = run(&["verify", csv.to_str().unwrap(), "--tau", "1"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_file(&csv).ok();

    let out = run(&["verify", "/nonexistent/file.csv", "--tau", "1"]);
    assert_eq!(out.status.code(), Some(2));
}
