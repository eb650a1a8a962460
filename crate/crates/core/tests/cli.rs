use std::path::Path;
use std::process::{Command, Output};

fn lackwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lackwalk")).args(args).output().unwrap()
}

fn rows(csv: &str) -> Vec<(f64, f64)> {
    csv.lines()
        .skip(1)
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect()
}

fn max_row(rows: &[(f64, f64)]) -> (f64, f64) {
    rows.iter().copied().fold((0.0, -1.0), |best, r| if r.1 > best.1 { r } else { best })
}

#[test]
fn evolve_loopless_csv() {
    let out = lackwalk(&["evolve", "--n", "1024", "--loops", "0", "--coin", "flip", "--steps", "100"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("step,success_probability\n"));
    let rows = rows(&text);
    assert_eq!(rows.len(), 101);
    let (step, p) = max_row(&rows);
    assert_eq!(step, 36.0);
    assert!((p - 0.5).abs() < 0.03);
    for line in text.lines().skip(1) {
        let value = line.split(',').nth(1).unwrap();
        let digits = value.trim_start_matches(['0', '.']).chars().filter(char::is_ascii_digit).count();
        assert_eq!(digits, 17, "{value}");
    }
}

#[test]
fn evolve_ctqw_csv() {
    let out = lackwalk(&["evolve", "--walk", "ctqw", "--n", "1024", "--gamma", "critical", "--tmax", "100", "--samples", "1000"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("time,success_probability\n"));
    let (t, p) = max_row(&rows(&text));
    assert!(p > 0.999);
    assert!((t - 50.265).abs() < 0.2);
}

#[test]
fn evolve_sixteen_marked() {
    let out = lackwalk(&["evolve", "--n", "1024", "--loops", "1", "--marked", "16", "--coin", "flip", "--steps", "40"]);
    let (step, p) = max_row(&rows(&String::from_utf8(out.stdout).unwrap()));
    assert!((step - 13.0).abs() <= 1.0);
    assert!(p > 0.99);
}

#[test]
fn evolve_is_deterministic() {
    let args = ["evolve", "--n", "200", "--loops", "3", "--marked", "2", "--engine", "full", "--steps", "60"];
    let a = lackwalk(&args);
    let b = lackwalk(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn full_engine_matches_subspace_output() {
    let full = lackwalk(&["evolve", "--n", "64", "--loops", "2", "--engine", "full", "--steps", "50"]);
    let sub = lackwalk(&["evolve", "--n", "64", "--loops", "2", "--steps", "50"]);
    for (a, b) in rows(&String::from_utf8(full.stdout).unwrap()).iter().zip(rows(&String::from_utf8(sub.stdout).unwrap())) {
        assert!((a.1 - b.1).abs() < 1e-10);
    }
}

#[test]
fn predict_json() {
    let out = lackwalk(&["predict", "--n", "1024", "--loops", "2", "--coin", "flip"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["runtime"].as_f64().unwrap() - 41.0).abs() < 0.5);
    assert!((v["peak_probability"].as_f64().unwrap() - 0.889).abs() < 1e-3);
    for key in ["phase_gap", "regime", "angles"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["regime"]["speedup"], "grover");
    assert_eq!(v["regime"]["heuristic"], true);

    let out = lackwalk(&["predict", "--n", "1024", "--loops", "32768", "--coin", "skw", "--branch", "superlinear"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["runtime"].as_f64().unwrap() - 204.18).abs() < 0.01);
    assert!((v["asymptotic"]["runtime"].as_f64().unwrap() - 201.0).abs() < 0.5);

    let out = lackwalk(&["predict", "--walk", "ctqw", "--n", "2048"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!((v["runtime"].as_f64().unwrap() - 71.086).abs() < 1e-3);
    assert!((v["peak_probability"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn eigen_json() {
    let out = lackwalk(&["eigen", "--n", "64", "--loops", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["pairs"].as_array().unwrap().len(), 4);
    assert!(v["max_residual"].as_f64().unwrap() < 1e-10);
    assert_eq!(v["closed_form"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(lackwalk(&["evolve", "--n", "2"]).status.code(), Some(2));
    assert_eq!(lackwalk(&["evolve", "--n", "1024", "--marked", "1024", "--coin", "skw"]).status.code(), Some(2));
    assert_eq!(lackwalk(&["evolve", "--n", "10", "--loops", "-1"]).status.code(), Some(2));
    assert_eq!(lackwalk(&["evolve", "--n", "10", "--coin", "nope"]).status.code(), Some(2));
    assert_eq!(lackwalk(&["evolve", "--n", "10", "--steps", "0"]).status.code(), Some(2));
    assert_eq!(lackwalk(&["evolve", "--n", "10", "--walk", "ctqw", "--gamma", "-3"]).status.code(), Some(2));
    assert_eq!(lackwalk(&["figure", "fig9"]).status.code(), Some(2));
    let capped = Command::new(env!("CARGO_BIN_EXE_lackwalk"))
        .args(["evolve", "--n", "64", "--engine", "full"])
        .env("LACKWALK_MAX_AMPLITUDES", "100")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&capped.stderr).contains("capacity"));
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn compare_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = write(dir.path(), "ok.json", r#"{"instances": [{"n": 1024, "loops": 3}, {"n": 256, "walk": "ctqw"}]}"#);
    let out = lackwalk(&["compare", &ok]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_pass"], true);

    let strict = write(
        dir.path(),
        "strict.json",
        r#"{"instances": [{"n": 1024, "loops": 3}], "tolerance": {"runtime": 0, "peak": 0}}"#,
    );
    assert_eq!(lackwalk(&["compare", &strict]).status.code(), Some(1));

    let empty = write(dir.path(), "empty.json", r#"{"instances": []}"#);
    assert_eq!(lackwalk(&["compare", &empty]).status.code(), Some(2));
    let broken = write(dir.path(), "broken.json", "{");
    assert_eq!(lackwalk(&["compare", &broken]).status.code(), Some(2));
    assert_eq!(lackwalk(&["compare", "/nonexistent/config.json"]).status.code(), Some(2));
}

#[test]
fn compare_writes_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("report.json");
    let cfg = write(
        dir.path(),
        "cfg.json",
        &format!(r#"{{"instances": [{{"n": 512}}], "formats": ["json", "csv"], "output_path": {:?}}}"#, out_path.to_str().unwrap()),
    );
    assert!(lackwalk(&["compare", &cfg]).status.success());
    assert!(out_path.exists());
    let csv = std::fs::read_to_string(dir.path().join("report.csv")).unwrap();
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn figures() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let cases: [(&str, &[&str]); 3] = [
        ("fig5", &["fig5_N1024_l0_k1_skw.csv", "fig5_N1024_l32_k1_skw.csv", "fig5_N1024_l2048_k1_skw.csv", "fig5_N1024_l32768_k1_skw.csv"]),
        ("fig3", &["fig3_N1024_l0_k1_ctqw.csv", "fig3_N2048_l0_k1_ctqw.csv"]),
        ("fig6", &["fig6_N1024_l1_k16_flip.csv", "fig6_N1024_l32_k16_flip.csv"]),
    ];
    for (name, files) in cases {
        assert!(lackwalk(&["figure", name, "--out", d]).status.success());
        for f in files {
            assert!(dir.path().join(f).exists(), "{f}");
        }
    }
    assert!(lackwalk(&["figure", "fig7", "--out", d]).status.success());
    assert!(dir.path().join("fig7_N1024_l2048_k16_skw.csv").exists());
    assert!(dir.path().join("fig7_README.txt").exists());
}
