use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orbiform"))
}

fn gallery(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/gallery").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn r0_of_combiaa() {
    let out = run(&["r0", "--config", gallery("combiaa").to_str().unwrap()]);
    assert!(out.status.success());
    let r0 = json(&out)["r0"].as_f64().unwrap();
    assert!((r0 - 1.25348).abs() < 2e-3, "{r0}");
}

#[test]
fn norms_of_combiaa() {
    let out = run(&["norms", "--config", gallery("combiaa").to_str().unwrap()]);
    let v = json(&out);
    assert!((v["a"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert!((v["a_theta"].as_f64().unwrap() - 2f64.sqrt()).abs() < 1e-6);
    assert!((v["a_thetatheta"].as_f64().unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-6);
}

#[test]
fn validate_gallery() {
    let out = run(&["validate", "--config", gallery("g6").to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["conditions"].as_array().unwrap().len(), 5);
}

#[test]
fn sphere_export_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("s.obj");
    let cfg = gallery("sphere");
    let grid = ["--nphi", "64", "--ntheta", "64"];
    let mut args = vec!["gen3d", "--config", cfg.to_str().unwrap(), "--out", obj.to_str().unwrap()];
    args.extend(grid);
    assert!(run(&args).status.success());
    let text = std::fs::read_to_string(&obj).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 2 + 64 * 62);
    assert_eq!(text.lines().filter(|l| l.starts_with("f ")).count(), 64 * (2 * 64 - 4));

    let mut args = vec!["verify", "--config", cfg.to_str().unwrap(), "--mesh", obj.to_str().unwrap()];
    args.extend(grid);
    let out = run(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let rep = json(&out);
    for (name, check) in rep.as_object().unwrap() {
        assert_eq!(check["pass"], true, "{name}");
    }
    let (mem, disk) = (rep["width"]["max_residual"].as_f64().unwrap(), rep["mesh_width"]["max_residual"].as_f64().unwrap());
    assert!((mem - disk).abs() < 2e-3);
}

#[test]
fn reference_radius_of_g3_fails_verification() {
    let cfg = gallery("g3");
    let out = run(&["verify", "--config", cfg.to_str().unwrap(), "--r", "1.11693", "--nphi", "128", "--ntheta", "128"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["convexity"]["pass"], false);
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = gallery("combiaa");
    let mut outs = Vec::new();
    for (k, threads) in ["1", "4"].iter().enumerate() {
        let obj = dir.path().join(format!("{k}.obj"));
        let gen = bin()
            .env("ORBIFORM_THREADS", threads)
            .args(["gen3d", "--config", cfg.to_str().unwrap(), "--nphi", "48", "--ntheta", "24", "--out", obj.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(gen.status.success());
        let report = bin()
            .env("ORBIFORM_THREADS", threads)
            .args(["verify", "--config", cfg.to_str().unwrap(), "--nphi", "48", "--ntheta", "24"])
            .output()
            .unwrap();
        outs.push((std::fs::read(&obj).unwrap(), report.stdout));
    }
    assert_eq!(outs[0].0, outs[1].0);
    assert_eq!(outs[0].1, outs[1].1);
}

#[test]
fn gallery_writes_six_meshes_and_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["gallery", "--out", dir.path().to_str().unwrap(), "--grid", "32"]);
    assert!(out.status.success());
    for k in 1..=6 {
        assert!(dir.path().join(format!("g{k}.obj")).exists());
    }
    let table = std::fs::read_to_string(dir.path().join("r0_table.csv")).unwrap();
    assert_eq!(table.lines().count(), 7);
    let g2: Vec<&str> = table.lines().find(|l| l.starts_with("g2,")).unwrap().split(',').collect();
    assert!((g2[2].parse::<f64>().unwrap() - 1.08867).abs() < 2e-3);
}

#[test]
fn curves_and_shadows() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = gallery("combiaa");
    let csv = dir.path().join("c.csv");
    let out = run(&["gen2d", "--config", cfg.to_str().unwrap(), "--r", "1.3", "--samples", "100", "--out", csv.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 102);

    let out = run(&["shadow2d", "--polygon", "1,0; 0,1; -1,-1", "--npsi", "8"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 9);
    assert!(text.contains("\n3.92699082,1.41421356\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["r0"]).status.code(), Some(2));
    assert_eq!(run(&["r0", "--config", "/definitely/not/here.json"]).status.code(), Some(2));
    assert_eq!(run(&["shadow2d", "--polygon", "1,0; 0,1"]).status.code(), Some(2));
    // origin outside the polygon
    assert_eq!(run(&["shadow2d", "--polygon", "2,0; 3,0; 3,1"]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"terms": [{"coef": 1, "weight": "one", "harmonic": {"kind": "cos", "k": 2}}]}"#).unwrap();
    let out = run(&["validate", "--config", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("terms[0]"));

    let out = bin()
        .env("ORBIFORM_THREADS", "zero")
        .args(["norms", "--config", gallery("g1").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
