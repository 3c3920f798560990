use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn capdisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_capdisc"))
        .args(args)
        .env_remove("CAPDISC_THREADS")
        .output()
        .expect("spawn capdisc")
}

fn json_ok(args: &[&str]) -> Value {
    let out = capdisc(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(args: &[&str]) -> i32 {
    capdisc(args).status.code().expect("exit code")
}

fn without_manifest(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("manifest").expect("manifest present");
    v
}

fn generate(dir: &Path, space: &str, kind: &str, n: usize, seed: u64) -> String {
    let path = dir.join(format!("{space}-{kind}-{n}-{seed}.json"));
    let p = path.to_str().unwrap().to_string();
    let out = capdisc(&[
        "points",
        "generate",
        "--space",
        space,
        "--kind",
        kind,
        "--n",
        &n.to_string(),
        "--seed",
        &seed.to_string(),
        "--out",
        &p,
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    p
}

#[test]
fn space_info_lists_spectrum_and_flags_octonionic_plane() {
    let v = json_ok(&["space", "info", "op2"]);
    assert_eq!(v["params"]["d"], 16);
    assert_eq!(v["params"]["a"], 7.0);
    assert_eq!(v["supports_points"], false);
    assert!(v["note"].as_str().unwrap().contains("unsupported"));
    assert_eq!(v["spectrum"].as_array().unwrap().len(), 21);
    assert_eq!(v["manifest"]["space"], "op2");

    let s2 = json_ok(&["space", "info", "s2", "--mmax", "3"]);
    let dims: Vec<f64> = s2["spectrum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["dim"].as_f64().unwrap())
        .collect();
    assert_eq!(dims, vec![1.0, 3.0, 5.0, 7.0]);
    assert!(s2.get("note").is_none());
}

#[test]
fn radius_check_variants() {
    let v = json_ok(&["radius", "check", "s2", "1/2"]);
    assert_eq!(v["admissible"], false);
    assert_eq!(v["residue_mod_4"], 0);
    assert_eq!(json_ok(&["radius", "check", "s2", "1/3"])["admissible"], true);
    assert_eq!(json_ok(&["radius", "check", "s5", "1/3"])["admissible"], false);

    let j = json_ok(&["radius", "check", "s2", "1/3", "--alpha", "1", "--beta", "1"]);
    assert_eq!(j["test"], "jacobi");
    assert_eq!(j["admissible"], true);
    let j = json_ok(&["radius", "check", "s2", "1/2", "--alpha", "1", "--beta", "1"]);
    assert_eq!(j["admissible"], false);

    let g = json_ok(&["radius", "check", "s2", "1/3", "--gegenbauer", "irrational"]);
    assert_eq!(g["test"], "gegenbauer");
    assert_eq!(g["admissible"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["radius", "check", "s2", "2/4"]), 2);
    assert_eq!(code(&["radius", "check", "s2", "1/3", "--alpha", "1"]), 2);
    assert_eq!(code(&["space", "info", "x9"]), 2);
    assert_eq!(
        code(&[
            "disc",
            "compute",
            "--space",
            "s2",
            "--points",
            "/nonexistent/p.json",
            "--radius",
            "1/3"
        ]),
        4
    );

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("op2.json");
    let args = [
        "points",
        "generate",
        "--space",
        "op2",
        "--kind",
        "uniform",
        "--n",
        "4",
        "--out",
        out.to_str().unwrap(),
    ];
    assert_eq!(code(&args), 2);

    let p = generate(dir.path(), "s2", "uniform", 20, 1);
    assert_eq!(
        code(&["disc", "compute", "--space", "s3", "--points", &p, "--radius", "1/3"]),
        2
    );

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(
        code(&[
            "disc",
            "compute",
            "--space",
            "s2",
            "--points",
            bad.to_str().unwrap(),
            "--radius",
            "1/3"
        ]),
        2
    );
}

#[test]
fn points_file_carries_manifest_and_provenance() {
    let dir = tempfile::tempdir().unwrap();
    let p = generate(dir.path(), "cp2", "uniform", 30, 9);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["space"], "cp2");
    assert_eq!(v["points"].as_array().unwrap().len(), 30);
    assert_eq!(v["provenance"]["seed"], 9);
    assert_eq!(v["manifest"]["seeds"][0], 9);
    let d = json_ok(&["disc", "compute", "--space", "cp2", "--points", &p, "--radius", "1/3"]);
    assert_eq!(d["n_points"], 30);
    assert!(d["value"].as_f64().unwrap() > 0.0);
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let p = generate(dir.path(), "s2", "uniform", 300, 5);
    let run = |threads: &str| {
        without_manifest(json_ok(&[
            "--threads",
            threads,
            "disc",
            "compute",
            "--space",
            "s2",
            "--points",
            &p,
            "--radius",
            "1/3",
            "--terms",
        ]))
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("3"));
    assert_eq!(
        one["terms"].as_array().unwrap().len(),
        one["L"].as_u64().unwrap() as usize
    );

    let scan = |threads: &str| {
        without_manifest(json_ok(&[
            "--threads",
            threads,
            "study",
            "prime-scan",
            "--space",
            "s5",
            "--n",
            "64",
            "--seed",
            "2",
        ]))
    };
    assert_eq!(scan("1"), scan("4"));
}

#[test]
fn series_agrees_with_monte_carlo() {
    let dir = tempfile::tempdir().unwrap();
    let p = generate(dir.path(), "s2", "uniform", 40, 3);
    let series = json_ok(&[
        "disc", "compute", "--space", "s2", "--points", &p, "--radius", "1/3", "--L", "4000",
    ]);
    let mc = json_ok(&[
        "disc",
        "oracle",
        "--space",
        "s2",
        "--points",
        &p,
        "--radius-real",
        "1.0471975511965976",
        "--samples",
        "400000",
        "--seed",
        "11",
    ]);
    let (s, e, se) = (
        series["value"].as_f64().unwrap(),
        mc["estimate"].as_f64().unwrap(),
        mc["stderr"].as_f64().unwrap(),
    );
    assert!((s - e).abs() < 4.0 * se, "series {s}, mc {e} ± {se}");
}

#[test]
fn rate_study_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("rate.csv");
    let out = dir.path().join("rate.json");
    let o = capdisc(&[
        "study",
        "rate",
        "--space",
        "s2",
        "--generator",
        "fibonacci",
        "--radius",
        "1/3",
        "--Ns",
        "64:512:x2",
        "--seed",
        "7",
        "--csv",
        csv.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("N,value,L,tail,seed"));
    assert_eq!(lines.count(), 4);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let slope = v["fitted_exponent"].as_f64().unwrap();
    assert!((-1.7..-1.3).contains(&slope), "{slope}");
    assert_eq!(v["manifest"]["seeds"][0], 7);

    let warn = capdisc(&[
        "study",
        "rate",
        "--space",
        "s2",
        "--generator",
        "fibonacci",
        "--radius",
        "1/2",
        "--Ns",
        "16,32,64,128",
    ]);
    assert!(warn.status.success());
    assert!(String::from_utf8_lossy(&warn.stderr).contains("not admissible"));
}

#[test]
fn jacobi_scan_detects_zero() {
    let v = json_ok(&[
        "jacobi", "scan", "--alpha", "1", "--beta", "1", "--radius", "1/2", "--mmax", "200",
    ]);
    assert_eq!(v["min_scaled"], 0.0);
    let v = json_ok(&[
        "jacobi", "scan", "--alpha", "1", "--beta", "1", "--radius", "1/3", "--mmax", "2000",
    ]);
    assert!(v["min_scaled"].as_f64().unwrap() > 0.1);
}

#[test]
fn command_examples() {
    let cp2 = json_ok(&["space", "info", "cp2"]);
    assert_eq!(
        (
            cp2["params"]["d0"].as_u64(),
            cp2["params"]["a"].as_f64(),
            cp2["params"]["b"].as_f64()
        ),
        (Some(2), Some(1.0), Some(0.0))
    );
    let table = capdisc(&["space", "info", "s2", "--table", "--mmax", "2"]);
    assert!(table.status.success());
    assert_eq!(String::from_utf8(table.stdout).unwrap().lines().count(), 5);

    assert_eq!(json_ok(&["radius", "check", "s3", "1/3"])["admissible"], true);
    assert_eq!(json_ok(&["radius", "check", "s5", "3/7"])["admissible"], false);

    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.json");
    std::fs::write(&one, r#"{"space":"s2","points":[[0,0,1]]}"#).unwrap();
    let v = json_ok(&[
        "disc",
        "compute",
        "--space",
        "s2",
        "--points",
        one.to_str().unwrap(),
        "--radius",
        "1/3",
        "--L",
        "20000",
    ]);
    assert!((v["value"].as_f64().unwrap() - 3.0 / 16.0).abs() < 1e-5);
    let anti = dir.path().join("anti.json");
    std::fs::write(&anti, r#"{"space":"s2","points":[[0,0,1],[0,0,-1]]}"#).unwrap();
    let v = json_ok(&[
        "disc",
        "compute",
        "--space",
        "s2",
        "--points",
        anti.to_str().unwrap(),
        "--radius",
        "1/2",
    ]);
    assert!(v["value"].as_f64().unwrap() <= 1e-12);
    assert!(v.get("terms").is_none());

    let p = generate(dir.path(), "s2", "uniform", 100, 1);
    let again = dir.path().join("again.json");
    let args = [
        "points",
        "generate",
        "--space",
        "s2",
        "--kind",
        "uniform",
        "--n",
        "100",
        "--seed",
        "1",
        "--out",
        again.to_str().unwrap(),
    ];
    assert!(capdisc(&args).status.success());
    let strip = |path: &Path| without_manifest(serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap());
    assert_eq!(strip(Path::new(&p)), strip(&again));
}
