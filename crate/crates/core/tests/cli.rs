mod common;

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use common::{brute, quotient};
use pdmetric::metric::QuotientPoint;
use pdmetric::spaces::HalfPlanePoint;

fn pdmetric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdmetric"))
        .args(args)
        .env_remove("PDMETRIC_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pdmetric-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn halfplane_json(points: &[(f64, f64)]) -> String {
    let atoms: Vec<String> = points.iter().map(|(b, d)| format!("[[{b},{d}],1]")).collect();
    format!("{{\"space\":\"halfplane\",\"atoms\":[{}]}}", atoms.join(","))
}

#[test]
fn halfplane_bottleneck_matches_enumeration() {
    let left = [(0.0, 2.0), (1.0, 5.0)];
    let right = [(0.0, 3.0), (4.0, 4.5), (2.0, 2.5)];
    let a = temp_file("bn-left.json", &halfplane_json(&left));
    let b = temp_file("bn-right.json", &halfplane_json(&right));
    let out = pdmetric(&[
        "distance",
        "--space",
        "halfplane",
        "--p",
        "inf",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    let value: f64 = stdout(&out).trim().parse().unwrap();
    let pts = |v: &[(f64, f64)]| {
        v.iter()
            .map(|&(x, y)| QuotientPoint::Point(HalfPlanePoint::new(x, y)))
            .collect::<Vec<_>>()
    };
    let oracle = brute(
        &pts(&left),
        &pts(&right),
        &QuotientPoint::Collapsed,
        &|x, y| quotient(x, y, f64::INFINITY, f64::INFINITY),
        f64::INFINITY,
    );
    assert!((value - oracle).abs() < 1e-11, "{value} vs {oracle}");
}

#[test]
fn identical_files_are_at_distance_zero() {
    let a = temp_file("same.json", &halfplane_json(&[(0.5, 1.25), (2.0, 7.0), (2.0, 7.0)]));
    for p in ["1", "2", "inf"] {
        let out = pdmetric(&[
            "distance",
            "--space",
            "halfplane",
            "--p",
            p,
            a.to_str().unwrap(),
            a.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out).trim(), "0");
    }
}

#[test]
fn anagram_words() {
    let out = pdmetric(&["anagram", "mathematics", "cat asthma"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "3");
    let out = pdmetric(&["distance", "--space", "anagram", "--p", "1", "manifold", "mind loaf"]);
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn characters_outside_the_alphabet_exit_3() {
    assert_eq!(pdmetric(&["anagram", "abc!", "abc"]).status.code(), Some(3));
    assert_eq!(
        pdmetric(&["anagram", "abc!", "abc", "--alphabet", "!"]).status.code(),
        Some(0)
    );
}

#[test]
fn unknown_labels_exit_3_and_bad_json_exits_2() {
    let space = temp_file(
        "space.json",
        r#"{"labels":["o","a"],"matrix":[[0,1],[1,0]],"basepoint":"o"}"#,
    );
    let good = temp_file("good.json", r#"{"space":"finite","atoms":[["a",2]]}"#);
    let unknown = temp_file("unknown.json", r#"{"space":"finite","atoms":[["z",1]]}"#);
    let broken = temp_file("broken.json", r#"{"space":"finite","atoms":[["a",1]"#);
    let run = |l: &PathBuf, r: &PathBuf| {
        pdmetric(&[
            "distance",
            "--space",
            "finite",
            "--space-file",
            space.to_str().unwrap(),
            "--p",
            "1",
            l.to_str().unwrap(),
            r.to_str().unwrap(),
        ])
    };
    let ok = run(&good, &good);
    assert_eq!(ok.status.code(), Some(0), "{ok:?}");
    assert_eq!(run(&good, &unknown).status.code(), Some(3));
    assert_eq!(run(&good, &broken).status.code(), Some(2));
}

#[test]
fn oracle_mode_respects_the_size_guard() {
    let small = temp_file("small.json", &halfplane_json(&[(0.0, 1.0), (0.0, 2.0)]));
    let out = pdmetric(&[
        "distance",
        "--space",
        "halfplane",
        "--p",
        "2",
        "--oracle",
        "--format",
        "json",
        small.to_str().unwrap(),
        small.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["oracle"], Value::Bool(true));
    let big: Vec<(f64, f64)> = (0..5).map(|k| (k as f64, k as f64 + 1.5)).collect();
    let big = temp_file("big.json", &halfplane_json(&big));
    let out = pdmetric(&[
        "distance",
        "--space",
        "halfplane",
        "--p",
        "2",
        "--oracle",
        big.to_str().unwrap(),
        big.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn matching_and_certificate_json() {
    let a = temp_file("cert-left.json", &halfplane_json(&[(0.0, 4.0), (1.0, 2.0)]));
    let b = temp_file("cert-right.json", &halfplane_json(&[(0.5, 4.5)]));
    let out = pdmetric(&[
        "distance",
        "--space",
        "halfplane",
        "--p",
        "1",
        "--q",
        "2",
        "--matching",
        "--certificate",
        "--format",
        "json",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{out:?}");
    let v: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let distance = v["distance"].as_f64().unwrap();
    let cert = &v["certificate"];
    let (primal, dual) = (cert["primal"].as_f64().unwrap(), cert["dual"].as_f64().unwrap());
    assert!((primal - distance).abs() < 1e-11 && (primal - dual).abs() < 1e-8);
    assert_eq!(cert["y"].as_array().unwrap().len(), 2 * (2 + 1));
    assert!(!cert["h"].as_array().unwrap().is_empty());
    let pairs = v["matching"]["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 2);

    let out = pdmetric(&[
        "distance",
        "--space",
        "halfplane",
        "--p",
        "2",
        "--certificate",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_and_rejects_unknown_suites() {
    let out = pdmetric(&["verify", "--suite", "oracle", "--seed", "7", "--samples", "50"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let v: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["seed"], 7);
    assert_eq!(pdmetric(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
}

#[test]
fn seed_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_pdmetric"))
        .args(["verify", "--suite", "padding", "--samples", "20"])
        .env("PDMETRIC_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["seed"], 99);
    let default = pdmetric(&["verify", "--suite", "padding", "--samples", "20"]);
    let v: Value = serde_json::from_str(stdout(&default).trim()).unwrap();
    assert_eq!(v["seed"], pdmetric::sampling::DEFAULT_SEED);
}

#[test]
fn output_is_deterministic() {
    let a = temp_file("det-left.json", &halfplane_json(&[(0.0, 4.0), (1.0, 2.0), (1.0, 2.0)]));
    let b = temp_file("det-right.json", &halfplane_json(&[(0.5, 4.5), (1.5, 2.0)]));
    let args = [
        "distance",
        "--space",
        "halfplane",
        "--p",
        "1",
        "--matching",
        "--certificate",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
    ];
    assert_eq!(pdmetric(&args).stdout, pdmetric(&args).stdout);
    let verify = ["verify", "--suite", "duality", "--seed", "3", "--samples", "20"];
    assert_eq!(pdmetric(&verify).stdout, pdmetric(&verify).stdout);
}
