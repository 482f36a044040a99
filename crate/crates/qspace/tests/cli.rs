use std::fs;
use std::process::{Command, Output};

fn qspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qspace"))
        .args(args)
        .env_remove("QSPACE_CONFIG_DIR")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field(o: &Output, key: &str) -> f64 {
    let prefix = format!("{}: ", key);
    stdout(o)
        .lines()
        .find_map(|l| l.strip_prefix(&prefix).map(|v| v.parse().unwrap()))
        .unwrap()
}

#[test]
fn normal_order_command() {
    let o = qspace(&["normal-order", "--space", "quantum_plane", "X1*X2 - q*X2*X1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0");
    let o = qspace(&["normal-order", "--space", "minkowski", "conj(X+)"]);
    assert_eq!(stdout(&o).trim(), "-q^(-1)*X-");
    let o = qspace(&["normal-order", "--space", "euclid3", ""]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("syntax error"));
    let o = qspace(&["normal-order", "--space", "nowhere", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn star_qexp_and_grassmann_commands() {
    let o = qspace(&["star", "--space", "quantum_plane", "X1", "X2"]);
    assert_eq!(stdout(&o).trim(), "q*X2*X1");
    let o = qspace(&["qexp", "--space", "quantum_plane", "--degree", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("(1 | 1) : 1\n"));
    let o = qspace(&["grassmann", "form", "--space", "quantum_plane", "--variant", "L"]);
    assert!(stdout(&o).contains("q^(-1/2): f_{1} g_{1}"));
    let o = qspace(&["grassmann", "form", "--space", "quantum_plane", "--variant", "X"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn integrate_command() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("spec.toml");
    fs::write(&spec, "space = \"quantum_plane\"\nq = 2.0\nvmin = 0\nvmax = 0\n").unwrap();
    let input = dir.path().join("f.csv");
    fs::write(&input, "s_1,s_2,v_1,v_2,re,im\n1,1,0,0,1,0\n-1,1,0,0,0,2\n").unwrap();
    let o = qspace(&["integrate", "--spec", spec.to_str().unwrap(), "--input", input.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // weight (q^2 - 1)^2 = 9 at q = 2
    assert!((field(&o, "re") - 9.0).abs() < 1e-12);
    assert!((field(&o, "im") - 18.0).abs() < 1e-12);
    let o = qspace(&[
        "integrate", "--spec", spec.to_str().unwrap(), "--input", input.to_str().unwrap(), "--combined", "1",
    ]);
    assert!((field(&o, "re") + 18.0).abs() < 1e-12);
}

#[test]
fn verify_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = qspace(&["verify", "--suite", "grassmann", "--q", "1.3", "--seed", "5", "--json", p.to_str().unwrap()]);
        assert!(o.status.success());
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["suite"], "grassmann");
    assert_eq!(v["seed"], 5);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["id"] == "grassmann/quantum_plane/theta1-theta1" && c["status"] == "exact-pass"));
    let o = qspace(&["verify", "--suite", "conjugation", "--q", "1.3", "--seed", "0"]);
    assert_eq!(o.status.code(), Some(1));
    let o = qspace(&["verify", "--suite", "bogus", "--q", "1.3", "--seed", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_dir_overrides_presets() {
    let dir = tempfile::tempdir().unwrap();
    let o = qspace(&["export-config", "--space", "quantum_plane"]);
    let text = stdout(&o).replace("coeff = \"q\"", "coeff = \"q^2\"");
    fs::write(dir.path().join("quantum_plane.toml"), text).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_qspace"))
        .args(["normal-order", "--space", "quantum_plane", "X1*X2"])
        .env("QSPACE_CONFIG_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(stdout(&o).trim(), "q^2*X2*X1");
    fs::write(dir.path().join("euclid3.toml"), "kind = \"minkowski\"").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_qspace"))
        .args(["normal-order", "--space", "euclid3", "X3"])
        .env("QSPACE_CONFIG_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
