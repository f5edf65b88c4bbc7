use std::process::{Command, Output};

use serde_json::Value;

fn sig22(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sig22")).args(args).env_remove("SIG22_TOL").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn tmp(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("sig22-cli-{}-{name}", std::process::id()))
}

#[test]
fn catalog_lists_six_families_with_structures() {
    let o = sig22(&["catalog", "list", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let fams = v.as_array().unwrap();
    let names: Vec<&str> = fams.iter().map(|f| f["family"].as_str().unwrap()).collect();
    assert_eq!(names, ["X1", "X2", "N", "Y", "Z", "Zprime"]);
    let with = |key: &str| -> Vec<&str> {
        fams.iter().filter(|f| f["supports"][key].as_bool().unwrap()).map(|f| f["family"].as_str().unwrap()).collect()
    };
    assert_eq!(with("hermitian_j"), ["N", "Z"]);
    assert_eq!(with("para_j"), ["N", "Zprime"]);
    assert_eq!(with("fixed_point_solver"), ["Z", "Zprime"]);

    let text = stdout(&sig22(&["catalog", "list"]));
    assert!(text.contains("lambda in (0, inf)"));
}

#[test]
fn verify_n_passes_with_exact_algebra_residuals() {
    let path = tmp("n.json");
    let o = sig22(&["verify", "--space", "N", "--kappa", "1", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.ends_with('\n'));
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema"], "sig22-report/1");
    assert_eq!(v["status"], "pass");
    assert_eq!(v["space"]["params"]["kappa"], "1");
    let residual = |name: &str| v["checks"].as_array().unwrap().iter().find(|c| c["name"] == name).unwrap()["max_residual"].clone();
    assert_eq!(residual("triple/jacobi"), "exact");
    assert_eq!(residual("triple/cocycle"), "exact");
    std::fs::remove_file(path).ok();
}

#[test]
fn verify_balanced_x1_covers_the_boost() {
    let o = sig22(&["verify", "--space", "X1", "--eps1", "1", "--eps2", "-1", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("o11-boost"), "{text}");
    assert!(text.trim_end().ends_with("PASS"));
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(sig22(&["verify", "--space", "X1", "--eps1", "1", "--eps2", "1", "--lambda", "0"]).status.code(), Some(2));
    assert_eq!(sig22(&["verify", "--space", "X1", "--lambda", "0"]).status.code(), Some(2));
    assert_eq!(sig22(&["verify", "--space", "W"]).status.code(), Some(2));
    assert_eq!(sig22(&["verify", "--space", "N", "--kappa", "1", "--nu", "2"]).status.code(), Some(2));
    assert_eq!(sig22(&["metric", "--space", "N", "--kappa", "1", "--point", "0,0,x,0"]).status.code(), Some(2));
    assert_eq!(sig22(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn failing_verification_exits_with_1() {
    let o = sig22(&["verify", "--space", "X2", "--nu", "1", "--quick", "--check", "isometry", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn reports_are_byte_identical_for_a_seed() {
    let (a, b) = (tmp("a.json"), tmp("b.json"));
    for p in [&a, &b] {
        let o = sig22(&["verify", "--space", "Z", "--eps", "-1", "--c", "1/2", "--quick", "--seed", "7", "--json", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    std::fs::remove_file(a).ok();
    std::fs::remove_file(b).ok();
}

#[test]
fn tolerance_comes_from_the_environment() {
    let path = tmp("tol.json");
    let o = Command::new(env!("CARGO_BIN_EXE_sig22"))
        .args(["verify", "--space", "N", "--kappa", "-1", "--check", "triple", "--json", path.to_str().unwrap()])
        .env("SIG22_TOL", "1e-8")
        .output()
        .unwrap();
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["tolerance"]["abs_tol"].as_f64(), Some(1e-8));
    std::fs::remove_file(path).ok();
    let bad = Command::new(env!("CARGO_BIN_EXE_sig22")).args(["classify-so12", "--A", "identity"]).env("SIG22_TOL", "lots").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn fixed_point_of_a_pure_translation() {
    let o = sig22(&["fixed-point", "--space", "Z", "--eps", "1", "--c", "0", "--b", "0,0,1", "--A", "identity", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["point"], serde_json::json!(["0", "0", "0", "0", "0", "1"]));
    assert_eq!(v["action_residual"], "exact");
}

#[test]
fn metric_of_n_at_a_point() {
    let o = sig22(&["metric", "--space", "N", "--kappa", "1", "--point", "0,0,1,0", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["metric"][3][3], "-1/3");
    assert_eq!(v["metric"][0][3], "-1");
}

#[test]
fn classify_dilation() {
    let o = sig22(&["classify-so12", "--A", "diag:4,1,0.25"]);
    assert_eq!(stdout(&o).trim(), "Hyperbolic");
    assert_eq!(stdout(&sig22(&["classify-so12", "--A", "diag:1,-1,-1"])).trim(), "Elliptic");
    assert_eq!(sig22(&["classify-so12", "--A", "diag:2,1,1"]).status.code(), Some(2));
}

#[test]
fn act_reports_image_and_pullback() {
    let o = sig22(&["act", "--space", "X1", "--eps1", "1", "--eps2", "-1", "--lambda", "3", "--point", "1,2,3,4", "--A", "delta:-1,1+theta", "--json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let image: Vec<f64> = v["image"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().parse().unwrap()).collect();
    assert_eq!(image, [-1.0, 2.0, -3.0, -4.0]);
    assert!(v["pullback_residual"] == "exact" || v["pullback_residual"] == "0");

    let o = sig22(&["act", "--space", "Z", "--eps", "1", "--c", "0", "--point", "0,0,0,0,1,0", "--b", "1,0,0", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["image"], serde_json::json!(["0", "0", "1", "0", "1", "0"]));

    // off the model
    let o = sig22(&["act", "--space", "Z", "--eps", "1", "--c", "0", "--point", "0,0,0,0,2,0"]);
    assert_eq!(o.status.code(), Some(2));
}
