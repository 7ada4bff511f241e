use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kappa-hopf"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kappa-hopf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn passing_suite_exits_zero_and_writes_json() {
    let json = scratch("rmatrix.json");
    let out = bin().args(["verify", "rmatrix", "--seed", "3", "--json"]).arg(&json).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("PASS rmatrix/coboundary"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["config"]["seed"], "3");
    assert_eq!(report["checks"][0]["detail"], "coboundary system infeasible, rank data attached");
}

#[test]
fn failing_check_exits_one() {
    // the group without the orthogonality relations fails some checks
    let out = bin().args(["verify", "group"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("FAIL plain/hopf/"));
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        vec!["verify", "no-such-suite"],
        vec!["verify", "algebra", "--order", "7"],
        vec!["verify", "duality", "--degree", "9"],
        vec!["verify", "algebra", "--mode", "sideways"],
        vec!["verify", "algebra", "--model", "/nonexistent/model.hopf"],
    ] {
        let out = bin().args(&args).output().unwrap();
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn malformed_model_reports_diagnostics_and_exits_two() {
    let path = scratch("galilei_algebra_kappa.hopf");
    std::fs::write(&path, "presentation galilei_algebra_kappa {\n  generators: M[3];\n  relation [M[i], M[j]] = ;\n}\n").unwrap();
    let out = bin().args(["verify", "algebra", "--model"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("3:"), "{err}");
}

#[test]
fn model_override_is_used() {
    // a flipped boost-energy relation in a user file makes the algebra suite fail
    let src = kappa_hopf::models::shipped_source("galilei_algebra_kappa.hopf").unwrap();
    let path = scratch("flipped/galilei_algebra_kappa.hopf");
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    std::fs::write(&path, src.replace("relation [L[i], P0] = I*P[i];", "relation [L[i], P0] = -I*P[i];")).unwrap();
    let out = bin().args(["verify", "algebra", "--order", "2", "--model"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("models = shipped + galilei_algebra_kappa.hopf"));
}
