use kappa_hopf::hopf::Mode;
use kappa_hopf::models::shipped_source;
use kappa_hopf::report::Status;
use kappa_hopf::suite::{exit_status, parse_mode, run_suite, SuiteConfig};
use kappa_hopf::Error;

#[test]
fn configuration_is_validated() {
    assert!(matches!(run_suite(&SuiteConfig::new("lorentz")), Err(Error::Argument(_))));
    assert!(matches!(run_suite(&SuiteConfig { order: 7, ..SuiteConfig::new("algebra") }), Err(Error::Cap(_))));
    assert!(matches!(run_suite(&SuiteConfig { degree: 9, ..SuiteConfig::new("duality") }), Err(Error::Cap(_))));
    // the representation checks stop below the general order cap
    assert!(matches!(run_suite(&SuiteConfig { order: 5, ..SuiteConfig::new("projrep") }), Err(Error::Cap(_))));
    assert!(parse_mode("series").is_ok_and(|m| m == Mode::Series));
    assert!(parse_mode("exact").is_err());
}

#[test]
fn report_echoes_the_configuration() {
    let r = run_suite(&SuiteConfig { seed: 77, order: 2, mode: Mode::Formal, ..SuiteConfig::new("spacetime") }).unwrap();
    assert_eq!(r.config["seed"], "77");
    assert_eq!(r.config["order"], "2");
    assert_eq!(r.config["mode"], "formal");
    assert_eq!(r.config["models"], "shipped");
    assert_eq!(exit_status(&r), 0);
    assert!(r.to_json().contains("\"seed\": \"77\""));
}

#[test]
fn cocommutator_suite_has_one_check_per_generator() {
    let r = run_suite(&SuiteConfig::new("cocommutator")).unwrap();
    let ids: Vec<&str> = r.checks.iter().filter(|c| c.id.starts_with("sigma/")).map(|c| c.id.as_str()).collect();
    assert_eq!(ids, ["sigma/M[1]", "sigma/M[2]", "sigma/M[3]", "sigma/L[1]", "sigma/L[2]", "sigma/L[3]", "sigma/P[1]", "sigma/P[2]", "sigma/P[3]", "sigma/P0"]);
    assert!(r.passed());
}

#[test]
fn wrong_cocommutator_is_caught() {
    // reversing the deformation of the momentum coproduct flips sigma(P)
    let src = shipped_source("galilei_algebra_kappa.hopf").unwrap();
    let flipped = src.replace("coproduct P[i] = P[i] (x) E^-1 + E (x) P[i];", "coproduct P[i] = P[i] (x) E + E^-1 (x) P[i];");
    assert_ne!(src, flipped);
    let config = SuiteConfig { models: vec![("galilei_algebra_kappa.hopf".into(), flipped)], ..SuiteConfig::new("cocommutator") };
    let r = run_suite(&config).unwrap();
    for i in 1..=3 {
        assert_eq!(r.get(&format!("sigma/P[{i}]")).unwrap().status, Status::Fail);
    }
    assert_eq!(r.get("sigma/M[1]").unwrap().status, Status::Pass);
    assert_eq!(exit_status(&r), 1);
}

#[test]
fn imaginary_boost_coaction_is_a_finding() {
    let r = run_suite(&SuiteConfig { order: 2, ..SuiteConfig::new("bicross") }).unwrap();
    let c = r.get("variant/imaginary-boost-coaction").unwrap();
    assert_eq!(c.status, Status::Info);
    assert!(c.residual.contains("coproduct/Lt["), "{}", c.residual);
    assert!(r.passed(), "{}", r.to_text());
}
