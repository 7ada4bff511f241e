use std::sync::Arc;

use kappa_hopf::dsl::{eval_in, print_presentation};
use kappa_hopf::hopf::{
    classical_limit, cocommutator, coproduct, verify_bialgebra, verify_bicross, verify_casimir, verify_comodule, CheckOpts,
    HopfMaps, Mode,
};
use kappa_hopf::models::{shipped_source, Catalog};
use kappa_hopf::ncalg::{confluence_check, Ctx, Presentation};
use kappa_hopf::report::{Prefilter, Status};

fn cat() -> Catalog {
    Catalog::shipped().unwrap()
}

fn kappa() -> Arc<Presentation> {
    cat().presentation("galilei_algebra_kappa").unwrap()
}

fn both(order: u32) -> CheckOpts {
    CheckOpts { mode: Mode::Both, order, ortho: false }
}

#[test]
fn coproduct_of_momentum() {
    let p = kappa();
    let d = coproduct(&eval_in("P[2]", std::slice::from_ref(&p)).unwrap(), &p).unwrap();
    let expected = eval_in("P[2] (x) E^-1 + E (x) P[2]", &[p.clone(), p.clone()]).unwrap();
    assert_eq!(d, Ctx::tensor_power(&p, 2).normal_order(&expected).unwrap());
    let one = coproduct(&eval_in("1", std::slice::from_ref(&p)).unwrap(), &p).unwrap();
    assert_eq!(one, eval_in("1", &[p.clone(), p]).unwrap());
}

#[test]
fn coproduct_is_multiplicative_on_tau_a() {
    // Delta([tau, a1]) expanded by hand: only [tau, a] and [tau, v] survive,
    // giving i h Delta(a1)
    let g = cat().presentation("galilei_group_kappa").unwrap();
    let slots = [g.clone()];
    let comm = eval_in("tau*a[1] - a[1]*tau", &slots).unwrap();
    let lhs = coproduct(&comm, &g).unwrap();
    let rhs = coproduct(&eval_in("I*h*a[1]", &slots).unwrap(), &g).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn coassociativity_of_momentum_by_hand() {
    let p = kappa();
    let m = HopfMaps::new(&p);
    let d = m.coproduct(&eval_in("P[1]", std::slice::from_ref(&p)).unwrap()).unwrap();
    let expected = m
        .ctx(3)
        .normal_order(&eval_in("P[1] (x) E^-1 (x) E^-1 + E (x) P[1] (x) E^-1 + E (x) E (x) P[1]", &[p.clone(), p.clone(), p.clone()]).unwrap())
        .unwrap();
    assert_eq!(m.delta_at(&d, 0, 2).unwrap(), expected);
    assert_eq!(m.delta_at(&d, 1, 2).unwrap(), expected);
}

#[test]
fn counit_on_rotation_is_identity() {
    let p = kappa();
    let m = HopfMaps::new(&p);
    let x = eval_in("M[3]", std::slice::from_ref(&p)).unwrap();
    assert_eq!(m.counit_at(&m.coproduct(&x).unwrap(), 0, 2).unwrap(), x);
}

#[test]
fn kappa_algebra_is_a_hopf_algebra_in_both_modes() {
    let mut pf = Prefilter::new(1);
    let r = verify_bialgebra(&kappa(), both(4), &mut pf).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    assert!(r.get("agree/antipode-left/L[1]").is_some());
    assert_eq!(pf.tally().disagreements, 0);
}

#[test]
fn group_needs_orthogonality() {
    let g = cat().presentation("galilei_group_kappa").unwrap();
    let mut pf = Prefilter::new(1);
    let with = verify_bialgebra(&g, CheckOpts { ortho: true, ..CheckOpts::default() }, &mut pf).unwrap();
    assert!(with.passed(), "{}", with.to_text());
    let without = verify_bialgebra(&g, CheckOpts::default(), &mut pf).unwrap();
    let failed: Vec<&str> = without.failures().map(|c| c.id.as_str()).collect();
    assert!(!failed.is_empty());
    // relations of a with R and v (whose coproducts carry R), and the
    // antipode axioms that need R^T R = 1
    assert_eq!(failed.len(), 96, "{failed:?}");
    assert!(failed.iter().all(|id| id.contains("R[") || id.contains("a[") || id.contains("v[")));
    assert!(failed.contains(&"coproduct-respects/a[1]*R[1,1]"));
    assert!(failed.contains(&"coproduct-respects/a[2]*v[3]"));
    assert!(failed.contains(&"antipode-left/R[2,3]"));
}

#[test]
fn first_casimir_is_central_and_its_mutation_is_not() {
    let c = cat();
    let set = c.element_set("casimirs").unwrap();
    let c1 = &set.items.iter().find(|(n, _)| n == "C1").unwrap().1;
    let mut pf = Prefilter::new(2);
    let r = verify_casimir("C1", c1, &set.over, both(4), &mut pf).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    let mutated = c1.add(&eval_in("P0", std::slice::from_ref(&set.over)).unwrap());
    let r = verify_casimir("C1+P0", &mutated, &set.over, CheckOpts::default(), &mut pf).unwrap();
    let failed: Vec<&str> = r.failures().map(|c| c.id.as_str()).collect();
    assert_eq!(failed, ["C1+P0/L[1]", "C1+P0/L[2]", "C1+P0/L[3]"]);
}

#[test]
fn second_casimir_is_central_in_both_modes() {
    let c = cat();
    let set = c.element_set("casimirs").unwrap();
    let c2 = &set.items.iter().find(|(n, _)| n == "C2").unwrap().1;
    let r = verify_casimir("C2", c2, &set.over, both(4), &mut Prefilter::new(3)).unwrap();
    assert!(r.passed(), "{}", r.to_text());
}

#[test]
fn cocommutator_table() {
    let p = kappa();
    let two = [p.clone(), p.clone()];
    let ctx2 = Ctx::tensor_power(&p, 2);
    let expect = |text: &str| ctx2.normal_order(&eval_in(text, &two).unwrap()).unwrap();
    let sigma = |name: &str| cocommutator(&p, p.gen(name)).unwrap();
    for name in ["M[1]", "M[2]", "M[3]", "P0"] {
        assert!(sigma(name).elem.is_zero(), "{name}");
    }
    assert_eq!(sigma("P[2]").elem, expect("-(P[2] (x) P0 - P0 (x) P[2])"));
    assert_eq!(
        sigma("L[1]").elem,
        expect("-(L[1] (x) P0 - P0 (x) L[1]) - (M[2] (x) P[3] - P[3] (x) M[2]) + (M[3] (x) P[2] - P[2] (x) M[3])")
    );
    for g in 0..10 {
        assert!(cocommutator(&p, g).unwrap().is_antisymmetric(&ctx2).unwrap());
    }
}

#[test]
fn classical_limit_is_the_classical_galilei_algebra() {
    let c = cat();
    let lim = classical_limit(&kappa(), "galilei_algebra_classical").unwrap();
    let shipped = c.presentation("galilei_algebra_classical").unwrap();
    assert_eq!(print_presentation(&lim), print_presentation(&shipped));
    let lim = Arc::new(lim);
    let r = confluence_check(&lim, false, &mut Prefilter::new(4)).unwrap();
    assert!(r.passed());
    let r = verify_bialgebra(&lim, CheckOpts::default(), &mut Prefilter::new(4)).unwrap();
    assert!(r.passed());
}

#[test]
fn classical_limit_rejects_poles() {
    let text = "presentation bad {\n  generators: x y;\n  order: x y;\n  relation [x, y] = 1/h*x;\n}\n";
    let p = kappa_hopf::dsl::parse_presentation(text).unwrap();
    assert!(matches!(classical_limit(&p, "lim"), Err(kappa_hopf::Error::Limit(_))));
}

#[test]
fn flipped_boost_energy_relation_is_detected() {
    let src = shipped_source("galilei_algebra_kappa.hopf").unwrap();
    let flipped = src.replace("relation [L[i], P0] = I*P[i];", "relation [L[i], P0] = -I*P[i];");
    assert_ne!(src, flipped);
    let c = Catalog::with_overrides(&[("galilei_algebra_kappa.hopf".into(), flipped)]).unwrap();
    let p = c.presentation("galilei_algebra_kappa").unwrap();
    let mut pf = Prefilter::new(5);
    // the relation table alone stays consistent: the (L, L, P0) overlap
    // only involves [P0, P_k (P.M)] = 0 and [L, P] = 0
    assert!(confluence_check(&p, false, &mut pf).unwrap().passed());
    // the flip contradicts [L, E] and the coproduct of L
    let r = verify_bialgebra(&p, both(3), &mut pf).unwrap();
    assert!(r.failures().any(|c| c.id.contains("coproduct-respects/") && c.id.contains("L[1]")), "{}", r.to_text());
}

#[test]
fn tilde_generators_give_the_bicrossproduct() {
    let c = cat();
    let spec = c.bicross_spec("tilde_bicross").unwrap();
    let r = verify_bicross(spec, both(4), &mut Prefilter::new(6)).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    assert!(r.get("formal/action/Lt[1] |> Pt[2]").is_some());
    assert!(r.get("agree/coproduct/Lt[3]").is_some());
    assert!(r.checks.iter().any(|c| c.id == "formal/relation/Lt[2]*Lt[1]"));
}

#[test]
fn group_bicrossproduct_is_exact() {
    let c = cat();
    let spec = c.bicross_spec("group_bicross").unwrap();
    let r = verify_bicross(spec, CheckOpts { ortho: true, ..CheckOpts::default() }, &mut Prefilter::new(7)).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    assert!(r.checks.iter().all(|c| c.status == Status::Pass));
}

#[test]
fn spacetime_coaction_is_covariant() {
    let c = cat();
    let r = verify_comodule(c.comodule("spacetime_coaction").unwrap(), &mut Prefilter::new(8)).unwrap();
    assert!(r.passed(), "{}", r.to_text());
    assert!(r.get("relation/t*x[1]").is_some(), "{}", r.to_text());
}
