use std::sync::Arc;
use std::time::Instant;

use kappa_hopf::duality::{
    rotation_power_identities, pbw_monomials, poisson_verify, quantization_crosscheck, MatrixModel, SigmaTable,
};
use kappa_hopf::dsl::eval_in;
use kappa_hopf::hopf::coproduct;
use kappa_hopf::models::{shipped_source, Catalog};
use kappa_hopf::ncalg::{Ctx, Element, GenId, Letter};
use kappa_hopf::scalars::{GaussQ, Poly};
use kappa_hopf::Error;
use proptest::prelude::*;

struct Fixture {
    cat: Catalog,
    model: MatrixModel,
    sigma: SigmaTable,
}

fn fixture() -> Fixture {
    let cat = Catalog::shipped().unwrap();
    let model = MatrixModel::galilei(&cat).unwrap();
    let sigma = SigmaTable::from_hopf(&cat.presentation("galilei_algebra_kappa").unwrap(), &model.algebra).unwrap();
    Fixture { cat, model, sigma }
}

fn coord(model: &MatrixModel, text: &str) -> Element {
    eval_in(text, std::slice::from_ref(&model.group)).unwrap()
}

fn word(model: &MatrixModel, names: &[&str]) -> Vec<GenId> {
    names.iter().map(|n| model.generator(n).unwrap()).collect()
}

#[test]
fn single_generator_pairings() {
    let f = fixture();
    let m = &f.model;
    let table = m.pairing_table().unwrap();
    assert_eq!(table.checks.len(), 16 * 10);
    assert!(table.passed(), "{}", table.to_text());
    assert_eq!(m.pair(&coord(m, "tau"), &word(m, &["P0"])).unwrap(), Poly::i());
    assert_eq!(m.pair(&coord(m, "a[2]"), &word(m, &["P[2]"])).unwrap(), -Poly::i());
    assert_eq!(m.pair(&coord(m, "R[1,2]"), &word(m, &["M[3]"])).unwrap(), -Poly::i());
    assert_eq!(m.pair(&coord(m, "R[2,1]"), &word(m, &["M[3]"])).unwrap(), Poly::i());
    assert!(m.pair(&coord(m, "v[1]"), &word(m, &["P[1]"])).unwrap().is_zero());
    // the unit pairs to 1 with the empty word
    assert_eq!(m.pair(&coord(m, "1"), &[]).unwrap(), Poly::one());
    assert!(m.bracket_consistency().unwrap().passed());
}

#[test]
fn second_order_pairings_by_hand() {
    let f = fixture();
    let m = &f.model;
    // (L_1 P0) has a single entry -1 at (x1, 1): <a1, L1 P0> = (-i)^2 (-1) = 1
    assert_eq!(m.pair(&coord(m, "a[1]"), &word(m, &["L[1]", "P0"])).unwrap(), Poly::one());
    assert!(m.pair(&coord(m, "a[1]"), &word(m, &["P0", "L[1]"])).unwrap().is_zero());
    // <v1 tau, L1 P0> = <v1, L1><tau, P0> + <v1, P0><tau, L1> = (-i)(i) = 1
    assert_eq!(m.pair(&coord(m, "v[1]*tau"), &word(m, &["L[1]", "P0"])).unwrap(), Poly::one());
    // (M3 M3)_{11} = eps_12 3 eps_21 3 = -1: <R11, M3 M3> = (-i)^2 (-1) = 1
    assert_eq!(m.pair(&coord(m, "R[1,1]"), &word(m, &["M[3]", "M[3]"])).unwrap(), Poly::one());
}

#[test]
fn pairing_rejects_foreign_letters() {
    let f = fixture();
    let kappa = f.cat.presentation("galilei_algebra_kappa").unwrap();
    let two = eval_in("tau (x) tau", &[f.model.group.clone(), f.model.group.clone()]).unwrap();
    assert!(matches!(f.model.pair(&two, &[]), Err(Error::Argument(_))));
    assert!(matches!(f.model.pair(&coord(&f.model, "tau"), &[42]), Err(Error::Argument(_))));
    assert!(MatrixModel::new(f.model.group.clone(), kappa).is_err());
}

/// `sum over position subsets S` of `<phi, X_S> <psi, X_not S>`: the
/// pairing of `phi (x) psi` with the primitive coproduct of the word.
fn split_pairing(m: &MatrixModel, phi: &Element, psi: &Element, x: &[GenId]) -> Poly {
    let mut acc = Poly::zero();
    for mask in 0u32..(1 << x.len()) {
        let (a, b): (Vec<(usize, &GenId)>, Vec<(usize, &GenId)>) = x.iter().enumerate().partition(|(k, _)| mask & (1 << k) != 0);
        let a: Vec<GenId> = a.into_iter().map(|(_, g)| *g).collect();
        let b: Vec<GenId> = b.into_iter().map(|(_, g)| *g).collect();
        acc.add_assign_ref(&(&m.pair(phi, &a).unwrap() * &m.pair(psi, &b).unwrap()));
    }
    acc
}

/// `<Delta phi, X (x) Y>`, reading each two-slot word as a product of one
/// group function per slot.
fn coproduct_pairing(m: &MatrixModel, dphi: &Element, x: &[GenId], y: &[GenId]) -> Poly {
    let mut acc = Poly::zero();
    for (w, c) in dphi.terms() {
        let part = |slot: u8| {
            let letters: Vec<Letter> = w.iter().filter(|l| l.slot == slot).map(|l| Letter::with_pow(0, l.gen, l.pow)).collect();
            Element::term(letters, Poly::one())
        };
        let v = &m.pair(&part(0), x).unwrap() * &m.pair(&part(1), y).unwrap();
        acc.add_assign_ref(&(&v * c));
    }
    acc
}

const COORDS: [&str; 16] = [
    "R[1,1]", "R[1,2]", "R[1,3]", "R[2,1]", "R[2,2]", "R[2,3]", "R[3,1]", "R[3,2]", "R[3,3]", "v[1]", "v[2]", "v[3]", "a[1]",
    "a[2]", "a[3]", "tau",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_pairs_through_the_coproduct(
        fa in proptest::collection::vec(0usize..16, 1..3),
        fb in proptest::collection::vec(0usize..16, 1..3),
        x in proptest::collection::vec(0u16..10, 0..5),
    ) {
        let f = fixture();
        let m = &f.model;
        let phi = coord(m, &fa.iter().map(|k| COORDS[*k]).collect::<Vec<_>>().join("*"));
        let psi = coord(m, &fb.iter().map(|k| COORDS[*k]).collect::<Vec<_>>().join("*"));
        let prod = coord(m, &format!("({})*({})", fa.iter().map(|k| COORDS[*k]).collect::<Vec<_>>().join("*"),
            fb.iter().map(|k| COORDS[*k]).collect::<Vec<_>>().join("*")));
        prop_assert_eq!(m.pair(&prod, &x).unwrap(), split_pairing(m, &phi, &psi, &x));
    }

    #[test]
    fn word_products_pair_through_the_group_coproduct(
        fa in 0usize..16,
        x in proptest::collection::vec(0u16..10, 0..4),
        y in proptest::collection::vec(0u16..10, 0..4),
    ) {
        let f = fixture();
        let m = &f.model;
        let phi = coord(m, COORDS[fa]);
        let dphi = coproduct(&phi, &m.group).unwrap();
        let xy: Vec<GenId> = x.iter().chain(&y).copied().collect();
        prop_assert_eq!(m.pair(&phi, &xy).unwrap(), coproduct_pairing(m, &dphi, &x, &y));
    }

    #[test]
    fn pairing_respects_the_degree_filtration(
        fa in proptest::collection::vec(0usize..16, 1..4),
        x in proptest::collection::vec(0u16..10, 0..3),
    ) {
        // shifted coordinates vanish at the identity, so a product of d of
        // them is blind to words shorter than d
        let f = fixture();
        let m = &f.model;
        let shifted = |k: usize| {
            let name = COORDS[k];
            if name.starts_with("R[") && name.as_bytes()[2] == name.as_bytes()[4] { format!("({name} - 1)") } else { name.to_string() }
        };
        let phi = coord(m, &fa.iter().map(|k| shifted(*k)).collect::<Vec<_>>().join("*"));
        if x.len() < fa.len() {
            prop_assert!(m.pair(&phi, &x).unwrap().is_zero());
        }
    }
}

#[test]
fn fast_sigma_side_agrees_with_symbolic_cocommutator() {
    // independent route: expand sigma(X) as an element of U(g) (x) U(g) and
    // pair each tensor factor separately
    let f = fixture();
    let m = &f.model;
    let alg = m.algebra.clone();
    let ctx2 = Ctx::tensor_power(&alg, 2);
    let pairs = [("R[1,2]", "a[3]"), ("v[1]", "v[2]"), ("tau", "a[1]"), ("a[1]", "a[2]"), ("v[2]", "a[2]"), ("R[2,3]", "R[3,1]")];
    for x in pbw_monomials(10, 3) {
        let sx = f.sigma.of_word(&x, &ctx2).unwrap();
        for (a, b) in pairs {
            let (fa, fb) = (coord(m, a), coord(m, b));
            let mut oracle = Poly::zero();
            for (w, c) in sx.terms() {
                let part = |slot: u8| -> Vec<GenId> {
                    w.iter().filter(|l| l.slot == slot).flat_map(|l| std::iter::repeat_n(l.gen, l.pow as usize)).collect()
                };
                let v = &m.pair(&fa, &part(0)).unwrap() * &m.pair(&fb, &part(1)).unwrap();
                oracle.add_assign_ref(&(&v * c));
            }
            oracle = oracle.scale(&-GaussQ::i());
            let fast = kappa_hopf::duality::sigma_side(m, &f.sigma, &x, a, b).unwrap();
            assert_eq!(fast, oracle, "{a},{b} on {x:?}");
        }
    }
}

#[test]
fn boost_rotation_bracket_on_translations_at_degree_six() {
    let f = fixture();
    let m = &f.model;
    let start = Instant::now();
    for (mm, nn, r) in [(1, 3, 2), (2, 2, 2), (1, 2, 1)] {
        // {R^m_n, a^r} = -h (v^m R^r_n - delta_mr v^p R^p_n)
        let mut text = format!("-h*(v[{mm}]*R[{r},{nn}]");
        if mm == r {
            text += &format!(" - v[1]*R[1,{nn}] - v[2]*R[2,{nn}] - v[3]*R[3,{nn}]");
        }
        text += ")";
        let cand = coord(m, &text);
        let rep = poisson_verify(m, &f.sigma, &format!("R[{mm},{nn}]"), &format!("a[{r}]"), &cand, 6).unwrap();
        assert!(rep.passed(), "{}", rep.to_text());
        assert_eq!(rep.checks[0].detail.as_deref(), Some("8008 PBW monomials up to degree 6"));
        let flipped = cand.neg();
        let rep = poisson_verify(m, &f.sigma, &format!("R[{mm},{nn}]"), &format!("a[{r}]"), &flipped, 6).unwrap();
        assert!(!rep.passed());
    }
    assert!(start.elapsed().as_secs() < 120);
}

#[test]
fn other_brackets_of_coordinates() {
    let f = fixture();
    let m = &f.model;
    let cases = [
        ("tau", "a[2]", "h*a[2]"),
        ("tau", "v[1]", "h*v[1]"),
        ("v[1]", "v[2]", "0"),
        ("R[1,2]", "R[2,3]", "0"),
        ("v[1]", "a[1]", "-h*(v[1]*v[1] - 1/2*(v[1]*v[1] + v[2]*v[2] + v[3]*v[3]))"),
        ("v[2]", "a[3]", "-h*v[2]*v[3]"),
        ("a[1]", "a[2]", "0"),
    ];
    for (a, b, text) in cases {
        let cand = coord(m, text);
        let d = cand.degree() + 2;
        let rep = poisson_verify(m, &f.sigma, a, b, &cand, d).unwrap();
        assert!(rep.passed(), "{a},{b}: {}", rep.to_text());
    }
    // a wrong constant in {tau, a} is caught
    let rep = poisson_verify(m, &f.sigma, "tau", "a[2]", &coord(m, "2*h*a[2]"), 3).unwrap();
    assert!(!rep.passed());
}

#[test]
fn too_small_degree_bound_is_refused() {
    let f = fixture();
    let m = &f.model;
    let cand = coord(m, "-h*v[1]*R[2,3]");
    assert!(matches!(poisson_verify(m, &f.sigma, "R[1,3]", "a[2]", &cand, 2), Err(Error::Argument(_))));
    assert!(poisson_verify(m, &f.sigma, "R[1,3]", "a[2]", &cand, 3).is_ok());
    let g = f.cat.presentation("galilei_group_kappa").unwrap();
    assert!(matches!(quantization_crosscheck(m, &f.sigma, &g, Some(1)), Err(Error::Argument(_))));
}

#[test]
fn group_relations_are_the_quantized_poisson_structure() {
    let f = fixture();
    let g = f.cat.presentation("galilei_group_kappa").unwrap();
    let r4 = quantization_crosscheck(&f.model, &f.sigma, &g, None).unwrap();
    assert_eq!(r4.checks.len(), 120);
    assert!(r4.passed(), "{}", r4.to_text());
    assert!(r4.checks.iter().all(|c| c.degree == Some(4)));
    // verdicts are stable when the bound grows
    let r5 = quantization_crosscheck(&f.model, &f.sigma, &g, Some(5)).unwrap();
    let verdicts = |r: &kappa_hopf::report::Report| r.checks.iter().map(|c| (c.id.clone(), c.status)).collect::<Vec<_>>();
    assert_eq!(verdicts(&r4), verdicts(&r5));
}

#[test]
fn wrong_group_relation_is_caught_by_the_crosscheck() {
    let src = shipped_source("galilei_group_kappa.hopf").unwrap();
    let mutated = src.replace("relation [tau, a[i]] = I*h*a[i];", "relation [tau, a[i]] = -I*h*a[i];");
    assert_ne!(src, mutated);
    let cat = Catalog::with_overrides(&[("galilei_group_kappa.hopf".into(), mutated)]).unwrap();
    let f = fixture();
    let g: Arc<_> = cat.presentation("galilei_group_kappa").unwrap();
    let r = quantization_crosscheck(&f.model, &f.sigma, &g, None).unwrap();
    let failed: Vec<&str> = r.failures().map(|c| c.id.as_str()).collect();
    assert_eq!(failed, ["poisson/a[1],tau", "poisson/a[2],tau", "poisson/a[3],tau"], "{}", r.to_text());
}

#[test]
fn rotation_power_identities_hold_as_displayed() {
    let f = fixture();
    let r = rotation_power_identities(&f.model, 3).unwrap();
    assert_eq!(r.checks.len(), 4 * 5);
    assert!(r.passed(), "{}", r.to_text());
    assert!(r.checks.iter().all(|c| c.status == kappa_hopf::report::Status::Pass));
}
