//! The ten acceptance criteria, each printed as one PASS/FAIL line.
//!
//! Criterion 1 is known not to hold in full: the group relations as listed
//! do not make the coproduct and antipode algebra maps unless `R` is also
//! taken orthogonal. The test prints FAIL for it and asserts exactly that
//! shape of failure, so any other change in the verdict is caught.

use std::time::{Duration, Instant};

use kappa_hopf::cohom::{classical_lie, coboundary, solve_coboundary, Tensor2};
use kappa_hopf::models::Catalog;
use kappa_hopf::ncalg::Element;
use kappa_hopf::projrep::{ExpProduct, Galilei2d};
use kappa_hopf::report::{Prefilter, Report, Status, SCHEMA_JSON};
use kappa_hopf::scalars::{rat, GaussQ, Poly, Sym};
use kappa_hopf::suite::{run_suite, SuiteConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    lines: Vec<String>,
    failed: Vec<usize>,
}

impl Verdict {
    fn record(&mut self, n: usize, what: &str, ok: bool, took: Duration, limit: Duration) {
        let ok_time = took <= limit;
        let status = if ok && ok_time { "PASS" } else { "FAIL" };
        let mut line = format!("criterion {n:>2}: {status}  {what} ({:.1?}, limit {:?})", took, limit);
        if ok && !ok_time {
            line += " -- over the time limit";
        }
        println!("{line}");
        self.lines.push(line);
        if status == "FAIL" {
            self.failed.push(n);
        }
    }
}

fn suite(name: &str) -> Report {
    run_suite(&SuiteConfig::new(name)).unwrap()
}

fn with_prefix<'a>(r: &'a Report, prefix: &'a str) -> impl Iterator<Item = &'a kappa_hopf::report::Check> + 'a {
    r.checks.iter().filter(move |c| c.id.starts_with(prefix))
}

fn all_pass(r: &Report, prefix: &str) -> bool {
    let mut any = false;
    for c in with_prefix(r, prefix) {
        any = true;
        if c.status != Status::Pass {
            return false;
        }
    }
    any
}

fn random_r(n: usize, rng: &mut ChaCha8Rng) -> Tensor2 {
    let mut r = Tensor2::zero(n);
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.4) {
                let c = GaussQ::new(rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)), rat(rng.gen_range(-9..=9), 1));
                r = r.add(&Tensor2::wedge(n, a, b, &c));
            }
        }
    }
    r
}

fn criterion_1(v: &mut Verdict) {
    let t0 = Instant::now();
    let r = suite("group");
    let took = t0.elapsed();
    let ortho_ok = all_pass(&r, "ortho/confluence/") && all_pass(&r, "ortho/hopf/");
    let plain_confluent = all_pass(&r, "plain/confluence/");
    let plain_failures: Vec<&str> = r.failures().map(|c| c.id.as_str()).collect();
    let plain_ok = all_pass(&r, "plain/hopf/");
    v.record(1, "group: confluence and Hopf axioms, with and without orthogonality", ortho_ok && plain_confluent && plain_ok, took, Duration::from_secs(30));
    // the known failure: without R^T R = 1 the coproduct and antipode are
    // not algebra maps on the mixed rotation products, and the antipode
    // axiom leaves R R^T - 1 behind; coassociativity and the counit hold
    assert!(ortho_ok && plain_confluent, "{}", r.to_text());
    assert!(!plain_ok);
    let mut shape = std::collections::BTreeMap::new();
    for id in &plain_failures {
        *shape.entry(id.split('/').take(3).collect::<Vec<_>>().join("/")).or_insert(0) += 1;
    }
    let expected: std::collections::BTreeMap<String, i32> = [
        ("plain/hopf/antipode-left", 9),
        ("plain/hopf/antipode-respects", 36),
        ("plain/hopf/antipode-right", 15),
        ("plain/hopf/coproduct-respects", 36),
    ]
    .into_iter()
    .map(|(k, n)| (k.to_string(), n))
    .collect();
    assert_eq!(shape, expected);
}

fn criterion_2(v: &mut Verdict) {
    let t0 = Instant::now();
    let r = suite("algebra");
    let took = t0.elapsed();
    let confluence = with_prefix(&r, "confluence/").count() > 0;
    let modes = ["formal/", "series/", "agree/"].iter().all(|m| with_prefix(&r, &format!("hopf/{m}")).count() > 0);
    let agree = all_pass(&r, "hopf/agree/");
    let order = with_prefix(&r, "hopf/series/").all(|c| c.order == Some(4));
    v.record(2, "algebra: confluence reported, Hopf axioms in both modes at order 4, modes agree", confluence && modes && agree && order && r.passed(), took, Duration::from_secs(60));
}

fn criterion_3(v: &mut Verdict) {
    let t0 = Instant::now();
    let r = suite("casimirs");
    let took = t0.elapsed();
    let c1 = r.checks.iter().filter(|c| c.id.contains("C1/")).all(|c| c.status == Status::Pass);
    let c2_modes = ["formal/C2/", "series/C2/", "agree/C2/"].iter().all(|p| with_prefix(&r, p).count() > 0);
    let c2_agree = all_pass(&r, "agree/C2/");
    v.record(3, "casimirs: C1 central, C2 computed in both modes and the modes agree", c1 && c2_modes && c2_agree, took, Duration::from_secs(60));
}

fn criterion_4(v: &mut Verdict) {
    let t0 = Instant::now();
    let r = suite("cocommutator");
    let took = t0.elapsed();
    let generators = with_prefix(&r, "sigma/").count() == 10 && all_pass(&r, "sigma/");
    let cocycle = all_pass(&r, "co-jacobi/");
    v.record(4, "cocommutator: ten generators match the table, cocycle condition holds", generators && cocycle, took, Duration::from_secs(10));
}

fn criterion_5(v: &mut Verdict) {
    let t0 = Instant::now();
    let r = suite("rmatrix");
    let single = r.checks.len() == 1
        && r.checks[0].status == Status::Pass
        && r.checks[0].detail.as_deref() == Some("coboundary system infeasible, rank data attached");
    let cat = Catalog::shipped().unwrap();
    let lie = classical_lie(&cat.presentation("galilei_algebra_kappa").unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut round_trips = true;
    for _ in 0..20 {
        let sigma = coboundary(&lie, &random_r(lie.dim(), &mut rng));
        let cert = solve_coboundary(&lie, &sigma).unwrap();
        round_trips &= cert.revalidate() && cert.r_matrix(lie.dim()).is_some_and(|r| coboundary(&lie, &r) == sigma);
    }
    v.record(5, "r-matrix: infeasibility certificate re-validates; 20 random coboundaries solve", single && round_trips, t0.elapsed(), Duration::from_secs(10));
}

fn criterion_6(v: &mut Verdict) {
    let t0 = Instant::now();
    let r = suite("bicross");
    let took = t0.elapsed();
    let algebra = all_pass(&r, "algebra/") && with_prefix(&r, "algebra/").all(|c| c.order.is_none_or(|n| n == 4));
    let group = all_pass(&r, "group/");
    v.record(6, "bicrossproduct: algebra side through order 4, group side exactly", algebra && group, took, Duration::from_secs(60));
}

fn criterion_7(v: &mut Verdict) {
    let t0 = Instant::now();
    let r = suite("spacetime");
    let took = t0.elapsed();
    let ok = r.passed() && r.get("relation/t*x[1]").is_some() && r.count(Status::Pass) == r.checks.len();
    v.record(7, "spacetime: coaction preserves the spacetime relations", ok, took, Duration::from_secs(5));
}

fn criterion_8(v: &mut Verdict) {
    let t0 = Instant::now();
    let r = suite("duality");
    let took = t0.elapsed();
    let table = with_prefix(&r, "pairing/").count() == 160 && all_pass(&r, "pairing/");
    let bracket = with_prefix(&r, "rotation-translation/").count() == 27
        && with_prefix(&r, "rotation-translation/").all(|c| c.status == Status::Pass && c.degree == Some(6));
    let quantization = with_prefix(&r, "quantization/").count() == 120 && all_pass(&r, "quantization/");
    let identities = with_prefix(&r, "rotation-powers/").count() > 0 && with_prefix(&r, "rotation-powers/").all(|c| c.status != Status::Fail);
    v.record(8, "duality: pairing table, rotation-translation bracket at degree 6, quantized brackets, rotation-power pairings", table && bracket && quantization && identities, took, Duration::from_secs(120));
}

fn criterion_9(v: &mut Verdict) {
    let t0 = Instant::now();
    let g = Galilei2d::new(&Catalog::shipped().unwrap(), Poly::var(Sym::new("m"))).unwrap();
    let mut pf = Prefilter::new(9);
    let first_order = g.phi1_residual(&g.phi1_particular().unwrap()).unwrap().is_zero();
    let omega = g.build_omega(3).unwrap();
    let consistent = g.cocycle_residual(&omega, 3).unwrap().is_zero();
    let composes = (0..=3).all(|n| g.rep_compose_check(n, 3, &omega, &mut pf).unwrap().passed());
    // deleting the first correction leaves a residual first seen at h^1
    let bare = g.omega_from_phi(&g.phi0().unwrap());
    let z = g.cocycle_residual(&bare, 1).unwrap();
    let deleted = z.coeff_h(0) == Element::zero() && !z.coeff_h(1).is_zero();
    // without a multiplier the representation already fails at h^0
    let trivial = g.rep_compose_check(1, 0, &ExpProduct::identity(), &mut pf).unwrap();
    let unprojective = trivial.failures().map(|c| c.id.as_str()).collect::<Vec<_>>() == ["compose/n=1/exponent"];
    v.record(
        9,
        "projective representation: first-order equation, consistency and composition through h^3, mutations caught",
        first_order && consistent && composes && deleted && unprojective,
        t0.elapsed(),
        Duration::from_secs(300),
    );
}

fn criterion_10(v: &mut Verdict) {
    let t0 = Instant::now();
    let config = SuiteConfig { seed: 2024, ..SuiteConfig::new("all") };
    let first = run_suite(&config).unwrap();
    let second = run_suite(&config).unwrap();
    let (a, b) = (first.to_json(), second.to_json());
    let identical = a == b;
    let oracle = first.prefilter.disagreements == 0 && first.prefilter.agreements > 0;
    let schema: serde_json::Value = serde_json::from_str(SCHEMA_JSON).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let valid = validator.is_valid(&serde_json::from_str(&a).unwrap());
    let anchored = first.checks.iter().all(|c| !c.anchor.is_empty());
    v.record(
        10,
        &format!(
            "determinism: identical JSON across runs, schema-valid, pre-filter agreed {} and disagreed {} times",
            first.prefilter.agreements, first.prefilter.disagreements
        ),
        identical && oracle && valid && anchored,
        t0.elapsed(),
        Duration::from_secs(600),
    );
}

fn main() {
    let mut v = Verdict { lines: Vec::new(), failed: Vec::new() };
    criterion_1(&mut v);
    criterion_2(&mut v);
    criterion_3(&mut v);
    criterion_4(&mut v);
    criterion_5(&mut v);
    criterion_6(&mut v);
    criterion_7(&mut v);
    criterion_8(&mut v);
    criterion_9(&mut v);
    criterion_10(&mut v);
    assert_eq!(v.failed, [1], "{}", v.lines.join("\n"));
    println!("acceptance: criterion 1 fails as expected without the orthogonality relations; all others pass");
}
