//! Verification reports: one entry per check, with the residual rendered
//! canonically, and a running tally of the random-substitution pre-filter.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ncalg::Element;
use crate::scalars::{rat, GaussQ, Sym};

pub const SCHEMA_VERSION: &str = "kappa-hopf-report/1";

/// JSON schema of the serialized [`Report`].
pub const SCHEMA_JSON: &str = include_str!("../schema/report.schema.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub residual: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Wall time; shown in text output only so JSON stays reproducible.
    #[serde(skip)]
    pub duration: Duration,
}

impl Check {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, status: Status, residual: impl Into<String>) -> Check {
        Check {
            id: id.into(),
            anchor: anchor.into(),
            status,
            residual: residual.into(),
            order: None,
            degree: None,
            detail: None,
            duration: Duration::ZERO,
        }
    }

    pub fn pass_if(id: impl Into<String>, anchor: impl Into<String>, ok: bool, residual: impl Into<String>) -> Check {
        Check::new(id, anchor, if ok { Status::Pass } else { Status::Fail }, residual)
    }

    pub fn info(id: impl Into<String>, anchor: impl Into<String>, residual: impl Into<String>) -> Check {
        Check::new(id, anchor, Status::Info, residual)
    }

    pub fn order(mut self, n: u32) -> Check {
        self.order = Some(n);
        self
    }

    pub fn degree(mut self, d: u32) -> Check {
        self.degree = Some(d);
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Check {
        self.detail = Some(d.into());
        self
    }

    pub fn took(mut self, since: Instant) -> Check {
        self.duration = since.elapsed();
        self
    }
}

/// Evaluates residuals at random rational points before trusting the exact
/// verdict, and counts agreements. A residual that is exactly zero must
/// vanish at every point; a nonzero one almost surely does not.
#[derive(Clone, Debug)]
pub struct Prefilter {
    rng: ChaCha8Rng,
    pub agreements: u64,
    pub disagreements: u64,
}

#[derive(Clone, Copy, Debug, Default, Serialize, PartialEq, Eq)]
pub struct PrefilterTally {
    pub agreements: u64,
    pub disagreements: u64,
}

impl Prefilter {
    pub fn new(seed: u64) -> Prefilter {
        Prefilter { rng: ChaCha8Rng::seed_from_u64(seed), agreements: 0, disagreements: 0 }
    }

    pub fn random_rational(&mut self) -> GaussQ {
        let n: i64 = self.rng.gen_range(-97..=97);
        let d: i64 = self.rng.gen_range(1..=89);
        GaussQ::real(rat(if n == 0 { 1 } else { n }, d))
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Whether `e` vanishes after substituting random rationals for every
    /// commuting symbol.
    pub fn sample_vanishes(&mut self, e: &Element) -> bool {
        let mut values: BTreeMap<Sym, GaussQ> = BTreeMap::new();
        for s in e.symbols() {
            let v = self.random_rational();
            values.insert(s, v);
        }
        e.terms().all(|(_, c)| c.eval_partial(&values).is_some_and(|p| p.is_zero()))
    }

    pub fn record(&mut self, exact_zero: bool, sampled_zero: bool) {
        if exact_zero == sampled_zero {
            self.agreements += 1;
        } else {
            self.disagreements += 1;
        }
    }

    /// Exact zero test on `e`, cross-checked by sampling.
    pub fn zero(&mut self, e: &Element) -> bool {
        let exact = e.is_zero();
        let sampled = self.sample_vanishes(e);
        self.record(exact, sampled);
        exact
    }

    pub fn tally(&self) -> PrefilterTally {
        PrefilterTally { agreements: self.agreements, disagreements: self.disagreements }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: String,
    pub suite: String,
    pub engine_version: String,
    pub config: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub prefilter: PrefilterTally,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Report {
        Report {
            schema: SCHEMA_VERSION.into(),
            suite: suite.into(),
            engine_version: env!("CARGO_PKG_VERSION").into(),
            config: BTreeMap::new(),
            checks: Vec::new(),
            prefilter: PrefilterTally::default(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    /// Appends the checks of `other`, prefixing their ids.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.id = format!("{prefix}/{}", c.id);
            }
            self.checks.push(c);
        }
        self.prefilter.agreements += other.prefilter.agreements;
        self.prefilter.disagreements += other.prefilter.disagreements;
    }

    pub fn add_tally(&mut self, p: &Prefilter) {
        self.prefilter.agreements += p.agreements;
        self.prefilter.disagreements += p.disagreements;
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "suite {} (kappa-hopf {})", self.suite, self.engine_version);
        for (k, v) in &self.config {
            let _ = writeln!(s, "  {k} = {v}");
        }
        for c in &self.checks {
            let _ = write!(s, "{} {}  [{}]", c.status, c.id, c.anchor);
            if let Some(n) = c.order {
                let _ = write!(s, " order={n}");
            }
            if let Some(d) = c.degree {
                let _ = write!(s, " degree={d}");
            }
            let _ = writeln!(s, " ({:.1?})", c.duration);
            if c.status != Status::Pass && c.residual != "0" {
                let _ = writeln!(s, "    residual: {}", c.residual);
            }
            if let Some(d) = &c.detail {
                let _ = writeln!(s, "    {d}");
            }
        }
        let _ = writeln!(
            s,
            "{} pass, {} fail, {} info; pre-filter agreed {} times, disagreed {} times",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Info),
            self.prefilter.agreements,
            self.prefilter.disagreements
        );
        s
    }
}
