//! Executable checks of the finite lemmas behind the uncountability result,
//! the separation experiment, and property suites for class composition.
//!
//! Every suite returns a [`VerificationReport`]. Sampled suites split their
//! samples into chunks of [`SAMPLE_CHUNK`]; chunk `k` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` switched to stream `k`, so a report is
//! reproducible from its seed whatever the thread count.

mod lattice;
mod lemmas;
mod meta;

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use lemmas::{
    minorant_witness, probe_meqn, separation_experiment, verify_meqn_claims, verify_si2,
    verify_uvw1, Si2Mode, SEPARATION_PAIRS,
};
pub use lattice::{verify_coherence, COHERENCE_EXHAUSTIVE_ARITY, COHERENCE_RANK_LIMIT};
pub use meta::{verify_meta, MetaSuite, META_CAP_LIMIT};

/// Samples per independently seeded chunk.
pub const SAMPLE_CHUNK: u64 = 4096;

/// At most this many counterexamples are listed; the total is kept in the
/// parameters under `violations_total`.
pub const MAX_LISTED_VIOLATIONS: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Nothing was checked.
    Inconclusive,
}

/// Outcome of one suite run. A sampled pass means no counterexample was
/// drawn, nothing more.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub parameters: BTreeMap<String, Value>,
    pub cases_checked: u64,
    pub violations: Vec<String>,
    pub mode: Mode,
    pub seed: Option<u64>,
    pub runtime_ms: u64,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Equal up to running time.
    pub fn same_outcome(&self, other: &Self) -> bool {
        let mut a = self.clone();
        a.runtime_ms = other.runtime_ms;
        a == *other
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Collects the pieces of a report while a suite runs.
pub(crate) struct ReportBuilder {
    suite: &'static str,
    parameters: BTreeMap<String, Value>,
    mode: Mode,
    seed: Option<u64>,
    start: Instant,
}

impl ReportBuilder {
    pub(crate) fn new(suite: &'static str, mode: Mode, seed: Option<u64>) -> Self {
        Self { suite, parameters: BTreeMap::new(), mode, seed, start: Instant::now() }
    }

    pub(crate) fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub(crate) fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub(crate) fn finish(mut self, cases_checked: u64, mut violations: Vec<String>) -> VerificationReport {
        violations.sort();
        violations.dedup();
        let verdict = if !violations.is_empty() {
            Verdict::Fail
        } else if cases_checked == 0 {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        if violations.len() > MAX_LISTED_VIOLATIONS {
            self.set("violations_total", violations.len() as u64);
            violations.truncate(MAX_LISTED_VIOLATIONS);
        }
        VerificationReport {
            suite: self.suite.to_string(),
            parameters: self.parameters,
            cases_checked,
            violations,
            mode: self.mode,
            seed: self.seed,
            runtime_ms: self.start.elapsed().as_millis() as u64,
            verdict,
        }
    }
}

/// Run `samples` draws of `draw`, which returns the cases it checked and
/// pushes any counterexamples. Chunks run in parallel; results are merged in
/// chunk order.
pub(crate) fn run_sampled<F>(samples: u64, seed: u64, draw: F) -> (u64, Vec<String>)
where
    F: Fn(&mut ChaCha8Rng, &mut Vec<String>) -> u64 + Sync,
{
    let chunks = samples.div_ceil(SAMPLE_CHUNK);
    let results: Vec<(u64, Vec<String>)> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let count = SAMPLE_CHUNK.min(samples - k * SAMPLE_CHUNK);
            let mut violations = Vec::new();
            let mut cases = 0;
            for _ in 0..count {
                cases += draw(&mut rng, &mut violations);
            }
            (cases, violations)
        })
        .collect();
    results.into_iter().fold((0, Vec::new()), |(c, mut v), (dc, dv)| {
        v.extend(dv);
        (c + dc, v)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn sampling_is_reproducible_and_chunked() {
        let draw = |rng: &mut ChaCha8Rng, v: &mut Vec<String>| {
            if rng.random_range(0..1000) == 0 {
                v.push(format!("{}", rng.random::<u32>()));
            }
            1
        };
        let a = run_sampled(10_000, 3, draw);
        let b = run_sampled(10_000, 3, draw);
        assert_eq!(a, b);
        assert_eq!(a.0, 10_000);
        assert_ne!(run_sampled(10_000, 4, draw).1, a.1);
    }

    #[test]
    fn verdict_follows_violations() {
        let ok = ReportBuilder::new("t", Mode::Exhaustive, None).finish(3, vec![]);
        assert_eq!(ok.verdict, Verdict::Pass);
        let none = ReportBuilder::new("t", Mode::Exhaustive, None).finish(0, vec![]);
        assert_eq!(none.verdict, Verdict::Inconclusive);
        let many: Vec<String> = (0..150).map(|i| format!("{i:03}")).collect();
        let bad = ReportBuilder::new("t", Mode::Sampled, Some(1)).finish(150, many);
        assert_eq!(bad.verdict, Verdict::Fail);
        assert_eq!(bad.violations.len(), MAX_LISTED_VIOLATIONS);
        assert_eq!(bad.parameters["violations_total"], 150);
        let json: VerificationReport = serde_json::from_str(&bad.to_json()).unwrap();
        assert_eq!(json, bad);
        assert!(bad.to_json().contains("\"verdict\": \"fail\""));
    }
}
