//! `clonoid verify ...`: run a suite and print its report.

use std::fmt::Write;

use clonoid_core::verify::{
    probe_meqn, separation_experiment, verify_coherence, verify_meqn_claims, verify_meta, verify_si2,
    verify_uvw1, MetaSuite, Si2Mode,
};
use clonoid_core::{Error, Mode, Verdict, VerificationReport};
use serde_json::Value;

use crate::{Reply, VerifyCmd};

fn render(report: &VerificationReport) -> String {
    let word = |v: Verdict| match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Inconclusive => "inconclusive",
    };
    let mode = match report.mode {
        Mode::Exhaustive => "exhaustive",
        Mode::Sampled => "sampled",
    };
    let mut text = format!("{}: {} ({mode})\n", report.suite, word(report.verdict));
    let _ = writeln!(text, "cases {}", report.cases_checked);
    if let Some(seed) = report.seed {
        let _ = writeln!(text, "seed {seed}");
    }
    let _ = writeln!(text, "runtime {} ms", report.runtime_ms);
    for (k, v) in &report.parameters {
        match v {
            Value::String(s) => {
                let _ = writeln!(text, "{k} {s}");
            }
            other => {
                let _ = writeln!(text, "{k} {other}");
            }
        }
    }
    for v in &report.violations {
        let _ = writeln!(text, "violation {v}");
    }
    text
}

pub(crate) fn verify(cmd: VerifyCmd) -> Result<Reply, Error> {
    let report = match cmd {
        VerifyCmd::Uvw1 { n } => verify_uvw1(n)?,
        VerifyCmd::Si2 { n, m_max, samples, seed } => {
            let mode = match samples {
                Some(samples) => Si2Mode::Sampled { samples, seed: seed.expect("clap requires a seed with samples") },
                None => Si2Mode::Exhaustive,
            };
            verify_si2(n, m_max, mode)?
        }
        VerifyCmd::MeqnClaims { m, n, samples, seed } => verify_meqn_claims(m, n, samples, seed)?,
        VerifyCmd::ProbeMeqn { m, n, budget, seed } => probe_meqn(m, n, budget, seed)?,
        VerifyCmd::Separation { ns, budget, seed } => separation_experiment(&ns, budget, seed)?,
        VerifyCmd::Meta { suite, samples, cap, seed } => {
            let suite: MetaSuite = suite.parse()?;
            verify_meta(suite, samples, cap, seed)?
        }
        VerifyCmd::Coherence { max_rank, pool, seed } => verify_coherence(max_rank, pool, seed)?,
    };
    let json = serde_json::to_value(&report).expect("reports serialize");
    let mut reply = Reply::new(render(&report), json);
    reply.violated = report.verdict == Verdict::Fail;
    Ok(reply)
}
