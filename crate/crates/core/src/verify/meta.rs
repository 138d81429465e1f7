//! Property suites for class composition and clonoid generation.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{run_sampled, Mode, ReportBuilder, VerificationReport};
use crate::classcomp::{
    compose_classes, gen_clonoid, is_clonoid, left_closure, minor_closure, transform_class, FunctionClass,
    GenOptions, Transform, DEFAULT_WORK_LIMIT,
};
use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::postlattice::{dual_clone, enumerate, leq, CloneId};

/// Largest cap the suites accept.
pub const META_CAP_LIMIT: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetaSuite {
    /// `(IJ)K ⊆ I(JK)`, with equality when `J` is a minion.
    Associativity,
    /// A clonoid for larger clones is one for smaller clones.
    Clonmon,
    /// The four negation/duality forms of the clonoid property agree.
    Knid,
    /// `C2(F C1)` is the least clonoid containing `F`.
    GenFormula,
}

impl MetaSuite {
    pub const ALL: [MetaSuite; 4] = [MetaSuite::Associativity, MetaSuite::Clonmon, MetaSuite::Knid, MetaSuite::GenFormula];
}

impl fmt::Display for MetaSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetaSuite::Associativity => "associativity",
            MetaSuite::Clonmon => "clonmon",
            MetaSuite::Knid => "knid",
            MetaSuite::GenFormula => "gen_formula",
        })
    }
}

impl FromStr for MetaSuite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "associativity" => Ok(MetaSuite::Associativity),
            "clonmon" => Ok(MetaSuite::Clonmon),
            "knid" => Ok(MetaSuite::Knid),
            "gen_formula" => Ok(MetaSuite::GenFormula),
            _ => Err(Error::UnknownSymbol(s.to_string())),
        }
    }
}

fn random_function(rng: &mut ChaCha8Rng, cap: u32) -> Result<BooleanFunction> {
    let n = rng.random_range(1..=cap);
    let width = 1u32 << n;
    let mask = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
    BooleanFunction::from_small(n, rng.random::<u64>() & mask)
}

fn random_class(rng: &mut ChaCha8Rng, cap: u32) -> Result<FunctionClass> {
    let size = rng.random_range(1..=3);
    let fs = (0..size).map(|_| random_function(rng, cap)).collect::<Result<Vec<_>>>()?;
    FunctionClass::from_functions(cap, fs)
}

fn class_str(k: &FunctionClass) -> String {
    format!("[{}]", k.literals().join(" "))
}

/// Clones with finite ranks up to 3, plus the infinite ones.
fn clone_pool() -> Vec<CloneId> {
    CloneId::instantiated(3)
}

fn pick(rng: &mut ChaCha8Rng, pool: &[CloneId]) -> CloneId {
    pool[rng.random_range(0..pool.len())]
}

/// A random clone below `upper`.
fn pick_below(rng: &mut ChaCha8Rng, pool: &[CloneId], upper: CloneId) -> Result<CloneId> {
    let below: Vec<CloneId> = pool.iter().copied().filter(|&c| leq(c, upper).unwrap_or(false)).collect();
    Ok(below[rng.random_range(0..below.len())])
}

/// Every function of arity at most `cap`, for the singleton sweeps.
fn all_small_functions(cap: u32) -> Result<Vec<BooleanFunction>> {
    let mut out = Vec::new();
    for n in 1..=cap {
        out.extend(crate::function::all_functions(n)?);
    }
    Ok(out)
}

fn singleton(cap: u32, f: &BooleanFunction) -> Result<FunctionClass> {
    FunctionClass::from_functions(cap, [f.clone()])
}

/// Run one suite: `samples` random instances, plus every singleton class
/// when `cap <= 2`.
pub fn verify_meta(suite: MetaSuite, samples: u64, cap: u32, seed: u64) -> Result<VerificationReport> {
    if cap == 0 || cap > META_CAP_LIMIT {
        return Err(Error::CapTooLarge { cap, limit: META_CAP_LIMIT, what: format!("{suite} suite") });
    }
    let mut report = ReportBuilder::new("meta", Mode::Sampled, Some(seed))
        .param("property", suite.to_string())
        .param("samples", samples)
        .param("cap", cap);
    let pool = clone_pool();
    let (mut cases, mut violations) = run_sampled(samples, seed, |rng, v| {
        let outcome = match suite {
            MetaSuite::Associativity => random_associativity(rng, cap),
            MetaSuite::Clonmon => random_clonmon(rng, cap, &pool),
            MetaSuite::Knid => random_knid(rng, cap, &pool),
            MetaSuite::GenFormula => random_gen_formula(rng, cap, &pool),
        };
        match outcome {
            Ok(found) => v.extend(found),
            Err(e) => v.push(format!("error: {e}")),
        }
        1
    });
    if cap <= 2 {
        let (c, v) = singleton_sweep(suite, cap, seed, &pool)?;
        report.set("singleton_cases", c);
        cases += c;
        violations.extend(v);
    }
    Ok(report.finish(cases, violations))
}

fn random_associativity(rng: &mut ChaCha8Rng, cap: u32) -> Result<Vec<String>> {
    let i = random_class(rng, cap)?;
    let j = random_class(rng, cap)?;
    let k = random_class(rng, cap)?;
    associativity(&i, &j, &k)
}

fn associativity(i: &FunctionClass, j: &FunctionClass, k: &FunctionClass) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let compose = |a: &FunctionClass, b: &FunctionClass| compose_classes(a, b, DEFAULT_WORK_LIMIT);
    let left = compose(&compose(i, j)?, k)?;
    let right = compose(i, &compose(j, k)?)?;
    if !left.is_subset(&right)? {
        out.push(format!("(IJ)K not in I(JK): I={} J={} K={}", class_str(i), class_str(j), class_str(k)));
    }
    // For a minion J the two sides agree. A member of I(JK) combines up to
    // cap(I) blocks of cap(J) inner functions, so J is taken up to that
    // arity on the left.
    let cap = j.max_arity();
    let minion = minor_closure(j, cap)?;
    let wide = minor_closure(j, cap * i.max_arity())?;
    let left = compose(&compose(i, &wide)?, k)?;
    let right = compose(i, &compose(&minion, k)?)?;
    if left != right {
        out.push(format!("minion case differs: I={} J={} K={}", class_str(i), class_str(&minion), class_str(k)));
    }
    Ok(out)
}

fn random_clonmon(rng: &mut ChaCha8Rng, cap: u32, pool: &[CloneId]) -> Result<Vec<String>> {
    let (big1, big2) = (pick(rng, pool), pick(rng, pool));
    let (c1, c2) = (pick_below(rng, pool, big1)?, pick_below(rng, pool, big2)?);
    let f = random_class(rng, cap)?;
    clonmon(&f, big1, big2, c1, c2)
}

fn clonmon(f: &FunctionClass, big1: CloneId, big2: CloneId, c1: CloneId, c2: CloneId) -> Result<Vec<String>> {
    let k = gen_clonoid(f, big1, big2, GenOptions::new(f.max_arity()))?.class;
    let mut out = Vec::new();
    if !is_clonoid(&k, big1, big2)? {
        out.push(format!("generated class is not a ({big1},{big2})-clonoid: F={}", class_str(f)));
    }
    if !is_clonoid(&k, c1, c2)? {
        out.push(format!("({big1},{big2})-clonoid is not a ({c1},{c2})-clonoid: F={}", class_str(f)));
    }
    Ok(out)
}

fn random_knid(rng: &mut ChaCha8Rng, cap: u32, pool: &[CloneId]) -> Result<Vec<String>> {
    let (c1, c2) = (pick(rng, pool), pick(rng, pool));
    let f = random_class(rng, cap)?;
    let k = if rng.random_bool(0.5) { gen_clonoid(&f, c1, c2, GenOptions::new(cap))?.class } else { f };
    knid(&k, c1, c2)
}

/// The four equivalent statements for `K`, `C1`, `C2`.
pub(crate) fn knid_statements(k: &FunctionClass, c1: CloneId, c2: CloneId) -> Result<[bool; 4]> {
    let (d1, d2) = (dual_clone(c1), dual_clone(c2));
    Ok([
        is_clonoid(k, c1, c2)?,
        is_clonoid(&transform_class(k, Transform::Inner), d1, c2)?,
        is_clonoid(&transform_class(k, Transform::Outer), c1, d2)?,
        is_clonoid(&transform_class(k, Transform::Dual), d1, d2)?,
    ])
}

fn knid(k: &FunctionClass, c1: CloneId, c2: CloneId) -> Result<Vec<String>> {
    let s = knid_statements(k, c1, c2)?;
    if s.iter().all(|&b| b == s[0]) {
        Ok(Vec::new())
    } else {
        Ok(vec![format!("statements {s:?} disagree for ({c1},{c2}): K={}", class_str(k))])
    }
}

fn random_gen_formula(rng: &mut ChaCha8Rng, cap: u32, pool: &[CloneId]) -> Result<Vec<String>> {
    let (c1, c2) = (pick(rng, pool), pick(rng, pool));
    let f = random_class(rng, cap)?;
    gen_formula(&f, c1, c2)
}

/// Close `f` under both compositions until nothing new appears.
fn iterated_closure(f: &FunctionClass, c1: CloneId, c2: CloneId) -> Result<FunctionClass> {
    let cap = f.max_arity();
    let source = FunctionClass::from_functions(
        cap,
        (1..=cap).map(|m| enumerate(c1, m)).collect::<Result<Vec<_>>>()?.into_iter().flatten(),
    )?;
    let mut k = f.clone();
    loop {
        let mut next = k.union(&compose_classes(&k, &source, DEFAULT_WORK_LIMIT)?)?;
        for m in 1..=cap {
            for g in left_closure(c2, k.part(m), m)? {
                next.insert(g)?;
            }
        }
        if next == k {
            return Ok(k);
        }
        k = next;
    }
}

fn gen_formula(f: &FunctionClass, c1: CloneId, c2: CloneId) -> Result<Vec<String>> {
    let generated = gen_clonoid(f, c1, c2, GenOptions::new(f.max_arity()))?;
    let k = generated.class;
    let mut out = Vec::new();
    let tag = || format!("({c1},{c2}) F={}", class_str(f));
    if !generated.exact {
        out.push(format!("inexact left step: {}", tag()));
    }
    if !f.is_subset(&k)? {
        out.push(format!("generators missing: {}", tag()));
    }
    if !is_clonoid(&k, c1, c2)? {
        out.push(format!("not stable: {}", tag()));
    }
    if k != iterated_closure(f, c1, c2)? {
        out.push(format!("differs from the iterated closure: {}", tag()));
    }
    Ok(out)
}

/// Clone pairs used with every singleton: a fixed draw from the seed.
const SWEEP_PAIRS: usize = 6;

fn singleton_sweep(suite: MetaSuite, cap: u32, seed: u64, pool: &[CloneId]) -> Result<(u64, Vec<String>)> {
    use rand::SeedableRng;
    let fs = all_small_functions(cap)?;
    let classes: Vec<FunctionClass> = fs.iter().map(|f| singleton(cap, f)).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut chains = Vec::with_capacity(SWEEP_PAIRS);
    for _ in 0..SWEEP_PAIRS {
        let (big1, big2) = (pick(&mut rng, pool), pick(&mut rng, pool));
        chains.push((big1, big2, pick_below(&mut rng, pool, big1)?, pick_below(&mut rng, pool, big2)?));
    }
    let mut cases = 0;
    let mut violations = Vec::new();
    match suite {
        MetaSuite::Associativity => {
            for i in &classes {
                for j in &classes {
                    for k in &classes {
                        cases += 1;
                        violations.extend(associativity(i, j, k)?);
                    }
                }
            }
        }
        _ => {
            for f in &classes {
                for &(big1, big2, c1, c2) in &chains {
                    cases += 1;
                    violations.extend(match suite {
                        MetaSuite::Clonmon => clonmon(f, big1, big2, c1, c2)?,
                        MetaSuite::Knid => {
                            let k = gen_clonoid(f, big1, big2, GenOptions::new(cap))?.class;
                            let mut v = knid(f, big1, big2)?;
                            v.extend(knid(&k, big1, big2)?);
                            v
                        }
                        _ => gen_formula(f, big1, big2)?,
                    });
                }
            }
        }
    }
    Ok((cases, violations))
}
