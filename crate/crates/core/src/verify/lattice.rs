//! Coherence of the encoded subclone order with the membership predicates.
//!
//! Arities up to 4 are checked over every function. Above that the rank
//! families need witnesses up to arity `k + 1`, and those arities are covered
//! by the closed-form enumerations plus a seeded pool of structured
//! candidates (thresholds, monotone DNFs, separated and self-dual functions,
//! closed under the three negations).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{Mode, ReportBuilder, VerificationReport};
use crate::error::{Error, Result};
use crate::function::{small_mask, BooleanFunction};
use crate::postlattice::{covering_edges, enumerate_shared, is_enumerable, leq, member, CloneId, Rank};

/// Arity up to which every function is examined.
pub const COHERENCE_EXHAUSTIVE_ARITY: u32 = 4;

/// Largest rank accepted by [`verify_coherence`].
pub const COHERENCE_RANK_LIMIT: u32 = 6;

fn finite_rank(c: CloneId) -> Option<u32> {
    match c.rank() {
        Some(Rank::Finite(k)) => Some(k),
        _ => None,
    }
}

/// Highest arity at which a statement about `a` and `b` is checked.
fn arity_bound(a: CloneId, b: CloneId) -> u32 {
    let k = finite_rank(a).into_iter().chain(finite_rank(b)).max().unwrap_or(0);
    COHERENCE_EXHAUSTIVE_ARITY.max(k + 1)
}

fn membership_mask(f: &BooleanFunction, clones: &[CloneId]) -> u128 {
    clones.iter().enumerate().fold(0u128, |acc, (i, &c)| {
        if member(f, c).expect("instantiated clones are valid") {
            acc | 1 << i
        } else {
            acc
        }
    })
}

fn random_table(n: u32, rng: &mut ChaCha8Rng) -> BooleanFunction {
    let mut words: Vec<u64> = (0..(1usize << n).div_ceil(64)).map(|_| rng.random()).collect();
    if n < 6 {
        words[0] &= small_mask(n);
    }
    BooleanFunction::from_words(n, &words).expect("word count matches the arity")
}

fn random_monotone(n: u32, rng: &mut ChaCha8Rng) -> BooleanFunction {
    let terms: Vec<u32> = (0..rng.random_range(1..=4)).map(|_| rng.random_range(1..1u32 << n)).collect();
    BooleanFunction::from_index_fn(n, |x| terms.iter().any(|&t| x & t == t)).expect("valid arity")
}

/// Candidates of arity `n` biased towards the small clones and the rank
/// families, where random tables almost never land.
fn candidate_pool(n: u32, size: u64, rng: &mut ChaCha8Rng) -> Vec<BooleanFunction> {
    let mut pool = Vec::new();
    for v in [false, true] {
        pool.push(BooleanFunction::constant(n, v).expect("valid arity"));
    }
    for i in 1..=n {
        pool.push(BooleanFunction::projection(n, i).expect("valid arity"));
    }
    for t in 0..=n + 1 {
        let th = BooleanFunction::threshold(n, t).expect("valid arity");
        let x1 = BooleanFunction::projection(n, 1).expect("valid arity");
        pool.push(th.meet(&x1).expect("same arity"));
        pool.push(th.join(&x1).expect("same arity"));
        pool.push(th);
    }
    for _ in 0..size {
        let f = match rng.random_range(0..5) {
            0 => random_table(n, rng),
            1 => random_monotone(n, rng),
            2 => {
                // Separated below the last variable, so in U_infinity.
                let g = random_monotone(n, rng);
                let top = 1u32 << (n - 1);
                BooleanFunction::from_index_fn(n, |x| x & top != 0 && g.eval_index(x)).expect("valid arity")
            }
            3 => {
                let g = random_table(n, rng);
                let top = 1u32 << (n - 1);
                let mask = (1u32 << n) - 1;
                BooleanFunction::from_index_fn(n, |x| {
                    if x & top == 0 {
                        g.eval_index(x)
                    } else {
                        !g.eval_index(!x & mask)
                    }
                })
                .expect("valid arity")
            }
            _ => {
                // A threshold on a random subset of the variables.
                let s: u32 = rng.random_range(1..1u32 << n);
                let t = rng.random_range(1..=s.count_ones());
                BooleanFunction::from_index_fn(n, |x| (x & s).count_ones() >= t).expect("valid arity")
            }
        };
        pool.push(f);
    }
    let mut closed: Vec<BooleanFunction> = pool
        .iter()
        .flat_map(|f| [f.clone(), f.dual(), f.inner_negation(), f.outer_negation()])
        .collect();
    closed.sort();
    closed.dedup();
    closed
}

/// Per arity: membership masks of the examined functions.
struct Sweep {
    n: u32,
    masks: Vec<(BooleanFunction, u128)>,
}

/// Check every covering edge of the order with ranks up to `k_max` against
/// the membership predicates, and find a separating function on both sides
/// of every incomparable pair. Statements involving rank `k` are checked up
/// to arity `max(4, k + 1)`. `pool` sets the number of random candidates per
/// arity above 4.
pub fn verify_coherence(k_max: u32, pool: u64, seed: u64) -> Result<VerificationReport> {
    if !(2..=COHERENCE_RANK_LIMIT).contains(&k_max) {
        return Err(Error::InvalidParameter(format!(
            "rank bound must lie in 2..={COHERENCE_RANK_LIMIT}, got {k_max}"
        )));
    }
    let mut report = ReportBuilder::new("coherence", Mode::Sampled, Some(seed))
        .param("k_max", k_max)
        .param("exhaustive_arity", COHERENCE_EXHAUSTIVE_ARITY)
        .param("pool", pool);
    let clones = CloneId::instantiated(k_max);
    let index = |c: CloneId| clones.iter().position(|&d| d == c).expect("edge endpoints are instantiated");
    let edges: Vec<(usize, usize)> = covering_edges(k_max).into_iter().map(|(a, b)| (index(a), index(b))).collect();
    let top_arity = k_max + 1;
    let mut violations = Vec::new();
    let mut cases = 0u64;

    let mut sweeps = Vec::new();
    for n in 1..=top_arity.max(COHERENCE_EXHAUSTIVE_ARITY) {
        let functions: Vec<BooleanFunction> = if n <= COHERENCE_EXHAUSTIVE_ARITY {
            (0..1u64 << (1u32 << n))
                .map(|t| BooleanFunction::from_small(n, t))
                .collect::<Result<_>>()?
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(u64::from(n));
            let mut fs = candidate_pool(n, pool, &mut rng);
            for &c in &clones {
                if is_enumerable(c, n) {
                    fs.extend(enumerate_shared(c, n)?.iter().cloned());
                }
            }
            fs.sort();
            fs.dedup();
            fs
        };
        let masks: Vec<(BooleanFunction, u128)> = functions
            .into_par_iter()
            .map(|f| {
                let m = membership_mask(&f, &clones);
                (f, m)
            })
            .collect();
        sweeps.push(Sweep { n, masks });
    }
    report.set(
        "functions_examined",
        sweeps.iter().map(|s| s.masks.len() as u64).sum::<u64>(),
    );

    // The enumerators against the predicates, wherever both exist.
    for sweep in &sweeps {
        for (i, &c) in clones.iter().enumerate() {
            if !is_enumerable(c, sweep.n) {
                continue;
            }
            let listed = enumerate_shared(c, sweep.n)?;
            cases += 1;
            if listed.iter().any(|f| !member(f, c).unwrap_or(false)) {
                violations.push(format!("enumerate({c},{}) lists a non-member", sweep.n));
            }
            if sweep.n <= COHERENCE_EXHAUSTIVE_ARITY {
                let counted = sweep.masks.iter().filter(|(_, m)| m >> i & 1 == 1).count();
                if counted != listed.len() {
                    violations.push(format!(
                        "enumerate({c},{}) has {} functions, the predicate {counted}",
                        sweep.n,
                        listed.len()
                    ));
                }
            }
        }
    }

    for &(lo, hi) in &edges {
        let bound = arity_bound(clones[lo], clones[hi]);
        for sweep in sweeps.iter().filter(|s| s.n <= bound) {
            for (f, m) in &sweep.masks {
                cases += 1;
                if m >> lo & 1 == 1 && m >> hi & 1 == 0 {
                    violations.push(format!("{f} is in {} but not in {}", clones[lo], clones[hi]));
                }
            }
        }
    }

    let mut incomparable = 0u64;
    for (a, &ca) in clones.iter().enumerate() {
        for (b, &cb) in clones.iter().enumerate() {
            if a == b || leq(ca, cb)? || leq(cb, ca)? {
                continue;
            }
            incomparable += 1;
            cases += 1;
            let bound = arity_bound(ca, cb);
            let found = sweeps
                .iter()
                .filter(|s| s.n <= bound)
                .any(|s| s.masks.iter().any(|(_, m)| m >> a & 1 == 1 && m >> b & 1 == 0));
            if !found {
                violations.push(format!("no function of arity <= {bound} in {ca} but not in {cb}"));
            }
        }
    }
    report.set("covering_edges", edges.len() as u64);
    report.set("incomparable_ordered_pairs", incomparable);
    Ok(report.finish(cases, violations))
}
