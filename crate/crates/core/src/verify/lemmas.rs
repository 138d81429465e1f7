//! The combinatorial lemmas about `beta_n` and the separation experiment.

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use super::{run_sampled, Mode, ReportBuilder, VerificationReport};
use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::gf2geom::AffineMap;
use crate::postlattice::{member, CloneId, Rank};
use crate::tuple::BitTuple;

fn all_ones(n: u32) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// `beta_n` on a raw index: true at Hamming weight 1, 2 or n.
fn in_beta(x: u32, n: u32) -> bool {
    let w = x.count_ones();
    w == 1 || w == 2 || w == n
}

/// True points of `beta_n` as raw indices, ascending.
fn beta_points(n: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (1u32 << i) | (1u32 << j)))
        .chain(std::iter::once(all_ones(n)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn tuple_str(n: u32, x: u32) -> String {
    BitTuple::new(n, x).map(|t| t.to_string()).unwrap_or_else(|_| format!("{x:#x}"))
}

/// A subset of `[n]` held as a mask, element `i` at bit `i - 1`.
fn set_str(mask: u32) -> String {
    let elems: Vec<String> = (0..32).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", elems.join(","))
}

fn require_odd_above_six(name: &str, n: u32) -> Result<()> {
    if n % 2 == 0 || n <= 6 {
        return Err(Error::InvalidParameter(format!("{name} must be odd and greater than 6, got {n}")));
    }
    Ok(())
}

/// `u + v + 1` is a false point of `beta_n` for distinct true points `u, v`
/// other than the all-one tuple. Needs odd `n > 6`.
pub fn verify_uvw1(n: u32) -> Result<VerificationReport> {
    require_odd_above_six("n", n)?;
    let report = ReportBuilder::new("uvw1", Mode::Exhaustive, None).param("n", n);
    let (cases, violations) = uvw1_scan(n)?;
    Ok(report.finish(cases, violations))
}

fn uvw1_scan(n: u32) -> Result<(u64, Vec<String>)> {
    let beta = BooleanFunction::beta(n)?;
    let ones = all_ones(n);
    let points: Vec<u32> = beta.true_indices().filter(|&x| x != ones).collect();
    let mut cases = 0;
    let mut violations = Vec::new();
    for (i, &u) in points.iter().enumerate() {
        for &v in &points[i + 1..] {
            cases += 1;
            if beta.eval_index(u ^ v ^ ones) {
                violations.push(format!("u={} v={}", tuple_str(n, u), tuple_str(n, v)));
            }
        }
    }
    Ok((cases, violations))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum Si2Mode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

/// Largest `n` and family size for the exhaustive set-family check.
const SI2_EXHAUSTIVE_N: u32 = 5;
const SI2_EXHAUSTIVE_M: u32 = 7;

/// The 1- and 2-element subsets of `[n]`.
fn small_sets(n: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (1u32 << i) | (1u32 << j)))
        .collect();
    out.sort_unstable();
    out
}

/// The premise on `(S_r, S_s, T)`; returns `C = S_r + S_s + T` when it holds.
fn si2_premise(r: u32, s: u32, t: u32) -> Option<u32> {
    let c = r ^ s ^ t;
    (r.count_ones() == 2 && r != s && t != r && t != s && !matches!(c.count_ones(), 1 | 2)).then_some(c)
}

/// One of the three alternatives for a family of pairwise distinct sets.
fn si2_conclusion(family: &[u32], c: u32) -> bool {
    if family.len() <= 5 {
        return true;
    }
    if family.iter().fold(u32::MAX, |acc, &s| acc & s) != 0 {
        return true;
    }
    family.iter().enumerate().any(|(p, &sp)| {
        family[p + 1..]
            .iter()
            .any(|&sq| matches!((sp ^ sq ^ c).count_ones(), 0 | 3 | 4 | 5 | 6))
    })
}

fn si2_violation(family: &[u32], t: u32) -> String {
    let sets: Vec<String> = family[2..].iter().map(|&s| set_str(s)).collect();
    format!(
        "S_r={} S_s={} T={} others=[{}]",
        set_str(family[0]),
        set_str(family[1]),
        set_str(t),
        sets.join(",")
    )
}

/// The trichotomy for families of 1- and 2-element subsets of `[n]`.
///
/// Families are enumerated as sets with the two designated members `S_r`
/// and `S_s` held apart, since the conditions are symmetric in the rest.
pub fn verify_si2(n: u32, m_max: u32, mode: Si2Mode) -> Result<VerificationReport> {
    if !(2..=32).contains(&n) || m_max < 2 {
        return Err(Error::InvalidParameter(format!("need 2 <= n <= 32 and m_max >= 2, got n={n}, m_max={m_max}")));
    }
    match mode {
        Si2Mode::Exhaustive => {
            if n > SI2_EXHAUSTIVE_N || m_max > SI2_EXHAUSTIVE_M {
                return Err(Error::InvalidParameter(format!(
                    "exhaustive check needs n <= {SI2_EXHAUSTIVE_N} and m_max <= {SI2_EXHAUSTIVE_M}"
                )));
            }
            let report = ReportBuilder::new("si2", Mode::Exhaustive, None).param("n", n).param("m_max", m_max);
            let (cases, violations) = si2_exhaustive(n, m_max);
            Ok(report.finish(cases, violations))
        }
        Si2Mode::Sampled { samples, seed } => {
            let report = ReportBuilder::new("si2", Mode::Sampled, Some(seed))
                .param("n", n)
                .param("m_max", m_max)
                .param("samples", samples);
            let sets = small_sets(n);
            let (cases, violations) = run_sampled(samples, seed, |rng, v| {
                si2_draw(rng, &sets, m_max, v);
                1
            });
            Ok(report.finish(cases, violations))
        }
    }
}

fn si2_exhaustive(n: u32, m_max: u32) -> (u64, Vec<String>) {
    let sets = small_sets(n);
    let mut premises = Vec::new();
    for &r in &sets {
        for &s in &sets {
            for &t in &sets {
                if let Some(c) = si2_premise(r, s, t) {
                    premises.push((r, s, t, c));
                }
            }
        }
    }
    let results: Vec<(u64, Vec<String>)> = premises
        .par_iter()
        .map(|&(r, s, t, c)| {
            let others: Vec<u32> = sets.iter().copied().filter(|&x| x != r && x != s).collect();
            let mut family = vec![r, s];
            let mut cases = 0;
            let mut violations = Vec::new();
            extend_family(&others, 0, &mut family, m_max as usize, t, c, &mut cases, &mut violations);
            (cases, violations)
        })
        .collect();
    results.into_iter().fold((0, Vec::new()), |(c, mut v), (dc, dv)| {
        v.extend(dv);
        (c + dc, v)
    })
}

#[allow(clippy::too_many_arguments)]
fn extend_family(
    others: &[u32],
    start: usize,
    family: &mut Vec<u32>,
    m_max: usize,
    t: u32,
    c: u32,
    cases: &mut u64,
    violations: &mut Vec<String>,
) {
    *cases += 1;
    if !si2_conclusion(family, c) {
        violations.push(si2_violation(family, t));
    }
    if family.len() == m_max {
        return;
    }
    for i in start..others.len() {
        family.push(others[i]);
        extend_family(others, i + 1, family, m_max, t, c, cases, violations);
        family.pop();
    }
}

/// One random family. Half the draws take the remaining members from the
/// sets `B` with `|S_r + B + T|` and `|S_s + B + T|` both in `{1, 2}`, where
/// neither easy alternative applies.
fn si2_draw(rng: &mut ChaCha8Rng, sets: &[u32], m_max: u32, violations: &mut Vec<String>) {
    let pairs: Vec<u32> = sets.iter().copied().filter(|s| s.count_ones() == 2).collect();
    let (r, s, t, c) = loop {
        let r = pairs[rng.random_range(0..pairs.len())];
        let s = sets[rng.random_range(0..sets.len())];
        let t = sets[rng.random_range(0..sets.len())];
        if let Some(c) = si2_premise(r, s, t) {
            break (r, s, t, c);
        }
    };
    let m = rng.random_range(m_max.min(6)..=m_max) as usize;
    let others: Vec<u32> = sets.iter().copied().filter(|&x| x != r && x != s).collect();
    let hard: Vec<u32> = others
        .iter()
        .copied()
        .filter(|&b| matches!((r ^ b ^ t).count_ones(), 1 | 2) && matches!((s ^ b ^ t).count_ones(), 1 | 2))
        .collect();
    let pool = if rng.random_bool(0.5) && hard.len() >= m - 2 { &hard } else { &others };
    let need = (m - 2).min(pool.len());
    let mut family = vec![r, s];
    family.extend(sample(rng, pool.len(), need).into_iter().map(|i| pool[i]));
    if !si2_conclusion(&family, c) {
        violations.push(si2_violation(&family, t));
    }
}

/// The true points of `beta_m` as raw indices: unit vectors, pairs, all-ones.
fn beta_points_by_kind(m: u32) -> (Vec<u32>, Vec<(u32, u32, u32)>, u32) {
    let units: Vec<u32> = (0..m).map(|i| 1u32 << i).collect();
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            pairs.push((i, j, (1u32 << i) | (1u32 << j)));
        }
    }
    (units, pairs, all_ones(m))
}

/// Whether `beta_m <= beta_n . g` and `g(0)` is a false point of `beta_n`.
fn meqn_hypotheses(g: &AffineMap, m: u32, n: u32) -> bool {
    !in_beta(g.apply_index(0), n) && beta_points(m).into_iter().all(|a| in_beta(g.apply_index(a), n))
}

/// A random affine map whose unit-vector images are true points of
/// `beta_n`; for `m == n`, half of these are coordinate permutations.
fn structured_map(rng: &mut ChaCha8Rng, m: u32, n: u32) -> Result<AffineMap> {
    if m == n && rng.random_bool(0.5) {
        let mut perm: Vec<u32> = (0..n).collect();
        for i in (1..perm.len()).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let cols: Vec<BitTuple> = perm.iter().map(|&p| BitTuple::from_raw(n, 1 << p)).collect();
        return AffineMap::from_columns(&cols, BitTuple::zeros(n)?);
    }
    let trues = beta_points(n);
    let c = loop {
        let c = rng.random_range(0..=all_ones(n));
        if !in_beta(c, n) {
            break c;
        }
    };
    let cols: Vec<BitTuple> =
        (0..m).map(|_| BitTuple::from_raw(n, trues[rng.random_range(0..trues.len())] ^ c)).collect();
    AffineMap::from_columns(&cols, BitTuple::from_raw(n, c))
}

fn draw_map(rng: &mut ChaCha8Rng, m: u32, n: u32) -> Result<AffineMap> {
    if rng.random_bool(0.5) {
        AffineMap::random(m, n, rng)
    } else {
        structured_map(rng, m, n)
    }
}

fn map_str(g: &AffineMap) -> String {
    let n = g.target_dim();
    let m = g.source_dim();
    let cols: Vec<String> = (0..m)
        .map(|j| tuple_str(n, g.apply_index(1 << (m - 1 - j)) ^ g.apply_index(0)))
        .collect();
    format!("g(0)={} columns=[{}]", tuple_str(n, g.apply_index(0)), cols.join(","))
}

/// The two claims about an affine `g`: it turns odd sums into sums and even
/// sums into sums plus `g(0)`; and under the lemma's hypotheses, its values
/// on unit vectors and pairs behave as the proof says.
pub fn verify_meqn_claims(m: u32, n: u32, samples: u64, seed: u64) -> Result<VerificationReport> {
    BitTuple::zeros(m)?;
    BitTuple::zeros(n)?;
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let mut report = ReportBuilder::new("meqn_claims", Mode::Sampled, Some(seed))
        .param("m", m)
        .param("n", n)
        .param("samples", samples);
    let (units, pairs, _) = beta_points_by_kind(m);
    let hypothesis_hits = std::sync::atomic::AtomicU64::new(0);
    let (cases, violations) = run_sampled(samples, seed, |rng, v| {
        let g = match draw_map(rng, m, n) {
            Ok(g) => g,
            Err(e) => {
                v.push(e.to_string());
                return 0;
            }
        };
        let c = g.apply_index(0);
        let mut cases = 2;
        for even in [false, true] {
            let k = if even { 2 * rng.random_range(1..=4) } else { 2 * rng.random_range(0..4) + 1 };
            let mut sum = 0;
            let mut image_sum = 0;
            for _ in 0..k {
                let u = rng.random_range(0..=all_ones(m));
                sum ^= u;
                image_sum ^= g.apply_index(u);
            }
            let expected = if even { image_sum ^ c } else { image_sum };
            if g.apply_index(sum) != expected {
                v.push(format!("{} sum of {k} vectors: {}", if even { "even" } else { "odd" }, map_str(&g)));
            }
        }
        if meqn_hypotheses(&g, m, n) {
            hypothesis_hits.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
            cases += 1;
            for &(i, j, eij) in &pairs {
                let (a, b, ab) = (g.apply_index(units[i as usize]), g.apply_index(units[j as usize]), g.apply_index(eij));
                if a == b || a == ab || b == ab {
                    v.push(format!("images of e_{}, e_{}, e_{}{} coincide: {}", i + 1, j + 1, i + 1, j + 1, map_str(&g)));
                }
                for k in (0..m).filter(|&k| k != i && k != j) {
                    let eik = units[i as usize] | units[k as usize];
                    if ab ^ b ^ g.apply_index(units[k as usize]) != g.apply_index(eik) {
                        v.push(format!("g(e_ij)+g(e_j)+g(e_k) != g(e_ik) at {},{},{}: {}", i + 1, j + 1, k + 1, map_str(&g)));
                    }
                }
            }
            if m >= 4 && n > 6 {
                let ones = all_ones(n);
                for a in beta_points(m).into_iter().filter(|&a| a != all_ones(m)) {
                    if g.apply_index(a) == ones {
                        v.push(format!("true point {} maps to all-ones: {}", tuple_str(m, a), map_str(&g)));
                    }
                }
            }
        }
        cases
    });
    report.set("hypothesis_cases", hypothesis_hits.into_inner());
    Ok(report.finish(cases, violations))
}

/// Random search for an affine `g` from `GF(2)^m` to `GF(2)^n` with
/// `beta_m <= beta_n . g` and `g(0)` a false point of `beta_n`, for distinct
/// odd `m, n > 6`. Any hit is reported as a violation.
pub fn probe_meqn(m: u32, n: u32, budget: u64, seed: u64) -> Result<VerificationReport> {
    require_odd_above_six("m", m)?;
    require_odd_above_six("n", n)?;
    if m == n {
        return Err(Error::InvalidParameter(format!("the probe needs m != n, got m = n = {m}")));
    }
    BitTuple::zeros(m)?;
    BitTuple::zeros(n)?;
    let report = ReportBuilder::new("probe_meqn", Mode::Sampled, Some(seed))
        .param("m", m)
        .param("n", n)
        .param("budget", budget);
    let (cases, violations) = run_sampled(budget, seed, |rng, v| {
        match draw_map(rng, m, n) {
            Ok(g) if meqn_hypotheses(&g, m, n) => v.push(format!("witness {}", map_str(&g))),
            Ok(_) => {}
            Err(e) => v.push(e.to_string()),
        }
        1
    });
    Ok(report.finish(cases, violations))
}

/// Largest `n` for the exact witness search; the true points of `beta_n`
/// must fit a 128-bit set.
const WITNESS_MAX_N: u32 = 15;

/// An affine `g` from `GF(2)^m` to `GF(2)^n` with `beta_m <= beta_n . g` and
/// `g(0)` a false point of `beta_n`, if one exists.
///
/// Such a `g` is fixed by `c = g(0)` and the images `v_i` of the unit
/// vectors. The true points of `beta_m` are the unit vectors, their pairwise
/// sums and the all-one tuple, so the condition says: every `v_i` and every
/// `v_i + v_j + c` is a true point of `beta_n`, and so is the image of the
/// all-one tuple. For each `c` this is a search for `m`-cliques.
pub fn minorant_witness(m: u32, n: u32) -> Result<Option<AffineMap>> {
    BitTuple::zeros(m)?;
    BitTuple::zeros(n)?;
    if n > WITNESS_MAX_N {
        return Err(Error::CapTooLarge { cap: n, limit: WITNESS_MAX_N, what: "minorant witness search".into() });
    }
    let trues = beta_points(n);
    for c in (0..=all_ones(n)).filter(|&c| !in_beta(c, n)) {
        let adjacent: Vec<u128> = trues
            .iter()
            .map(|&a| {
                trues
                    .iter()
                    .enumerate()
                    .filter(|&(_, &b)| b != a && in_beta(a ^ b ^ c, n))
                    .fold(0u128, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        let all = if trues.len() == 128 { u128::MAX } else { (1u128 << trues.len()) - 1 };
        let mut chosen = Vec::with_capacity(m as usize);
        let search = CliqueSearch { trues: &trues, adjacent: &adjacent, m: m as usize, n, c };
        if search.extend(&mut chosen, all, 0) {
            let cols: Vec<BitTuple> = chosen.iter().map(|&i| BitTuple::from_raw(n, trues[i] ^ c)).collect();
            return AffineMap::from_columns(&cols, BitTuple::from_raw(n, c)).map(Some);
        }
    }
    Ok(None)
}

struct CliqueSearch<'a> {
    trues: &'a [u32],
    adjacent: &'a [u128],
    m: usize,
    n: u32,
    c: u32,
}

impl CliqueSearch<'_> {
    fn extend(&self, chosen: &mut Vec<usize>, candidates: u128, sum: u32) -> bool {
        if chosen.len() == self.m {
            let image_of_ones = if self.m % 2 == 1 { sum } else { sum ^ self.c };
            return in_beta(image_of_ones, self.n);
        }
        let mut rest = candidates;
        while rest != 0 {
            if chosen.len() + (rest.count_ones() as usize) < self.m {
                return false;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            chosen.push(b);
            if self.extend(chosen, rest & self.adjacent[b], sum ^ self.trues[b]) {
                return true;
            }
            chosen.pop();
        }
        false
    }
}

/// The pairs whose clonoid lattices the `beta_n` family separates.
pub const SEPARATION_PAIRS: [(CloneId, CloneId); 3] = [
    (CloneId::L, CloneId::Lambda),
    (CloneId::L0, CloneId::U(Rank::Infinite)),
    (CloneId::LS, CloneId::U(Rank::Infinite)),
];

const SEPARATION_NS: [u32; 3] = [7, 9, 11];

/// Membership fingerprints of `beta_m`, `m` in `ns`, in the clonoids
/// generated by `{beta_n : n in S}` for every `S` subset of `ns`.
///
/// The positive direction is certified exactly: the identity tuple of
/// projections lies in the source clone and the unary identity in the
/// target clone. The negative direction rests on the exhaustive witness
/// search of [`minorant_witness`], to which membership reduces, plus the
/// optional random probe.
pub fn separation_experiment(ns: &[u32], probe_budget: u64, seed: u64) -> Result<VerificationReport> {
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    if ns.is_empty() || ns.iter().any(|n| !SEPARATION_NS.contains(n)) {
        return Err(Error::InvalidParameter(format!("the index set must be a nonempty subset of {SEPARATION_NS:?}")));
    }
    let mode = if probe_budget > 0 { Mode::Sampled } else { Mode::Exhaustive };
    let mut report = ReportBuilder::new("separation", mode, (probe_budget > 0).then_some(seed))
        .param("n_set", ns.clone())
        .param("probe_budget", probe_budget);
    let mut cases = 0u64;
    let mut violations = Vec::new();

    // no_witness[i][j]: beta_{ns[i]} has no minorant witness under beta_{ns[j]}.
    let mut no_witness = vec![vec![false; ns.len()]; ns.len()];
    for (i, &m) in ns.iter().enumerate() {
        for (j, &n) in ns.iter().enumerate() {
            if i != j {
                cases += 1;
                match minorant_witness(m, n)? {
                    None => no_witness[i][j] = true,
                    Some(g) => violations.push(format!("beta_{m} lies below beta_{n} . g for {}", map_str(&g))),
                }
            }
        }
    }

    let mut fingerprints = Map::new();
    for (c1, c2) in SEPARATION_PAIRS {
        let identity = BooleanFunction::projection(1, 1)?;
        let mut positive = Vec::with_capacity(ns.len());
        for &m in &ns {
            let projections_in_source = (1..=m)
                .map(|i| BooleanFunction::projection(m, i).and_then(|p| member(&p, c1)))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b);
            positive.push(projections_in_source && member(&identity, c2)?);
        }
        let mut rows = Map::new();
        let mut seen = std::collections::BTreeSet::new();
        for subset in 0u32..1 << ns.len() {
            let chosen: Vec<u32> = (0..ns.len()).filter(|&i| subset >> i & 1 == 1).map(|i| ns[i]).collect();
            let bits: String = (0..ns.len())
                .map(|i| {
                    cases += 1;
                    if subset >> i & 1 == 1 {
                        if positive[i] { '1' } else { '?' }
                    } else if (0..ns.len()).filter(|&j| subset >> j & 1 == 1).all(|j| no_witness[i][j]) {
                        '0'
                    } else {
                        '?'
                    }
                })
                .collect();
            let name = format!("{{{}}}", chosen.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
            if bits.contains('?') {
                violations.push(format!("({c1},{c2}) S={name}: undetermined fingerprint {bits}"));
            }
            if !seen.insert(bits.clone()) {
                violations.push(format!("({c1},{c2}) S={name}: fingerprint {bits} repeats"));
            }
            rows.insert(name, Value::String(bits));
        }
        fingerprints.insert(format!("({c1},{c2})"), Value::Object(rows));
    }
    report.set("fingerprints", Value::Object(fingerprints));

    if probe_budget > 0 {
        let mut probes = Vec::new();
        let mut k = 0u64;
        for &m in &ns {
            for &n in &ns {
                if m != n {
                    let probe = probe_meqn(m, n, probe_budget, seed.wrapping_add(k))?;
                    k += 1;
                    cases += probe.cases_checked;
                    violations.extend(probe.violations.iter().map(|w| format!("probe ({m},{n}): {w}")));
                    probes.push(json!({"m": m, "n": n, "seed": probe.seed, "verdict": probe.verdict}));
                }
            }
        }
        report.set("probes", Value::Array(probes));
    }
    Ok(report.finish(cases, violations))
}
