//! Acceptance run: one PASS/FAIL line per criterion, each under its time
//! limit. Runs without the libtest harness so the lines always print.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clonoid_core::classcomp::{gen_clonoid, left_stable, predicate_class, right_stable, GenOptions};
use clonoid_core::gf2geom::{in_aff, in_icd, preimage, subspaces, support};
use clonoid_core::postlattice::{classify_cardinality, clone_closure, dual_clone, member, Cardinality};
use clonoid_core::verify::{
    separation_experiment, verify_coherence, verify_meta, verify_si2, verify_uvw1, MetaSuite, Si2Mode,
};
use clonoid_core::{AffineMap, BitTuple, BooleanFunction, CloneId, FunctionClass, Gf2Subset, Predicate, Rank};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const SEED: u64 = 2024;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: clonoid_core::Error) -> String {
    e.to_string()
}

fn uvw1() -> Outcome {
    let mut cases = 0;
    for n in [7, 9, 11] {
        let r = verify_uvw1(n).map_err(err)?;
        ensure(r.passed(), || format!("n={n}: {:?}", r.violations))?;
        cases += r.cases_checked;
    }
    Ok(format!("{cases} pairs"))
}

fn si2() -> Outcome {
    let mut cases = 0;
    for n in 2..=5 {
        let r = verify_si2(n, 7, Si2Mode::Exhaustive).map_err(err)?;
        ensure(r.violations.is_empty(), || format!("n={n}: {:?}", r.violations))?;
        cases += r.cases_checked;
    }
    Ok(format!("{cases} families"))
}

/// Every linear subspace of GF(2)^n as a point mask, by brute force.
fn literal_subspaces(n: u32) -> Vec<u64> {
    let points = 1u32 << n;
    (0u64..1 << points)
        .filter(|&s| {
            s & 1 == 1
                && (0..points).all(|x| {
                    s >> x & 1 == 0 || (0..points).all(|y| s >> y & 1 == 0 || s >> (x ^ y) & 1 == 1)
                })
        })
        .collect()
}

/// Codimension straight from the definition: the least codimension of a
/// subspace whose cosets tile `s`.
fn literal_codim(n: u32, s: u64, subs: &[u64]) -> u32 {
    let points = 1u32 << n;
    subs.iter()
        .filter(|&&w| {
            (0..points).all(|x| s >> x & 1 == 0 || (0..points).all(|v| w >> v & 1 == 0 || s >> (x ^ v) & 1 == 1))
        })
        .map(|w| n - w.count_ones().trailing_zeros())
        .min()
        .expect("the zero subspace always tiles")
}

/// Intersectional codimension straight from the definition, over every
/// superset of `s`.
fn literal_icodim(n: u32, s: u64, subs: &[u64]) -> u32 {
    let full = if n == 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
    (0..=n)
        .find(|&d| {
            let meet = (0u64..=full)
                .filter(|&t| t & s == s && literal_codim(n, t, subs) <= d)
                .fold(full, |acc, t| acc & t);
            meet == s
        })
        .expect("s has codimension at most n")
}

fn vee_codims() -> Outcome {
    for n in 1..=4 {
        let s = support(&BooleanFunction::vee_n(n).map_err(err)?);
        let (c, i) = (s.codim().map_err(err)?, s.icodim().map_err(err)?);
        ensure(c == n && i == n, || format!("n={n}: codim {c}, icodim {i}"))?;
    }
    let mut checked = 0;
    for n in 1..=3 {
        let subs = literal_subspaces(n);
        for mask in 0u64..1 << (1 << n) {
            let s = Gf2Subset::from_mask(n, mask).map_err(err)?;
            let (c, i) = (s.codim().map_err(err)?, s.icodim().map_err(err)?);
            let (lc, li) = (literal_codim(n, mask, &subs), literal_icodim(n, mask, &subs));
            ensure(c == lc && i == li, || format!("n={n} mask {mask:#x}: ({c},{i}) vs literal ({lc},{li})"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} subsets cross-checked"))
}

fn vee3_generates_all() -> Outcome {
    let f = FunctionClass::from_functions(3, [BooleanFunction::vee_n(3).map_err(err)?]).map_err(err)?;
    let g = gen_clonoid(&f, CloneId::L, CloneId::LambdaC, GenOptions::new(3)).map_err(err)?;
    let full = FunctionClass::full(3).map_err(err)?;
    ensure(g.exact, || "left step not exact".into())?;
    ensure(g.class.len() == 276 && g.class == full, || format!("{} functions", g.class.len()))?;
    Ok("276 functions".into())
}

fn coherence() -> Outcome {
    let r = verify_coherence(6, 3000, SEED).map_err(err)?;
    ensure(r.passed(), || format!("{:?}", r.violations))?;
    Ok(format!(
        "{} edges, {} incomparable ordered pairs",
        r.parameters["covering_edges"], r.parameters["incomparable_ordered_pairs"]
    ))
}

fn closures() -> Outcome {
    let named = |s: &str| BooleanFunction::named(s).expect("known symbol");
    let cases = [
        (CloneId::L, vec![named("xor"), named("1")]),
        (CloneId::Lambda, vec![named("and"), named("0"), named("1")]),
        (CloneId::V, vec![named("or"), named("0"), named("1")]),
    ];
    for (c, gens) in cases {
        let closed = clone_closure(&gens, 4).map_err(err)?;
        let expected = FunctionClass::filtered(4, |f| member(f, c).unwrap_or(false)).map_err(err)?;
        ensure(closed == expected, || format!("{c}: {} vs {}", closed.len(), expected.len()))?;
    }
    Ok("L, Lambda, V at cap 4".into())
}

fn cardinality() -> Outcome {
    let clones = CloneId::instantiated(6);
    for &a in &clones {
        for &b in &clones {
            let v = classify_cardinality(a, b).map_err(err)?;
            let d = classify_cardinality(dual_clone(a), dual_clone(b)).map_err(err)?;
            ensure(v.kind == d.kind, || format!("({a},{b}) is {} but its dual is {}", v.kind, d.kind))?;
        }
    }
    use Cardinality::*;
    use CloneId::*;
    let inf = Rank::Infinite;
    let two = Rank::Finite(2);
    let spots = [
        (Ic, SM, Finite),
        (Ic, McU(two), Finite),
        (Sc, Ic, Finite),
        (Mc, LambdaC, Finite),
        (I, McU(inf), Finite),
        (Lc, L, CountablyInfinite),
        (Mc, Omega1, CountablyInfinite),
        (L, Lambda, Uncountable),
        (LS, U(inf), Uncountable),
        (U(two), V, Uncountable),
        (U(two), Omega1, Uncountable),
    ];
    for (a, b, want) in spots {
        let got = classify_cardinality(a, b).map_err(err)?.kind;
        ensure(got == want, || format!("({a},{b}): {got}, expected {want}"))?;
    }
    Ok(format!("{} pairs", clones.len() * clones.len()))
}

fn separation() -> Outcome {
    let r = separation_experiment(&[7, 9], 1_000_000, SEED).map_err(err)?;
    ensure(r.passed(), || format!("{:?}", r.violations))?;
    let prints = r.parameters["fingerprints"].as_object().ok_or("no fingerprints")?;
    let subsets = prints.values().next().and_then(|v| v.as_object()).ok_or("bad fingerprint")?;
    ensure(subsets.len() == 4, || format!("{} subsets", subsets.len()))?;
    // A fingerprint is the membership column of one subset across all pairs.
    let mut columns: Vec<String> = Vec::new();
    for key in subsets.keys() {
        columns.push(prints.values().map(|row| row[key].to_string()).collect::<Vec<_>>().join(""));
    }
    let distinct = {
        let mut c = columns.clone();
        c.sort();
        c.dedup();
        c.len()
    };
    ensure(distinct == 4, || format!("only {distinct} distinct fingerprints"))?;
    Ok(format!("4 distinct fingerprints, {} cases", r.cases_checked))
}

fn meta() -> Outcome {
    let mut parts = Vec::new();
    for suite in MetaSuite::ALL {
        let r = verify_meta(suite, 1000, 2, SEED).map_err(err)?;
        ensure(r.passed(), || format!("{suite}: {:?}", r.violations))?;
        ensure(r.cases_checked >= 1000, || format!("{suite}: {} cases", r.cases_checked))?;
        parts.push(format!("{suite} {}", r.cases_checked));
    }
    Ok(parts.join(", "))
}

fn mask_of(s: &Gf2Subset) -> u64 {
    s.chi().small_table().expect("small dimension")
}

fn all_affine_maps(m: u32, n: u32) -> Vec<AffineMap> {
    let cols = 1u32 << n;
    let total = (cols as u64).pow(m + 1);
    (0..total)
        .map(|mut code| {
            let mut take = || {
                let v = (code % cols as u64) as u32;
                code /= cols as u64;
                BitTuple::new(n, v).expect("in range")
            };
            let columns: Vec<BitTuple> = (0..m).map(|_| take()).collect();
            let offset = take();
            AffineMap::from_columns(&columns, offset).expect("consistent dimensions")
        })
        .collect()
}

fn gf2_bridge() -> Outcome {
    // n = 3, exhaustive.
    let n = 3;
    let sets: Vec<Gf2Subset> = (0u64..256).map(|m| Gf2Subset::from_mask(n, m)).collect::<Result<_, _>>().map_err(err)?;
    let codim: Vec<u32> = sets.iter().map(|s| s.codim()).collect::<Result<_, _>>().map_err(err)?;
    let icodim: Vec<u32> = sets.iter().map(|s| s.icodim()).collect::<Result<_, _>>().map_err(err)?;
    for a in 0..256 {
        for b in 0..256 {
            let i = icodim[a & b];
            ensure(i <= icodim[a].max(icodim[b]), || format!("icodim of {a:#x} & {b:#x} is {i}"))?;
        }
    }
    let mut maps = 0;
    for f in all_affine_maps(3, 3) {
        maps += 1;
        for (m, s) in sets.iter().enumerate() {
            let p = mask_of(&preimage(&f, s).map_err(err)?) as usize;
            ensure(codim[p] <= codim[m] && icodim[p] <= icodim[m], || format!("preimage of {m:#x} grows"))?;
        }
    }
    // n = 4, sampled.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..1000 {
        let s = Gf2Subset::from_mask(4, rng.random::<u64>() & 0xFFFF).map_err(err)?;
        let t = Gf2Subset::from_mask(4, rng.random::<u64>() & 0xFFFF).map_err(err)?;
        let meet = s.intersection(&t).map_err(err)?;
        let bound = s.icodim().map_err(err)?.max(t.icodim().map_err(err)?);
        ensure(meet.icodim().map_err(err)? <= bound, || "intersection raises icodim at n=4".into())?;
        let f = AffineMap::random(rng.random_range(1..=4), 4, &mut rng).map_err(err)?;
        let p = preimage(&f, &s).map_err(err)?;
        ensure(
            p.codim().map_err(err)? <= s.codim().map_err(err)? && p.icodim().map_err(err)? <= s.icodim().map_err(err)?,
            || "preimage raises a codimension at n=4".into(),
        )?;
    }
    // Hyperplanes have codimension 1 but meet in the origin.
    for n in 1..=4 {
        let mut meet = Gf2Subset::full(n).map_err(err)?;
        for w in subspaces(n).map_err(err)?.iter().filter(|w| w.codim() == 1) {
            ensure(w.members().codim().map_err(err)? == 1, || "hyperplane codim".into())?;
            meet = meet.intersection(&w.members()).map_err(err)?;
        }
        let origin = Gf2Subset::from_points(n, &[BitTuple::zeros(n).map_err(err)?]).map_err(err)?;
        ensure(meet == origin && meet.codim().map_err(err)? == n, || format!("n={n}: hyperplanes"))?;
    }
    Ok(format!("{maps} affine maps at n=3, 1000 instances at n=4"))
}

/// Empty, or closed under `x + y + z`.
fn literal_affine(f: &BooleanFunction) -> bool {
    let pts: Vec<u32> = f.true_indices().collect();
    pts.iter().all(|&x| pts.iter().all(|&y| pts.iter().all(|&z| f.eval_index(x ^ y ^ z))))
}

fn icd_chain() -> Outcome {
    for n in 2..=4 {
        let v = BooleanFunction::vee_n(n).map_err(err)?;
        ensure(in_icd(&v, n).map_err(err)? && !in_icd(&v, n - 1).map_err(err)?, || format!("vee_{n}"))?;
    }
    let mut checked = 0;
    for n in 1..=4u32 {
        for t in 0u64..1 << (1 << n) {
            let f = BooleanFunction::from_small(n, t).map_err(err)?;
            let icd0 = in_icd(&f, 0).map_err(err)?;
            let icd1 = in_icd(&f, 1).map_err(err)?;
            ensure(icd0 == f.is_constant().is_some(), || format!("ICD_0 at {f}"))?;
            ensure(icd1 == literal_affine(&f) && icd1 == in_aff(&f).map_err(err)?, || format!("ICD_1 at {f}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} functions"))
}

fn stability() -> Outcome {
    let p = |pred: Predicate| predicate_class(pred, 3).map_err(err);
    let classes = [
        ("Eiio", p(Predicate::Eiio)?),
        ("Eioi", p(Predicate::Eioi)?),
        ("T0", p(Predicate::Omega(Some(false), None))?),
        ("Omega_x0", p(Predicate::Omega(None, Some(false)))?),
        ("Refl", p(Predicate::Refl)?),
        ("Smaj+Refl", p(Predicate::Smaj)?.union(&p(Predicate::Refl)?).map_err(err)?),
        ("Eiio+Smaj", p(Predicate::Eiio)?.union(&p(Predicate::Smaj)?).map_err(err)?),
    ];
    for (name, k) in &classes {
        ensure(right_stable(k, CloneId::Sc).map_err(err)?, || format!("{name} not right stable"))?;
        ensure(left_stable(k, CloneId::VC).map_err(err)?, || format!("{name} not left stable"))?;
    }
    Ok(format!("{} classes", classes.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 12] = [
        ("uvw1 for n in {7,9,11}", 1, uvw1),
        ("si2 exhaustive n<=5, m<=7", 120, si2),
        ("codim and icodim of vee_n", 60, vee_codims),
        ("gen of vee_3 is the full class", 30, vee3_generates_all),
        ("post lattice coherence", 300, coherence),
        ("generator closures", 60, closures),
        ("cardinality oracle", 10, cardinality),
        ("separation experiment", 600, separation),
        ("meta suites", 300, meta),
        ("gf2 bridge", 120, gf2_bridge),
        ("icd chain", 120, icd_chain),
        ("clonoid stability", 120, stability),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let verdict = match &outcome {
            Ok(_) if took <= Duration::from_secs(*limit) => "PASS",
            _ => "FAIL",
        };
        let detail = match outcome {
            Ok(d) if verdict == "PASS" => d,
            Ok(d) => format!("{d}; over the {limit} s limit"),
            Err(e) => e,
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("{verdict} criterion {:>2} {name} ({:.2} s, limit {limit} s): {detail}", i + 1, took.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
