use std::collections::BTreeSet;

use clonoid_core::verify::{
    probe_meqn, separation_experiment, verify_coherence, verify_meqn_claims, verify_meta, verify_si2, verify_uvw1,
    MetaSuite, Si2Mode,
};
use clonoid_core::{Mode, Verdict};

#[test]
fn uvw1_holds_for_valid_sizes() {
    for n in [7, 9, 11, 13] {
        let r = verify_uvw1(n).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "n={n}");
        assert_eq!(r.mode, Mode::Exhaustive);
    }
}

#[test]
fn exhaustive_suites_are_deterministic() {
    let a = verify_si2(4, 7, Si2Mode::Exhaustive).unwrap();
    let b = verify_si2(4, 7, Si2Mode::Exhaustive).unwrap();
    assert!(a.same_outcome(&b));
    assert!(verify_uvw1(9).unwrap().same_outcome(&verify_uvw1(9).unwrap()));
}

#[test]
fn sampled_suites_reproduce_from_their_seed() {
    let si2 = |seed| verify_si2(8, 8, Si2Mode::Sampled { samples: 5000, seed }).unwrap();
    assert!(si2(3).same_outcome(&si2(3)));
    let meta = |seed| verify_meta(MetaSuite::GenFormula, 50, 2, seed).unwrap();
    assert!(meta(5).same_outcome(&meta(5)));
    let claims = |seed| verify_meqn_claims(7, 9, 2000, seed).unwrap();
    assert!(claims(1).same_outcome(&claims(1)));
    let probe = |seed| probe_meqn(9, 7, 5000, seed).unwrap();
    assert!(probe(2).same_outcome(&probe(2)));
    let coh = |seed| verify_coherence(3, 40, seed).unwrap();
    assert!(coh(4).same_outcome(&coh(4)));
    assert_eq!(si2(3).seed, Some(3));
}

fn distinct_fingerprints(ns: &[u32]) -> usize {
    let r = separation_experiment(ns, 0, 1).unwrap();
    assert!(r.passed(), "{:?}", r.violations);
    let prints = r.parameters["fingerprints"].as_object().unwrap();
    let subsets: Vec<&String> = prints.values().next().unwrap().as_object().unwrap().keys().collect();
    let columns: BTreeSet<String> = subsets
        .iter()
        .map(|key| prints.values().map(|row| row[key.as_str()].to_string()).collect())
        .collect();
    assert_eq!(subsets.len(), 1 << ns.len());
    columns.len()
}

#[test]
fn separation_fingerprints_are_distinct() {
    assert_eq!(distinct_fingerprints(&[7, 9]), 4);
    assert_eq!(distinct_fingerprints(&[7, 9, 11]), 8);
}

#[test]
fn meta_suites_pass_at_cap_two() {
    for suite in MetaSuite::ALL {
        let r = verify_meta(suite, 200, 2, 9).unwrap();
        assert!(r.passed(), "{suite}: {:?}", r.violations);
    }
}
