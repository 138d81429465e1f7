//! Composition of function classes, generated clonoids, stability checks,
//! class transforms, named predicate classes and meet closures.

mod class;
mod predicate;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::postlattice::extension::{Domain, MAX_DOMAIN_ARITY};
use crate::postlattice::{enumerate_shared, Base, CloneId};

pub use class::FunctionClass;
pub use predicate::{predicate_class, Predicate};

/// Default bound on the number of single compositions one call may perform.
pub const DEFAULT_WORK_LIMIT: u128 = 1 << 31;

fn pow(base: u128, exp: u32) -> u128 {
    base.checked_pow(exp).unwrap_or(u128::MAX)
}

/// Visit every tuple of length `k` over `items`.
fn for_each_tuple<T>(items: &[T], k: usize, mut visit: impl FnMut(&[&T]) -> bool) -> bool {
    if items.is_empty() {
        return true;
    }
    let mut idx = vec![0usize; k];
    let mut tuple: Vec<&T> = vec![&items[0]; k];
    'odometer: loop {
        if !visit(&tuple) {
            return false;
        }
        let mut p = k;
        while p > 0 {
            p -= 1;
            idx[p] += 1;
            if idx[p] < items.len() {
                tuple[p] = &items[idx[p]];
                continue 'odometer;
            }
            idx[p] = 0;
            tuple[p] = &items[0];
        }
        return true;
    }
}

fn composition_work(f: &FunctionClass, parts: &[(u32, Vec<BooleanFunction>)]) -> u128 {
    let mut total: u128 = 0;
    for n in 1..=f.max_arity() {
        let count = f.part(n).len() as u128;
        for (_, gs) in parts {
            total = total.saturating_add(count.saturating_mul(pow(gs.len() as u128, n)));
        }
    }
    total
}

/// `{ f(g_1, ..., g_n) : f in F^(n), g_i in G^(m) }` for every `m` up to
/// G's cap. The arities of F and G may differ; the result has G's cap.
pub fn compose_classes(
    f: &FunctionClass,
    g: &FunctionClass,
    work_limit: u128,
) -> Result<FunctionClass> {
    let parts: Vec<(u32, Vec<BooleanFunction>)> = (1..=g.max_arity())
        .map(|m| (m, g.part(m).iter().cloned().collect()))
        .collect();
    compose_with_parts(f, &parts, g.max_arity(), work_limit)
}

fn compose_with_parts(
    f: &FunctionClass,
    parts: &[(u32, Vec<BooleanFunction>)],
    cap: u32,
    work_limit: u128,
) -> Result<FunctionClass> {
    let estimate = composition_work(f, parts);
    if estimate > work_limit {
        return Err(Error::WorkLimit { estimate, limit: work_limit });
    }
    let mut out = FunctionClass::new(cap)?;
    for (m, gs) in parts {
        let outer: Vec<&BooleanFunction> = f.iter().collect();
        let found: BTreeSet<BooleanFunction> = outer
            .par_iter()
            .map(|outer_f| {
                let mut local = BTreeSet::new();
                let k = outer_f.arity() as usize;
                let mut args = Vec::with_capacity(k);
                for_each_tuple(gs, k, |tuple| {
                    args.clear();
                    args.extend(tuple.iter().map(|g| (*g).clone()));
                    local.insert(outer_f.compose_unchecked(&args));
                    true
                });
                local
            })
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            });
        *out.part_mut(*m) = found;
    }
    Ok(out)
}

/// Class composition `FG` for classes with the same cap.
pub fn class_compose(f: &FunctionClass, g: &FunctionClass) -> Result<FunctionClass> {
    if f.max_arity() != g.max_arity() {
        return Err(Error::CapMismatch { left: f.max_arity(), right: g.max_arity() });
    }
    compose_classes(f, g, DEFAULT_WORK_LIMIT)
}

/// How the left composition with the target clone is carried out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum LeftStep {
    /// Decide every candidate through the extension criteria of the target
    /// clone. Exact at every arity up to 4, and at any arity for targets
    /// built from meets, joins, negations and constants.
    Exact,
    /// Compose with the target's members of arity at most `max_arity` only.
    /// Exact for the targets above, an under-approximation otherwise.
    Enumerate { max_arity: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenOptions {
    pub arity_cap: u32,
    pub left: LeftStep,
    pub work_limit: u128,
}

impl GenOptions {
    pub fn new(arity_cap: u32) -> Self {
        Self { arity_cap, left: LeftStep::Exact, work_limit: DEFAULT_WORK_LIMIT }
    }
}

/// A generated clonoid together with how it was computed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generated {
    pub class: FunctionClass,
    /// False when the left step could miss members.
    pub exact: bool,
    pub options: GenOptions,
}

/// Whether the m-ary part of `C2 R` has a direct description through
/// meets, joins, negations and constants.
fn has_direct_left_step(c2: CloneId) -> bool {
    matches!(c2.decompose().1, Base::Lambda | Base::Omega1 | Base::Istar | Base::I)
}

/// `C2 R` for the directly describable targets.
fn direct_left_closure(c2: CloneId, r: &BTreeSet<BooleanFunction>, m: u32) -> Result<BTreeSet<BooleanFunction>> {
    let (dualize, base, rule) = c2.decompose();
    let mut out: BTreeSet<BooleanFunction> = BTreeSet::new();
    if r.is_empty() {
        return Ok(out);
    }
    let zero = BooleanFunction::constant(m, false)?;
    let one = BooleanFunction::constant(m, true)?;
    match base {
        Base::Lambda => {
            // Closure under pointwise meet, or join for the dual family.
            let mut items: Vec<BooleanFunction> = r.iter().cloned().collect();
            let mut seen: BTreeSet<BooleanFunction> = items.iter().cloned().collect();
            let mut fresh = 0;
            while fresh < items.len() {
                let len = items.len();
                let mut found = Vec::new();
                for i in fresh..len {
                    for j in 0..len {
                        let h = if dualize {
                            items[i].join(&items[j])?
                        } else {
                            items[i].meet(&items[j])?
                        };
                        if !seen.contains(&h) {
                            seen.insert(h.clone());
                            found.push(h);
                        }
                    }
                }
                fresh = len;
                items.extend(found);
            }
            out = seen;
        }
        Base::Omega1 | Base::Istar | Base::I => {
            out.extend(r.iter().cloned());
            if base != Base::I {
                out.extend(r.iter().map(BooleanFunction::outer_negation));
            }
        }
        _ => unreachable!("only called for directly describable targets"),
    }
    // The constants the target contains, read through duality.
    let (c0, c1) = match base {
        Base::Istar => (false, false),
        _ => {
            let allows_const = |value: bool| {
                let (at_zero, at_ones) = if dualize { (!value, !value) } else { (value, value) };
                rule.allows(at_zero, at_ones)
            };
            (allows_const(false), allows_const(true))
        }
    };
    if c0 {
        out.insert(zero);
    }
    if c1 {
        out.insert(one);
    }
    Ok(out)
}

/// The m-ary part of `C2 R`, exactly.
pub fn left_closure(c2: CloneId, r: &BTreeSet<BooleanFunction>, m: u32) -> Result<BTreeSet<BooleanFunction>> {
    c2.validate()?;
    if r.is_empty() {
        return Ok(BTreeSet::new());
    }
    if has_direct_left_step(c2) {
        return direct_left_closure(c2, r, m);
    }
    if m > MAX_DOMAIN_ARITY {
        return Err(Error::NotEnumerable { what: format!("left composition with {c2}"), arity: m });
    }
    let columns: Vec<BooleanFunction> = r.iter().cloned().collect();
    Ok(Domain::new(&columns)?.left_closure(c2)?.into_iter().collect())
}

fn enumerated_left_closure(
    c2: CloneId,
    r: &BTreeSet<BooleanFunction>,
    m: u32,
    max_arity: u32,
    work_limit: u128,
) -> Result<BTreeSet<BooleanFunction>> {
    let mut outer = FunctionClass::new(max_arity)?;
    for k in 1..=max_arity {
        for h in enumerate_shared(c2, k)?.iter() {
            outer.insert(h.clone())?;
        }
    }
    let parts = vec![(m, r.iter().cloned().collect::<Vec<_>>())];
    let composed = compose_with_parts(&outer, &parts, m.max(1), work_limit)?;
    Ok(composed.part(m).clone())
}

/// The right factor `F C1` up to the cap.
fn right_step(f: &FunctionClass, c1: CloneId, cap: u32, work_limit: u128) -> Result<FunctionClass> {
    let mut parts = Vec::new();
    for m in 1..=cap {
        parts.push((m, enumerate_shared(c1, m)?.to_vec()));
    }
    compose_with_parts(f, &parts, cap, work_limit)
}

/// The (C1, C2)-clonoid generated by `f`, computed as `C2 (F C1)` at arities
/// up to the cap.
pub fn gen_clonoid(
    f: &FunctionClass,
    c1: CloneId,
    c2: CloneId,
    options: GenOptions,
) -> Result<Generated> {
    c1.validate()?;
    c2.validate()?;
    let cap = options.arity_cap;
    if let Some(top) = f.top_arity() {
        if top > cap {
            return Err(Error::CapTooSmall { cap, arity: top });
        }
    }
    let f = f.with_cap(cap)?;
    let r = right_step(&f, c1, cap, options.work_limit)?;
    let mut out = FunctionClass::new(cap)?;
    let mut exact = true;
    for m in 1..=cap {
        let part = match options.left {
            LeftStep::Exact => left_closure(c2, r.part(m), m)?,
            LeftStep::Enumerate { max_arity } => {
                if !has_direct_left_step(c2) {
                    exact = false;
                }
                enumerated_left_closure(c2, r.part(m), m, max_arity, options.work_limit)?
            }
        };
        *out.part_mut(m) = part;
    }
    Ok(Generated { class: out, exact, options })
}

/// Whether `K C1 ⊆ K` up to K's cap.
pub fn right_stable(k: &FunctionClass, c1: CloneId) -> Result<bool> {
    c1.validate()?;
    let cap = k.max_arity();
    let members: Vec<&BooleanFunction> = k.iter().collect();
    for m in 1..=cap {
        let target = k.part(m);
        // A part holding every m-ary function absorbs anything.
        if target.len() as u128 == 1u128 << (1u32 << m) {
            continue;
        }
        let gs = enumerate_shared(c1, m)?;
        let estimate = members.iter().fold(0u128, |acc, f| {
            acc.saturating_add(pow(gs.len() as u128, f.arity()))
        });
        if estimate > DEFAULT_WORK_LIMIT {
            return Err(Error::WorkLimit { estimate, limit: DEFAULT_WORK_LIMIT });
        }
        let stable = members.par_iter().all(|f| {
            let n = f.arity() as usize;
            let mut args = Vec::with_capacity(n);
            for_each_tuple(&gs, n, |tuple| {
                args.clear();
                args.extend(tuple.iter().map(|g| (*g).clone()));
                target.contains(&f.compose_unchecked(&args))
            })
        });
        if !stable {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `C2 K ⊆ K` up to K's cap.
pub fn left_stable(k: &FunctionClass, c2: CloneId) -> Result<bool> {
    c2.validate()?;
    for m in 1..=k.max_arity() {
        let part = k.part(m);
        if part.is_empty() {
            continue;
        }
        if !left_closure(c2, part, m)?.is_subset(part) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `K` is a (C1, C2)-clonoid up to its cap.
pub fn is_clonoid(k: &FunctionClass, c1: CloneId, c2: CloneId) -> Result<bool> {
    Ok(right_stable(k, c1)? && left_stable(k, c2)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transform {
    Outer,
    Inner,
    Dual,
}

/// Apply a negation transform to every member.
pub fn transform_class(k: &FunctionClass, which: Transform) -> FunctionClass {
    match which {
        Transform::Outer => k.map(BooleanFunction::outer_negation),
        Transform::Inner => k.map(BooleanFunction::inner_negation),
        Transform::Dual => k.map(BooleanFunction::dual),
    }
}

/// All minors of members of `k`, of arities up to `cap`.
pub fn minor_closure(k: &FunctionClass, cap: u32) -> Result<FunctionClass> {
    let mut out = FunctionClass::new(cap)?;
    for f in k.iter() {
        let n = f.arity();
        for m in 1..=cap {
            let mut map = vec![1u32; n as usize];
            let projections: Vec<BooleanFunction> = (1..=m)
                .map(|i| BooleanFunction::projection(m, i))
                .collect::<Result<_>>()?;
            'maps: loop {
                let args: Vec<BooleanFunction> =
                    map.iter().map(|&j| projections[j as usize - 1].clone()).collect();
                out.insert(f.compose_unchecked(&args))?;
                let mut p = map.len();
                while p > 0 {
                    p -= 1;
                    map[p] += 1;
                    if map[p] <= m {
                        continue 'maps;
                    }
                    map[p] = 1;
                }
                break;
            }
        }
    }
    Ok(out)
}

/// Close a family of classes under pairwise intersection and add the full
/// class. The result is deduplicated and sorted by size, then by members.
pub fn meet_closure(classes: &[FunctionClass]) -> Result<Vec<FunctionClass>> {
    let cap = match classes.first() {
        Some(c) => c.max_arity(),
        None => return Ok(Vec::new()),
    };
    let mut all: Vec<FunctionClass> = vec![FunctionClass::full(cap)?];
    let mut seen: BTreeSet<Vec<String>> = BTreeSet::new();
    seen.insert(all[0].literals());
    for c in classes {
        if c.max_arity() != cap {
            return Err(Error::CapMismatch { left: cap, right: c.max_arity() });
        }
        if seen.insert(c.literals()) {
            all.push(c.clone());
        }
    }
    let mut fresh = 0;
    while fresh < all.len() {
        let len = all.len();
        let mut found = Vec::new();
        for i in fresh..len {
            for j in 0..len {
                let meet = all[i].intersection(&all[j])?;
                if seen.insert(meet.literals()) {
                    found.push(meet);
                }
            }
        }
        fresh = len;
        all.extend(found);
    }
    all.sort_by_cached_key(|c| (c.len(), c.literals()));
    Ok(all)
}

/// Clones allowed as a left factor in exact mode, at arity `m`.
pub fn exact_left_supported(c2: CloneId, m: u32) -> bool {
    has_direct_left_step(c2) || m <= MAX_DOMAIN_ARITY
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::postlattice::{enumerate, Rank};

    fn lit(s: &str) -> BooleanFunction {
        s.parse().unwrap()
    }

    fn class(cap: u32, lits: &[&str]) -> FunctionClass {
        FunctionClass::from_functions(cap, lits.iter().map(|s| lit(s))).unwrap()
    }

    #[test]
    fn composition_examples() {
        let empty = FunctionClass::new(2).unwrap();
        let proj = FunctionClass::projections(2).unwrap();
        assert!(class_compose(&empty, &proj).unwrap().is_empty());
        let and = class(2, &["2:0x8"]);
        let fg = class_compose(&and, &proj).unwrap();
        assert!(fg.contains(&lit("2:0x8")));
        assert!(fg.contains(&lit("1:0x2")));
        assert_eq!(fg.len(), 4);
        assert!(matches!(
            class_compose(&and, &FunctionClass::projections(3).unwrap()),
            Err(Error::CapMismatch { .. })
        ));
    }

    #[test]
    fn generation_examples() {
        let empty = FunctionClass::new(3).unwrap();
        let g = gen_clonoid(&empty, CloneId::L, CloneId::Lambda, GenOptions::new(3)).unwrap();
        assert!(g.class.is_empty());
        let vee = FunctionClass::from_functions(3, [BooleanFunction::vee_n(3).unwrap()]).unwrap();
        let g = gen_clonoid(&vee, CloneId::L, CloneId::LambdaC, GenOptions::new(3)).unwrap();
        assert!(g.exact);
        assert_eq!(g.class.len(), 276);
        let beta = BooleanFunction::beta(7).unwrap();
        let g = FunctionClass::from_functions(7, [beta.clone()]).unwrap();
        // Only membership of the generator is needed here; the upper arities
        // of the right factor are far too large to list.
        assert!(g.contains(&beta));
    }

    #[test]
    fn direct_and_domain_left_steps_agree() {
        let targets = [
            CloneId::Lambda,
            CloneId::Lambda0,
            CloneId::Lambda1,
            CloneId::LambdaC,
            CloneId::V,
            CloneId::V0,
            CloneId::V1,
            CloneId::VC,
            CloneId::Omega1,
            CloneId::Istar,
            CloneId::I,
            CloneId::I0,
            CloneId::I1,
            CloneId::Ic,
        ];
        let samples = [
            vec!["3:0x17", "3:0xE8"],
            vec!["3:0x96"],
            vec!["3:0x80", "3:0x01", "3:0x3C"],
            vec!["3:0x00"],
            vec!["3:0xFF", "3:0xAA"],
        ];
        for sample in samples {
            let r: BTreeSet<BooleanFunction> = sample.iter().map(|s| lit(s)).collect();
            let columns: Vec<_> = r.iter().cloned().collect();
            let dom = Domain::new(&columns).unwrap();
            for c in targets {
                let direct = direct_left_closure(c, &r, 3).unwrap();
                let via_domain: BTreeSet<_> = dom.left_closure(c).unwrap().into_iter().collect();
                assert_eq!(direct, via_domain, "{c} {sample:?}");
            }
        }
    }

    #[test]
    fn stability_examples() {
        let full = FunctionClass::full(3).unwrap();
        for c in [CloneId::All, CloneId::M, CloneId::L, CloneId::Ic] {
            assert!(right_stable(&full, c).unwrap());
            assert!(left_stable(&full, c).unwrap());
        }
        let refl = FunctionClass::filtered(3, BooleanFunction::is_reflexive).unwrap();
        assert!(left_stable(&refl, CloneId::VC).unwrap());
        let and = class(2, &["2:0x8"]);
        assert!(!right_stable(&and, CloneId::Ic).unwrap());
        let empty = FunctionClass::new(3).unwrap();
        assert!(is_clonoid(&empty, CloneId::All, CloneId::All).unwrap());
    }

    #[test]
    fn transforms_and_minors() {
        let and = class(2, &["2:0x8"]);
        assert_eq!(transform_class(&and, Transform::Dual), class(2, &["2:0xE"]));
        for t in [Transform::Outer, Transform::Inner, Transform::Dual] {
            assert_eq!(transform_class(&transform_class(&and, t), t), and);
        }
        let minors = minor_closure(&and, 2).unwrap();
        assert_eq!(minors, class(2, &["1:0x2", "2:0x8", "2:0xC", "2:0xA"]));
    }

    #[test]
    fn meet_closure_examples() {
        let full = FunctionClass::full(2).unwrap();
        assert_eq!(meet_closure(&[full.clone()]).unwrap(), vec![full.clone()]);
        let t0 = FunctionClass::filtered(2, |f| !f.at_zero()).unwrap();
        let t1 = FunctionClass::filtered(2, |f| f.at_ones()).unwrap();
        let closed = meet_closure(&[t0, t1]).unwrap();
        assert_eq!(closed.len(), 4);
    }

    #[test]
    fn enumerate_mode_is_an_under_approximation() {
        let f = class(3, &["3:0x96"]);
        let exact = gen_clonoid(&f, CloneId::Ic, CloneId::M, GenOptions::new(3)).unwrap();
        let mut opts = GenOptions::new(3);
        opts.left = LeftStep::Enumerate { max_arity: 2 };
        let approx = gen_clonoid(&f, CloneId::Ic, CloneId::M, opts).unwrap();
        assert!(!approx.exact);
        assert!(approx.class.is_subset(&exact.class).unwrap());
        assert!(right_stable(&exact.class, CloneId::Ic).unwrap());
        assert!(left_stable(&exact.class, CloneId::M).unwrap());
        let _ = enumerate(CloneId::U(Rank::Finite(2)), 2).unwrap();
    }
}
