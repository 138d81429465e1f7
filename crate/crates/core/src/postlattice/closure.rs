//! Generated clones and the standard generating sets.

use std::collections::HashSet;

use super::{dual_clone, CloneId, Rank};
use crate::classcomp::FunctionClass;
use crate::error::{Error, Result};
use crate::function::BooleanFunction;

/// Arity-indexed sets produced by [`clone_closure`].
pub type ArityParts = FunctionClass;

/// Visit every tuple over `0..len` of length `k` that uses at least one index
/// from `fresh..len`.
fn for_each_new_tuple(k: usize, fresh: usize, len: usize, mut visit: impl FnMut(&[usize])) {
    if fresh >= len {
        return;
    }
    let mut tuple = vec![0usize; k];
    for pivot in 0..k {
        // Positions before the pivot stay old, the pivot is new, the rest is free.
        let lo = |p: usize| if p == pivot { fresh } else { 0 };
        let hi = |p: usize| if p < pivot { fresh } else { len };
        if (0..k).any(|p| lo(p) >= hi(p)) {
            continue;
        }
        for (p, t) in tuple.iter_mut().enumerate() {
            *t = lo(p);
        }
        'odometer: loop {
            visit(&tuple);
            let mut p = k;
            while p > 0 {
                p -= 1;
                tuple[p] += 1;
                if tuple[p] < hi(p) {
                    continue 'odometer;
                }
                tuple[p] = lo(p);
            }
            break;
        }
    }
}

/// The m-ary part of the clone generated by `gens`: the projections closed
/// under application of the generators.
fn closure_at(gens: &[BooleanFunction], m: u32) -> Result<Vec<BooleanFunction>> {
    let mut elems: Vec<BooleanFunction> = (1..=m)
        .map(|i| BooleanFunction::projection(m, i))
        .collect::<Result<_>>()?;
    let mut seen: HashSet<BooleanFunction> = elems.iter().cloned().collect();
    let mut fresh = 0;
    loop {
        let len = elems.len();
        let mut found = Vec::new();
        for g in gens {
            let k = g.arity() as usize;
            let mut args = Vec::with_capacity(k);
            for_each_new_tuple(k, fresh, len, |tuple| {
                args.clear();
                args.extend(tuple.iter().map(|&i| elems[i].clone()));
                let h = g.compose_unchecked(&args);
                if seen.insert(h.clone()) {
                    found.push(h);
                }
            });
        }
        if found.is_empty() {
            break;
        }
        fresh = len;
        elems.extend(found);
    }
    Ok(elems)
}

/// The clone generated by `gens`, restricted to arities `1..=cap`.
///
/// Every member of a generated clone is a term over the generators, and the
/// m-ary term functions only ever pass through m-ary intermediate results,
/// so each arity is closed independently and the result is exact.
pub fn clone_closure(gens: &[BooleanFunction], cap: u32) -> Result<FunctionClass> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let top = gens.iter().map(BooleanFunction::arity).max().unwrap_or(1);
    if cap < top {
        return Err(Error::CapTooSmall { cap, arity: top });
    }
    let mut class = FunctionClass::new(cap)?;
    for m in 1..=cap {
        for f in closure_at(gens, m)? {
            class.insert(f)?;
        }
    }
    Ok(class)
}

fn lit(n: u32, f: impl Fn(&[bool]) -> bool) -> BooleanFunction {
    BooleanFunction::from_tuple_fn(n, |a| f(&a.components())).expect("small arity")
}

/// `h_k(x_1, ..., x_{k+1})`: true when at most one argument is false.
fn near_unanimity_threshold(k: u32) -> BooleanFunction {
    BooleanFunction::threshold(k + 1, k).expect("rank below the arity cap")
}

/// A finite generating set for clone `c`, for finite ranks and infinity.
pub fn generators(c: CloneId) -> Result<Vec<BooleanFunction>> {
    use CloneId::*;
    c.validate()?;
    let and = BooleanFunction::named("and")?;
    let or = BooleanFunction::named("or")?;
    let xor = BooleanFunction::named("xor")?;
    let not = BooleanFunction::named("not")?;
    let id = BooleanFunction::named("id")?;
    let zero = BooleanFunction::named("const0")?;
    let one = BooleanFunction::named("const1")?;
    let maj = BooleanFunction::majority();
    let xnor = xor.outer_negation();
    let and_not = lit(2, |a| a[0] && !a[1]);
    let x_and_y_or_z = lit(3, |a| a[0] && (a[1] || a[2]));
    let x_and_y_or_not_z = lit(3, |a| a[0] && (a[1] || !a[2]));
    let dualized = |c: CloneId| -> Result<Vec<BooleanFunction>> {
        Ok(generators(dual_clone(c))?.iter().map(BooleanFunction::dual).collect())
    };
    let gens = match c {
        All => vec![and, not],
        T0 => vec![and, xor],
        T1 => vec![or, xnor],
        Tc => vec![or, lit(3, |a| a[0] && (a[1] == a[2]))],
        M => vec![or, and, zero, one],
        M0 => vec![or, and, zero],
        M1 => vec![or, and, one],
        Mc => vec![or, and],
        S => vec![lit(3, |a| (a[0] && !a[1]) || (a[0] && !a[2]) || (!a[1] && !a[2]))],
        Sc => vec![lit(3, |a| (a[0] && a[1]) || (a[0] && !a[2]) || (a[1] && !a[2]))],
        SM => vec![maj],
        L => vec![xor, one],
        L0 => vec![xor],
        L1 => vec![xnor],
        LS => vec![lit(3, |a| !(a[0] ^ a[1] ^ a[2]))],
        Lc => vec![lit(3, |a| a[0] ^ a[1] ^ a[2])],
        U(Rank::Infinite) => vec![and_not],
        TcU(Rank::Infinite) => vec![x_and_y_or_not_z],
        MU(Rank::Infinite) => vec![x_and_y_or_z, zero],
        McU(Rank::Infinite) => vec![x_and_y_or_z],
        U(Rank::Finite(k)) => vec![and_not, near_unanimity_threshold(k)],
        TcU(Rank::Finite(k)) => vec![x_and_y_or_not_z, near_unanimity_threshold(k)],
        MU(Rank::Finite(k)) => vec![near_unanimity_threshold(k), zero],
        McU(Rank::Finite(k)) => vec![x_and_y_or_z, near_unanimity_threshold(k)],
        W(_) | TcW(_) | MW(_) | McW(_) | V | V0 | V1 | VC => return dualized(c),
        Lambda => vec![and, zero, one],
        Lambda0 => vec![and, zero],
        Lambda1 => vec![and, one],
        LambdaC => vec![and],
        Omega1 => vec![not, one],
        Istar => vec![not],
        I => vec![id, zero, one],
        I0 => vec![id, zero],
        I1 => vec![id, one],
        Ic => vec![id],
    };
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::postlattice::enumerate;

    #[test]
    fn new_tuple_visitor_covers_exactly_the_new_tuples() {
        let mut seen = Vec::new();
        for_each_new_tuple(2, 2, 4, |t| seen.push((t[0], t[1])));
        seen.sort();
        let mut expected: Vec<_> = (0..4)
            .flat_map(|a| (0..4).map(move |b| (a, b)))
            .filter(|&(a, b)| a >= 2 || b >= 2)
            .collect();
        expected.sort();
        assert_eq!(seen, expected);
        let mut count = 0;
        for_each_new_tuple(3, 0, 3, |_| count += 1);
        assert_eq!(count, 27);
    }

    #[test]
    fn linear_and_lattice_clones() {
        let xor = BooleanFunction::named("xor").unwrap();
        let one = BooleanFunction::named("const1").unwrap();
        let l = clone_closure(&[xor, one], 3).unwrap();
        for n in 1..=3 {
            assert_eq!(l.part(n).iter().cloned().collect::<Vec<_>>(), enumerate(CloneId::L, n).unwrap());
        }
        let and = BooleanFunction::named("and").unwrap();
        let zero = BooleanFunction::named("const0").unwrap();
        let one = BooleanFunction::named("const1").unwrap();
        let lam = clone_closure(&[and, zero, one], 3).unwrap();
        for n in 1..=3 {
            assert_eq!(
                lam.part(n).iter().cloned().collect::<Vec<_>>(),
                enumerate(CloneId::Lambda, n).unwrap()
            );
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(clone_closure(&[], 3), Err(Error::EmptyGenerators)));
        let maj = BooleanFunction::majority();
        assert!(matches!(clone_closure(&[maj], 2), Err(Error::CapTooSmall { .. })));
    }
}
