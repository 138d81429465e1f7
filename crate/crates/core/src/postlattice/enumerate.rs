//! Listing the n-ary part of a clone.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{member, Base, CloneId};
use crate::error::{Error, Result};
use crate::function::{all_functions, BooleanFunction};
use crate::tuple::check_arity;

/// Largest arity at which every function is filtered through the predicate.
const GENERIC_LIMIT: u32 = 4;

/// Refuse listings whose tables would take more than this many bytes.
const BYTE_LIMIT: u128 = 1 << 28;

type Cache = Mutex<HashMap<(CloneId, u32), Arc<[BooleanFunction]>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn has_closed_form(c: CloneId) -> bool {
    matches!(
        c.decompose().1,
        Base::L | Base::Lambda | Base::Omega1 | Base::Istar | Base::I
    )
}

/// Whether [`enumerate`] supports clone `c` at arity `n`.
pub fn is_enumerable(c: CloneId, n: u32) -> bool {
    n >= 1 && (n <= GENERIC_LIMIT || has_closed_form(c))
}

fn closed_form_candidates(c: CloneId, n: u32) -> Result<Vec<BooleanFunction>> {
    let (dualize, base, _) = c.decompose();
    let count: u128 = match base {
        Base::L => 1u128 << (n + 1),
        Base::Lambda => (1u128 << n) + 1,
        _ => 2 * u128::from(n) + 2,
    };
    let bytes = count * (1u128 << n) / 8;
    if bytes > BYTE_LIMIT {
        return Err(Error::NotEnumerable { what: c.to_string(), arity: n });
    }
    let mut out = vec![
        BooleanFunction::constant(n, false)?,
        BooleanFunction::constant(n, true)?,
    ];
    match base {
        Base::L => {
            let projections: Vec<_> = (1..=n)
                .map(|i| BooleanFunction::projection(n, i))
                .collect::<Result<_>>()?;
            for s in 1u32..(1 << n) {
                let mut f = BooleanFunction::zero(n)?;
                for (i, p) in projections.iter().enumerate() {
                    if s >> i & 1 == 1 {
                        f = f.xor(p)?;
                    }
                }
                out.push(f.outer_negation());
                out.push(f);
            }
        }
        Base::Lambda => {
            for s in 1u32..(1 << n) {
                let f = BooleanFunction::from_index_fn(n, |idx| idx & s == s)?;
                out.push(if dualize { f.dual() } else { f });
            }
        }
        _ => {
            for i in 1..=n {
                let p = BooleanFunction::projection(n, i)?;
                out.push(p.outer_negation());
                out.push(p);
            }
        }
    }
    Ok(out)
}

fn compute(c: CloneId, n: u32) -> Result<Vec<BooleanFunction>> {
    let mut out = if n <= GENERIC_LIMIT {
        let mut v = Vec::new();
        for f in all_functions(n)? {
            if member(&f, c)? {
                v.push(f);
            }
        }
        v
    } else if has_closed_form(c) {
        let mut v = Vec::new();
        for f in closed_form_candidates(c, n)? {
            if member(&f, c)? {
                v.push(f);
            }
        }
        v
    } else {
        return Err(Error::NotEnumerable { what: c.to_string(), arity: n });
    };
    out.sort();
    out.dedup();
    Ok(out)
}

/// The n-ary part of clone `c`, sorted, behind a shared cache.
pub fn enumerate_shared(c: CloneId, n: u32) -> Result<Arc<[BooleanFunction]>> {
    c.validate()?;
    check_arity(n)?;
    if let Some(hit) = cache().lock().expect("cache lock").get(&(c, n)) {
        return Ok(Arc::clone(hit));
    }
    let list: Arc<[BooleanFunction]> = compute(c, n)?.into();
    cache()
        .lock()
        .expect("cache lock")
        .insert((c, n), Arc::clone(&list));
    Ok(list)
}

/// The n-ary part of clone `c`, sorted.
pub fn enumerate(c: CloneId, n: u32) -> Result<Vec<BooleanFunction>> {
    Ok(enumerate_shared(c, n)?.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::postlattice::Rank;

    #[test]
    fn sizes() {
        for n in 1..=6 {
            assert_eq!(enumerate(CloneId::L, n).unwrap().len(), 1 << (n + 1));
            assert_eq!(enumerate(CloneId::Ic, n).unwrap().len(), n as usize);
            assert_eq!(enumerate(CloneId::Omega1, n).unwrap().len(), 2 * n as usize + 2);
            assert_eq!(enumerate(CloneId::LambdaC, n).unwrap().len(), (1 << n) - 1);
            assert_eq!(enumerate(CloneId::V, n).unwrap().len(), (1 << n) + 1);
        }
        assert_eq!(enumerate(CloneId::All, 2).unwrap().len(), 16);
        assert_eq!(enumerate(CloneId::Ic, 3).unwrap().len(), 3);
        assert_eq!(enumerate(CloneId::M, 3).unwrap().len(), 20);
        assert_eq!(enumerate(CloneId::M, 4).unwrap().len(), 168);
        assert_eq!(enumerate(CloneId::S, 3).unwrap().len(), 16);
    }

    #[test]
    fn closed_forms_agree_with_filtering_at_small_arity() {
        for c in CloneId::instantiated(3) {
            if !has_closed_form(c) {
                continue;
            }
            for n in 1..=4 {
                let mut direct = Vec::new();
                for f in closed_form_candidates(c, n).unwrap() {
                    if member(&f, c).unwrap() {
                        direct.push(f);
                    }
                }
                direct.sort();
                direct.dedup();
                assert_eq!(direct, enumerate(c, n).unwrap(), "{c} {n}");
            }
        }
    }

    #[test]
    fn unsupported_arities() {
        assert!(matches!(
            enumerate(CloneId::M, 5),
            Err(Error::NotEnumerable { .. })
        ));
        assert!(enumerate(CloneId::U(Rank::Finite(1)), 2).is_err());
        assert!(is_enumerable(CloneId::L, 9));
        assert!(!is_enumerable(CloneId::SM, 5));
    }
}
