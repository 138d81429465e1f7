//! The subclone order, as the reflexive-transitive closure of the covering
//! edges of the Hasse diagram of Post's lattice.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{dual_clone, CloneId, Rank};
use crate::error::Result;

use CloneId::*;

/// Covering pairs `(lower, upper)` with the rank families instantiated at
/// `2..=max_rank` and infinity; the infinite member sits below rank `max_rank`.
pub fn covering_edges(max_rank: u32) -> Vec<(CloneId, CloneId)> {
    let max_rank = max_rank.max(2);
    let mut edges = vec![
        (Ic, Istar),
        (Istar, Omega1),
        (I, Omega1),
        (Omega1, L),
        (Ic, I0),
        (I0, I),
        (Ic, I1),
        (I1, I),
        (Ic, Lc),
        (Ic, SM),
        (I0, L0),
        (I1, L1),
        (Istar, LS),
        (Ic, LambdaC),
        (I0, Lambda0),
        (I1, Lambda1),
        (I, Lambda),
        (Ic, VC),
        (I0, V0),
        (I1, V1),
        (I, V),
        (LambdaC, Lambda0),
        (Lambda0, Lambda),
        (LambdaC, Lambda1),
        (Lambda1, Lambda),
        (LambdaC, McU(Rank::Infinite)),
        (Lambda0, MU(Rank::Infinite)),
        (Lambda1, M1),
        (Lambda, M),
        (VC, V0),
        (V0, V),
        (VC, V1),
        (V1, V),
        (VC, McW(Rank::Infinite)),
        (V0, M0),
        (V1, MW(Rank::Infinite)),
        (V, M),
        (SM, McU(Rank::Finite(2))),
        (SM, McW(Rank::Finite(2))),
        (Lc, LS),
        (LS, L),
        (Lc, L0),
        (L0, L),
        (Lc, L1),
        (L1, L),
        (Lc, Sc),
        (LS, S),
        (L0, T0),
        (L1, T1),
        (L, All),
        (SM, Sc),
        (Sc, S),
        (Sc, Tc),
        (S, All),
        (Mc, M0),
        (M0, M),
        (Mc, M1),
        (M1, M),
        (Mc, Tc),
        (M0, T0),
        (M1, T1),
        (M, All),
        (Tc, T0),
        (T0, All),
        (Tc, T1),
        (T1, All),
    ];
    // The separating families, written for the U side and mirrored.
    let mut u_side = Vec::new();
    let ranks: Vec<Rank> = (2..=max_rank)
        .map(Rank::Finite)
        .chain(std::iter::once(Rank::Infinite))
        .collect();
    for &r in &ranks {
        u_side.push((McU(r), TcU(r)));
        u_side.push((TcU(r), U(r)));
        u_side.push((McU(r), MU(r)));
        u_side.push((MU(r), U(r)));
        let above = match r {
            Rank::Infinite => Some(Rank::Finite(max_rank)),
            Rank::Finite(2) => None,
            Rank::Finite(k) => Some(Rank::Finite(k - 1)),
        };
        if let Some(a) = above {
            for fam in [U, TcU, MU, McU] {
                u_side.push((fam(r), fam(a)));
            }
        }
    }
    u_side.push((McU(Rank::Finite(2)), Mc));
    u_side.push((MU(Rank::Finite(2)), M0));
    u_side.push((TcU(Rank::Finite(2)), Tc));
    u_side.push((U(Rank::Finite(2)), T0));
    for &(a, b) in &u_side {
        edges.push((a, b));
        edges.push((dual_clone(a), dual_clone(b)));
    }
    edges
}

fn largest_rank(cs: &[CloneId]) -> u32 {
    cs.iter()
        .filter_map(|c| match c.rank() {
            Some(Rank::Finite(k)) => Some(k),
            _ => None,
        })
        .max()
        .unwrap_or(2)
}

/// Reachability over the covering graph for one rank bound.
struct Order {
    index: HashMap<CloneId, usize>,
    above: Vec<Vec<bool>>,
}

impl Order {
    fn build(max_rank: u32) -> Self {
        let nodes = CloneId::instantiated(max_rank);
        let index: HashMap<CloneId, usize> =
            nodes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); nodes.len()];
        for (lo, hi) in covering_edges(max_rank) {
            up[index[&lo]].push(index[&hi]);
        }
        let above = (0..nodes.len())
            .map(|start| {
                let mut seen = vec![false; nodes.len()];
                seen[start] = true;
                let mut stack = vec![start];
                while let Some(c) = stack.pop() {
                    for &h in &up[c] {
                        if !seen[h] {
                            seen[h] = true;
                            stack.push(h);
                        }
                    }
                }
                seen
            })
            .collect();
        Self { index, above }
    }
}

fn order(max_rank: u32) -> Arc<Order> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Order>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().expect("order cache lock");
    Arc::clone(guard.entry(max_rank).or_insert_with(|| Arc::new(Order::build(max_rank))))
}

/// Whether `c1` is a subclone of `c2`.
pub fn leq(c1: CloneId, c2: CloneId) -> Result<bool> {
    c1.validate()?;
    c2.validate()?;
    if c1 == c2 {
        return Ok(true);
    }
    // One rank beyond every finite parameter in play separates infinity
    // from all of them.
    let max_rank = (largest_rank(&[c1, c2]) + 1).max(3);
    let order = order(max_rank);
    Ok(order.above[order.index[&c1]][order.index[&c2]])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_relations() {
        assert!(leq(Lc, L).unwrap());
        assert!(leq(Lambda, M).unwrap());
        assert!(!leq(L, M).unwrap());
        assert!(leq(Ic, All).unwrap());
        assert!(leq(U(Rank::Infinite), U(Rank::Finite(40))).unwrap());
        assert!(leq(U(Rank::Finite(40)), U(Rank::Finite(2))).unwrap());
        assert!(!leq(U(Rank::Finite(2)), U(Rank::Finite(40))).unwrap());
        assert!(leq(LambdaC, McU(Rank::Finite(7))).unwrap());
        assert!(leq(SM, McW(Rank::Finite(2))).unwrap());
        assert!(!leq(SM, McW(Rank::Finite(3))).unwrap());
        assert!(leq(Lambda1, M1).unwrap());
        assert!(!leq(Lambda1, U(Rank::Finite(2))).unwrap());
    }

    #[test]
    fn order_is_antisymmetric_and_dual_invariant() {
        let all = CloneId::instantiated(5);
        for &a in &all {
            for &b in &all {
                let ab = leq(a, b).unwrap();
                if a != b {
                    assert!(!(ab && leq(b, a).unwrap()), "{a} {b}");
                }
                assert_eq!(ab, leq(dual_clone(a), dual_clone(b)).unwrap());
            }
            assert!(leq(Ic, a).unwrap());
            assert!(leq(a, All).unwrap());
        }
    }
}
