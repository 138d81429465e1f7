//! The clones of Boolean functions: names, membership, duality, order,
//! enumeration, generated clones and the cardinality classifier.

mod cardinality;
mod closure;
mod enumerate;
pub mod extension;
mod order;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::anf::Anf;
use crate::error::{Error, Result};
use crate::function::BooleanFunction;

pub use cardinality::{classify_cardinality, table_cell, Cardinality, CardinalityVerdict};
pub use closure::{clone_closure, generators, ArityParts};
pub use enumerate::{enumerate, enumerate_shared, is_enumerable};
pub use order::{covering_edges, leq};

/// Rank parameter of the 1- and 0-separating families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rank {
    Finite(u32),
    Infinite,
}

impl Rank {
    fn check(self) -> Result<()> {
        match self {
            Rank::Finite(k) if k < 2 => Err(Error::InvalidRank(k)),
            _ => Ok(()),
        }
    }

    /// Whether a set of true points whose smallest meet-zero subfamily has
    /// `witness` elements (None if there is none) passes this rank.
    fn admits(self, witness: Option<u32>) -> bool {
        match (self, witness) {
            (_, None) => true,
            (Rank::Infinite, Some(_)) => false,
            (Rank::Finite(k), Some(w)) => w > k,
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(k) => write!(f, "{k}"),
            Rank::Infinite => f.write_str("inf"),
        }
    }
}

/// A clone of Post's lattice. The rank-parametrized families take `k >= 2`
/// or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CloneId {
    All,
    T0,
    T1,
    Tc,
    M,
    M0,
    M1,
    Mc,
    S,
    Sc,
    SM,
    L,
    L0,
    L1,
    LS,
    Lc,
    U(Rank),
    TcU(Rank),
    MU(Rank),
    McU(Rank),
    W(Rank),
    TcW(Rank),
    MW(Rank),
    McW(Rank),
    Lambda,
    Lambda0,
    Lambda1,
    LambdaC,
    V,
    V0,
    V1,
    VC,
    Omega1,
    Istar,
    I,
    I0,
    I1,
    Ic,
}

/// Constraints that the decorations put on the values at the all-zero and
/// all-one tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum EndpointRule {
    Free,
    Zero,
    One,
    Both,
    /// `f(0) != f(1)`, which for affine functions is self-duality.
    Differ,
}

impl EndpointRule {
    pub(crate) fn allows(self, at_zero: bool, at_ones: bool) -> bool {
        match self {
            EndpointRule::Free => true,
            EndpointRule::Zero => !at_zero,
            EndpointRule::One => at_ones,
            EndpointRule::Both => !at_zero && at_ones,
            EndpointRule::Differ => at_zero != at_ones,
        }
    }
}

/// The undecorated clone underneath a [`CloneId`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Base {
    All,
    M,
    S,
    SM,
    L,
    U(Rank),
    MU(Rank),
    Lambda,
    Omega1,
    Istar,
    I,
}

const FIXED: [CloneId; 30] = [
    CloneId::All,
    CloneId::T0,
    CloneId::T1,
    CloneId::Tc,
    CloneId::M,
    CloneId::M0,
    CloneId::M1,
    CloneId::Mc,
    CloneId::S,
    CloneId::Sc,
    CloneId::SM,
    CloneId::L,
    CloneId::L0,
    CloneId::L1,
    CloneId::LS,
    CloneId::Lc,
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

impl CloneId {
    /// Every clone, with the rank families instantiated at `2..=max_rank`
    /// and infinity. The order is stable.
    pub fn instantiated(max_rank: u32) -> Vec<CloneId> {
        let mut out: Vec<CloneId> = FIXED.to_vec();
        let ranks: Vec<Rank> = (2..=max_rank)
            .map(Rank::Finite)
            .chain(std::iter::once(Rank::Infinite))
            .collect();
        for make in [
            CloneId::U,
            CloneId::TcU,
            CloneId::MU,
            CloneId::McU,
            CloneId::W,
            CloneId::TcW,
            CloneId::MW,
            CloneId::McW,
        ] {
            out.extend(ranks.iter().map(|&r| make(r)));
        }
        out
    }

    /// Rank parameter, for the separating families.
    pub fn rank(self) -> Option<Rank> {
        use CloneId::*;
        match self {
            U(r) | TcU(r) | MU(r) | McU(r) | W(r) | TcW(r) | MW(r) | McW(r) => Some(r),
            _ => None,
        }
    }

    /// Reject rank parameters below 2.
    pub fn validate(self) -> Result<()> {
        self.rank().map_or(Ok(()), Rank::check)
    }

    /// Whether the clone lies on the mirror axis of the lattice.
    pub fn is_self_dual_clone(self) -> bool {
        dual_clone(self) == self
    }

    /// Split into an undecorated clone, an endpoint rule and whether the
    /// whole thing must be read through duality.
    pub(crate) fn decompose(self) -> (bool, Base, EndpointRule) {
        use CloneId::*;
        use EndpointRule as E;
        match self {
            All => (false, Base::All, E::Free),
            T0 => (false, Base::All, E::Zero),
            T1 => (false, Base::All, E::One),
            Tc => (false, Base::All, E::Both),
            M => (false, Base::M, E::Free),
            M0 => (false, Base::M, E::Zero),
            M1 => (false, Base::M, E::One),
            Mc => (false, Base::M, E::Both),
            S => (false, Base::S, E::Free),
            Sc => (false, Base::S, E::Both),
            SM => (false, Base::SM, E::Free),
            L => (false, Base::L, E::Free),
            L0 => (false, Base::L, E::Zero),
            L1 => (false, Base::L, E::One),
            LS => (false, Base::L, E::Differ),
            Lc => (false, Base::L, E::Both),
            U(r) => (false, Base::U(r), E::Free),
            TcU(r) => (false, Base::U(r), E::One),
            MU(r) => (false, Base::MU(r), E::Free),
            McU(r) => (false, Base::MU(r), E::One),
            Lambda => (false, Base::Lambda, E::Free),
            Lambda0 => (false, Base::Lambda, E::Zero),
            Lambda1 => (false, Base::Lambda, E::One),
            LambdaC => (false, Base::Lambda, E::Both),
            Omega1 => (false, Base::Omega1, E::Free),
            Istar => (false, Base::Istar, E::Free),
            I => (false, Base::I, E::Free),
            I0 => (false, Base::I, E::Zero),
            I1 => (false, Base::I, E::One),
            Ic => (false, Base::I, E::Both),
            W(_) | TcW(_) | MW(_) | McW(_) | V | V0 | V1 | VC => {
                let (_, base, rule) = dual_clone(self).decompose();
                (true, base, rule)
            }
        }
    }
}

impl fmt::Display for CloneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CloneId::*;
        let name = match self {
            All => "All",
            T0 => "T0",
            T1 => "T1",
            Tc => "Tc",
            M => "M",
            M0 => "M0",
            M1 => "M1",
            Mc => "Mc",
            S => "S",
            Sc => "Sc",
            SM => "SM",
            L => "L",
            L0 => "L0",
            L1 => "L1",
            LS => "LS",
            Lc => "Lc",
            U(r) => return write!(f, "U{r}"),
            TcU(r) => return write!(f, "TcU{r}"),
            MU(r) => return write!(f, "MU{r}"),
            McU(r) => return write!(f, "McU{r}"),
            W(r) => return write!(f, "W{r}"),
            TcW(r) => return write!(f, "TcW{r}"),
            MW(r) => return write!(f, "MW{r}"),
            McW(r) => return write!(f, "McW{r}"),
            Lambda => "Lambda",
            Lambda0 => "Lambda0",
            Lambda1 => "Lambda1",
            LambdaC => "LambdaC",
            V => "V",
            V0 => "V0",
            V1 => "V1",
            VC => "VC",
            Omega1 => "Omega1",
            Istar => "Istar",
            I => "I",
            I0 => "I0",
            I1 => "I1",
            Ic => "Ic",
        };
        f.write_str(name)
    }
}

impl FromStr for CloneId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        for c in FIXED {
            if c.to_string().to_ascii_lowercase() == lower {
                return Ok(c);
            }
        }
        if lower == "omega" {
            return Ok(CloneId::All);
        }
        // Longest prefixes first so that "mcu3" is not read as "m" + "cu3".
        let families: [(&str, fn(Rank) -> CloneId); 8] = [
            ("mcu", CloneId::McU),
            ("mcw", CloneId::McW),
            ("tcu", CloneId::TcU),
            ("tcw", CloneId::TcW),
            ("mu", CloneId::MU),
            ("mw", CloneId::MW),
            ("u", CloneId::U),
            ("w", CloneId::W),
        ];
        for (prefix, make) in families {
            if let Some(rest) = lower.strip_prefix(prefix) {
                let rank = match rest {
                    "inf" | "∞" | "infinity" => Rank::Infinite,
                    digits => {
                        let k: u32 = digits
                            .parse()
                            .map_err(|_| Error::UnknownClone(s.to_string()))?;
                        Rank::Finite(k)
                    }
                };
                rank.check()?;
                return Ok(make(rank));
            }
        }
        Err(Error::UnknownClone(s.to_string()))
    }
}

impl Serialize for CloneId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CloneId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The image of a clone under dualization.
pub fn dual_clone(c: CloneId) -> CloneId {
    use CloneId::*;
    match c {
        T0 => T1,
        T1 => T0,
        M0 => M1,
        M1 => M0,
        L0 => L1,
        L1 => L0,
        U(r) => W(r),
        W(r) => U(r),
        TcU(r) => TcW(r),
        TcW(r) => TcU(r),
        MU(r) => MW(r),
        MW(r) => MU(r),
        McU(r) => McW(r),
        McW(r) => McU(r),
        Lambda => V,
        V => Lambda,
        Lambda0 => V1,
        V1 => Lambda0,
        Lambda1 => V0,
        V0 => Lambda1,
        LambdaC => VC,
        VC => LambdaC,
        I0 => I1,
        I1 => I0,
        other => other,
    }
}

/// Number of true points in a smallest subfamily of `f^{-1}(1)` whose meet is
/// the zero tuple, or `None` if there is no such subfamily.
pub fn separation_witness_size(f: &BooleanFunction) -> Option<u32> {
    let n = f.arity();
    let full = (1u32 << n) - 1;
    let meet_all = f.true_indices().fold(full, |acc, t| acc & t);
    if meet_all != 0 {
        return None;
    }
    if f.at_zero() {
        return Some(1);
    }
    // Only minimal true points matter for reaching zero quickly.
    let minimal: Vec<u32> = f
        .true_indices()
        .filter(|&t| (0..n).all(|j| t & (1 << j) == 0 || !f.eval_index(t ^ (1 << j))))
        .collect();
    let mut visited = vec![0u64; ((1usize << n) + 63) / 64];
    let mark = |visited: &mut Vec<u64>, s: u32| -> bool {
        let (w, b) = ((s >> 6) as usize, s & 63);
        let fresh = visited[w] & (1 << b) == 0;
        visited[w] |= 1 << b;
        fresh
    };
    let mut frontier = Vec::new();
    for &t in &minimal {
        if mark(&mut visited, t) {
            frontier.push(t);
        }
    }
    let mut depth = 1;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &s in &frontier {
            for &t in &minimal {
                let m = s & t;
                if m == 0 {
                    return Some(depth);
                }
                if mark(&mut visited, m) {
                    next.push(m);
                }
            }
        }
        frontier = next;
    }
    unreachable!("the meet of all true points is zero, so some family reaches it")
}

fn is_affine(f: &BooleanFunction) -> bool {
    Anf::of(f).degree() <= 1
}

/// Constant, or the conjunction of a nonempty set of variables.
fn is_conjunction_or_constant(f: &BooleanFunction) -> bool {
    if f.is_constant().is_some() {
        return true;
    }
    let n = f.arity();
    let s = f.true_indices().fold((1u32 << n) - 1, |acc, t| acc & t);
    s != 0 && f.count_true() == 1u64 << (n - s.count_ones()) && f.true_indices().all(|t| t & s == s)
}

fn base_member(f: &BooleanFunction, base: Base) -> bool {
    match base {
        Base::All => true,
        Base::M => f.is_monotone(),
        Base::S => f.is_self_dual(),
        Base::SM => f.is_self_dual() && f.is_monotone(),
        Base::L => is_affine(f),
        Base::U(r) => r.admits(separation_witness_size(f)),
        Base::MU(r) => f.is_monotone() && r.admits(separation_witness_size(f)),
        Base::Lambda => is_conjunction_or_constant(f),
        Base::Omega1 | Base::Istar | Base::I => {
            let essential = f.essential_variables();
            match essential.len() {
                0 => base != Base::Istar,
                1 => {
                    let p = BooleanFunction::projection(f.arity(), essential[0])
                        .expect("essential variable is in range");
                    *f == p || (base != Base::I && *f == p.outer_negation())
                }
                _ => false,
            }
        }
    }
}

/// Membership of `f` in clone `c`.
pub fn member(f: &BooleanFunction, c: CloneId) -> Result<bool> {
    c.validate()?;
    let (dualize, base, rule) = c.decompose();
    let owned;
    let g = if dualize {
        owned = f.dual();
        &owned
    } else {
        f
    };
    Ok(rule.allows(g.at_zero(), g.at_ones()) && base_member(g, base))
}
