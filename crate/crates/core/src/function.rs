//! Boolean functions stored as packed truth tables.
//!
//! Bit `i` of the table (counting from the least significant bit of word 0)
//! is the value at the tuple whose packed index is `i`. Literals are written
//! `n:0xHEX`, the table read as one big-endian hexadecimal integer padded to
//! `max(1, 2^n / 4)` digits.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
use crate::tuple::{check_arity, BitTuple};

pub(crate) type Words = SmallVec<[u64; 1]>;

/// Number of 64-bit words backing a table of arity `n`.
pub(crate) fn word_count(n: u32) -> usize {
    if n <= 6 {
        1
    } else {
        1usize << (n - 6)
    }
}

/// Mask of the valid bits in a single-word table (arity <= 6).
#[inline]
pub fn small_mask(n: u32) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

/// Truth tables of the projections for arity <= 6; `PROJ_WORDS[j]` is the
/// table of the variable sitting at bit `j` of the index.
const PROJ_WORDS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Table of the `i`-th `n`-ary projection (1-based) for arity <= 6.
#[inline]
pub fn small_projection(n: u32, i: u32) -> u64 {
    PROJ_WORDS[(n - i) as usize] & small_mask(n)
}

/// Composition on single-word tables: `f(g_1, ..., g_k)` where `f` has arity
/// `k = gs.len()` and every `g` has arity `m <= 6`.
#[inline]
pub fn compose_small(f: &[u64], gs: &[u64], m: u32) -> u64 {
    let k = gs.len() as u32;
    let mut out = 0u64;
    for a in 0..(1u32 << m) {
        let mut idx = 0usize;
        for g in gs {
            idx = (idx << 1) | ((g >> a) & 1) as usize;
        }
        debug_assert!(idx < (1usize << k));
        if (f[idx >> 6] >> (idx & 63)) & 1 == 1 {
            out |= 1 << a;
        }
    }
    out
}

/// A Boolean function `{0,1}^n -> {0,1}` with `n >= 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    arity: u32,
    words: Words,
}

impl BooleanFunction {
    /// Constant-zero function.
    pub fn zero(n: u32) -> Result<Self> {
        check_arity(n)?;
        Ok(Self { arity: n, words: smallvec![0; word_count(n)] })
    }

    /// Build from a predicate on table indices.
    pub fn from_index_fn(n: u32, f: impl Fn(u32) -> bool) -> Result<Self> {
        let mut out = Self::zero(n)?;
        for idx in 0..(1u32 << n) {
            if f(idx) {
                out.set_unchecked(idx, true);
            }
        }
        Ok(out)
    }

    /// Build from a predicate on tuples.
    pub fn from_tuple_fn(n: u32, f: impl Fn(&BitTuple) -> bool) -> Result<Self> {
        Self::from_index_fn(n, |idx| f(&BitTuple::from_raw(n, idx)))
    }

    /// Single-word constructor for arity <= 6. Bits above `2^n` must be clear.
    pub fn from_small(n: u32, table: u64) -> Result<Self> {
        check_arity(n)?;
        if n > 6 {
            return Err(Error::InvalidParameter(format!(
                "single-word tables only exist up to arity 6, got {n}"
            )));
        }
        if table & !small_mask(n) != 0 {
            return Err(Error::BadLiteral(format!("{n}:{table:#x}")));
        }
        Ok(Self { arity: n, words: smallvec![table] })
    }

    pub(crate) fn from_small_unchecked(n: u32, table: u64) -> Self {
        debug_assert!(n <= 6 && table & !small_mask(n) == 0);
        Self { arity: n, words: smallvec![table] }
    }

    /// Build from little-endian table words.
    pub fn from_words(n: u32, words: &[u64]) -> Result<Self> {
        check_arity(n)?;
        if words.len() != word_count(n) || (n < 6 && words[0] & !small_mask(n) != 0) {
            return Err(Error::InvalidParameter(format!(
                "table words do not match arity {n}"
            )));
        }
        Ok(Self { arity: n, words: SmallVec::from_slice(words) })
    }

    pub fn constant(n: u32, value: bool) -> Result<Self> {
        let mut f = Self::zero(n)?;
        if value {
            f = f.outer_negation();
        }
        Ok(f)
    }

    /// The `i`-th `n`-ary projection, 1-based.
    pub fn projection(n: u32, i: u32) -> Result<Self> {
        check_arity(n)?;
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { index: i, arity: n });
        }
        let shift = n - i;
        Self::from_index_fn(n, |idx| (idx >> shift) & 1 == 1)
    }

    /// The `i`-th `n`-ary negated projection.
    pub fn negated_projection(n: u32, i: u32) -> Result<Self> {
        Ok(Self::projection(n, i)?.outer_negation())
    }

    /// Functions from the table of well-known functions: `and`, `or`, `xor`,
    /// `not`, `id`, `const0`, `const1`.
    pub fn named(symbol: &str) -> Result<Self> {
        match symbol.to_ascii_lowercase().as_str() {
            "and" => Self::from_small(2, 0x8),
            "or" => Self::from_small(2, 0xE),
            "xor" => Self::from_small(2, 0x6),
            "not" => Self::from_small(1, 0x1),
            "id" => Self::from_small(1, 0x2),
            "const0" | "0" => Self::from_small(1, 0x0),
            "const1" | "1" => Self::from_small(1, 0x3),
            _ => Err(Error::UnknownSymbol(symbol.to_string())),
        }
    }

    /// True exactly on tuples of weight 1, 2 or `n`.
    pub fn beta(n: u32) -> Result<Self> {
        Self::from_index_fn(n, |idx| {
            let w = idx.count_ones();
            w == 1 || w == 2 || w == n
        })
    }

    /// False exactly at the zero tuple.
    pub fn vee_n(n: u32) -> Result<Self> {
        Self::from_index_fn(n, |idx| idx != 0)
    }

    /// False exactly at `a`.
    pub fn single_false_point(a: &BitTuple) -> Result<Self> {
        let target = a.index();
        Self::from_index_fn(a.arity(), |idx| idx != target)
    }

    /// True exactly on tuples of weight at least `t`.
    pub fn threshold(n: u32, t: u32) -> Result<Self> {
        Self::from_index_fn(n, |idx| idx.count_ones() >= t)
    }

    /// Ternary majority.
    pub fn majority() -> Self {
        Self::from_small_unchecked(3, 0xE8)
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The table as one word, for arity <= 6.
    pub fn small_table(&self) -> Option<u64> {
        (self.arity <= 6).then(|| self.words[0])
    }

    #[inline]
    pub fn eval_index(&self, idx: u32) -> bool {
        debug_assert!(idx < (1u32 << self.arity));
        (self.words[(idx >> 6) as usize] >> (idx & 63)) & 1 == 1
    }

    pub fn eval(&self, a: &BitTuple) -> Result<bool> {
        if a.arity() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: a.arity() });
        }
        Ok(self.eval_index(a.index()))
    }

    fn set_unchecked(&mut self, idx: u32, value: bool) {
        let w = &mut self.words[(idx >> 6) as usize];
        if value {
            *w |= 1 << (idx & 63);
        } else {
            *w &= !(1 << (idx & 63));
        }
    }

    /// Number of true points.
    pub fn count_true(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Indices of the true points in increasing order.
    pub fn true_indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let b = rest.trailing_zeros();
                    rest &= rest - 1;
                    Some((wi as u32) * 64 + b)
                }
            })
        })
    }

    /// Indices of the false points in increasing order.
    pub fn false_indices(&self) -> impl Iterator<Item = u32> + '_ {
        (0..(1u32 << self.arity)).filter(move |&i| !self.eval_index(i))
    }

    pub fn true_points(&self) -> Vec<BitTuple> {
        self.true_indices().map(|i| BitTuple::from_raw(self.arity, i)).collect()
    }

    pub fn is_constant(&self) -> Option<bool> {
        let c = self.count_true();
        if c == 0 {
            Some(false)
        } else if c == 1u64 << self.arity {
            Some(true)
        } else {
            None
        }
    }

    fn check_same_arity(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Result<Self> {
        self.check_same_arity(other)?;
        let words = self.words.iter().zip(&other.words).map(|(a, b)| op(*a, *b)).collect();
        let mut out = Self { arity: self.arity, words };
        out.clear_padding();
        Ok(out)
    }

    fn clear_padding(&mut self) {
        if self.arity < 6 {
            self.words[0] &= small_mask(self.arity);
        }
    }

    /// Pointwise conjunction.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a & b)
    }

    /// Pointwise disjunction.
    pub fn join(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a | b)
    }

    /// Pointwise sum mod 2.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a ^ b)
    }

    /// `f(g_1, ..., g_n)`.
    pub fn compose(&self, args: &[BooleanFunction]) -> Result<Self> {
        if args.len() != self.arity as usize {
            return Err(Error::WrongArgumentCount {
                expected: self.arity as usize,
                found: args.len(),
            });
        }
        let m = args[0].arity;
        for g in args {
            if g.arity != m {
                return Err(Error::ArityMismatch { expected: m, found: g.arity });
            }
        }
        Ok(self.compose_unchecked(args))
    }

    pub(crate) fn compose_unchecked(&self, args: &[BooleanFunction]) -> Self {
        let m = args[0].arity;
        if m <= 6 {
            let gs: SmallVec<[u64; 16]> = args.iter().map(|g| g.words[0]).collect();
            return Self::from_small_unchecked(m, compose_small(&self.words, &gs, m));
        }
        // Pick the cheaper of pointwise evaluation and a sum of minterms.
        let n = self.arity as u64;
        let pointwise = (1u64 << m) * n;
        let minterms = self.count_true() * n * word_count(m) as u64;
        let mut out = Self { arity: m, words: smallvec![0; word_count(m)] };
        if minterms < pointwise {
            let mut term: Words = smallvec![0; word_count(m)];
            for t in self.true_indices() {
                term.iter_mut().for_each(|w| *w = u64::MAX);
                for (i, g) in args.iter().enumerate() {
                    let bit = (t >> (self.arity as usize - 1 - i)) & 1 == 1;
                    for (tw, gw) in term.iter_mut().zip(&g.words) {
                        *tw &= if bit { *gw } else { !*gw };
                    }
                }
                for (ow, tw) in out.words.iter_mut().zip(&term) {
                    *ow |= *tw;
                }
            }
        } else {
            for a in 0..(1u32 << m) {
                let idx = args
                    .iter()
                    .fold(0u32, |acc, g| (acc << 1) | u32::from(g.eval_index(a)));
                if self.eval_index(idx) {
                    out.set_unchecked(a, true);
                }
            }
        }
        out
    }

    /// `f(x_{map[0]}, ..., x_{map[n-1]})` as a function of arity `m`;
    /// entries of `map` are 1-based variable positions in `1..=m`.
    pub fn minor(&self, map: &[u32], m: u32) -> Result<Self> {
        if map.len() != self.arity as usize {
            return Err(Error::WrongArgumentCount {
                expected: self.arity as usize,
                found: map.len(),
            });
        }
        let projs = map
            .iter()
            .map(|&j| Self::projection(m, j))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.compose_unchecked(&projs))
    }

    /// The negation `not f`.
    pub fn outer_negation(&self) -> Self {
        let mut out = Self {
            arity: self.arity,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.clear_padding();
        out
    }

    /// The inner negation `f(not x)`.
    pub fn inner_negation(&self) -> Self {
        if self.arity <= 6 {
            let bits = 1u32 << self.arity;
            let rev = self.words[0].reverse_bits() >> (64 - bits);
            return Self::from_small_unchecked(self.arity, rev);
        }
        Self {
            arity: self.arity,
            words: self.words.iter().rev().map(|w| w.reverse_bits()).collect(),
        }
    }

    /// The dual `not f(not x)`.
    pub fn dual(&self) -> Self {
        self.inner_negation().outer_negation()
    }

    /// `f <= g` pointwise.
    pub fn minorant_le(&self, other: &Self) -> Result<bool> {
        self.check_same_arity(other)?;
        Ok(self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0))
    }

    pub fn is_self_dual(&self) -> bool {
        *self == self.dual()
    }

    pub fn is_reflexive(&self) -> bool {
        *self == self.inner_negation()
    }

    /// True if `f(a) <= f(b)` whenever `a <= b`.
    pub fn is_monotone(&self) -> bool {
        let n = self.arity;
        if n <= 6 {
            let t = self.words[0];
            return (0..n).all(|j| {
                let hi = PROJ_WORDS[j as usize] & small_mask(n);
                let shift = 1u32 << j;
                // f at points with bit j clear, aligned onto the points with it set
                let low_vals = (t & !hi) << shift;
                low_vals & !t & hi == 0
            });
        }
        (0..(1u32 << n)).all(|a| {
            !self.eval_index(a) || (0..n).all(|j| self.eval_index(a | (1 << j)))
        })
    }

    /// True if the function depends on variable `i` (1-based).
    pub fn depends_on(&self, i: u32) -> bool {
        let bit = 1u32 << (self.arity - i);
        (0..(1u32 << self.arity))
            .filter(|a| a & bit == 0)
            .any(|a| self.eval_index(a) != self.eval_index(a | bit))
    }

    /// Variables the function depends on, 1-based.
    pub fn essential_variables(&self) -> Vec<u32> {
        (1..=self.arity).filter(|&i| self.depends_on(i)).collect()
    }

    /// Value at the all-zero tuple.
    pub fn at_zero(&self) -> bool {
        self.eval_index(0)
    }

    /// Value at the all-one tuple.
    pub fn at_ones(&self) -> bool {
        self.eval_index((1u32 << self.arity) - 1)
    }

    /// Canonical literal `n:0xHEX`.
    pub fn to_literal(&self) -> String {
        self.to_string()
    }
}

impl Ord for BooleanFunction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arity
            .cmp(&other.arity)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for BooleanFunction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn hex_digits(n: u32) -> usize {
    ((1usize << n) / 4).max(1)
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:0x", self.arity)?;
        let digits = hex_digits(self.arity);
        if self.arity <= 6 {
            write!(f, "{:0width$X}", self.words[0], width = digits)
        } else {
            for w in self.words.iter().rev() {
                write!(f, "{:016X}", w)?;
            }
            Ok(())
        }
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for BooleanFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadLiteral(s.to_string());
        let (n, hex) = s.trim().split_once(':').ok_or_else(bad)?;
        let n: u32 = n.trim().parse().map_err(|_| bad())?;
        check_arity(n)?;
        let hex = hex
            .trim()
            .strip_prefix("0x")
            .or_else(|| hex.trim().strip_prefix("0X"))
            .ok_or_else(bad)?;
        if hex.is_empty() || !hex.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(bad());
        }
        let mut words: Words = smallvec![0; word_count(n)];
        let table_bits = 1usize << n;
        for (pos, c) in hex.chars().rev().enumerate() {
            let nibble = c.to_digit(16).expect("checked hex digit") as u64;
            if nibble == 0 {
                continue;
            }
            let bit = pos * 4;
            if bit >= table_bits || (nibble >> (table_bits - bit).min(4)) != 0 {
                return Err(bad());
            }
            words[bit / 64] |= nibble << (bit % 64);
        }
        Ok(Self { arity: n, words })
    }
}

impl Serialize for BooleanFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BooleanFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every function of arity `n <= 4`, in table order.
pub fn all_functions(n: u32) -> Result<impl Iterator<Item = BooleanFunction>> {
    check_arity(n)?;
    if n > 4 {
        return Err(Error::NotEnumerable { what: "all functions".into(), arity: n });
    }
    let count = 1u64 << (1u32 << n);
    Ok((0..count).map(move |t| BooleanFunction::from_small_unchecked(n, t)))
}
