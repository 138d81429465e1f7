//! Deciding which functions a clone can build on top of a fixed tuple.
//!
//! Given m-ary functions `r_1, ..., r_s`, the composites `f(r_1, ..., r_s)`
//! with `f` in a clone `C` are exactly the functions `h` for which the partial
//! map `(r_1(a), ..., r_s(a)) -> h(a)` is well defined and extends to a member
//! of `C`. Every extension criterion below only looks at the points that occur
//! and at the coordinates as subsets of those points ("columns"), so the
//! possibly very long tuples compress into at most `2^m + 2` points.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::{Base, CloneId, Rank};
use crate::error::{Error, Result};
use crate::function::BooleanFunction;

/// Largest inner arity accepted; the point count then stays at most 18.
pub const MAX_DOMAIN_ARITY: u32 = 4;

const UNBOUNDED: u8 = u8::MAX;

/// The image of a tuple of m-ary functions, with the all-zero and all-one
/// points always present (added as virtual points when no input hits them).
#[derive(Debug)]
pub struct Domain {
    m: u32,
    d: usize,
    full: u32,
    real: u32,
    zero: usize,
    ones: usize,
    /// For every real point, the set of input indices mapping to it.
    preimage: Vec<u64>,
    columns: Vec<u32>,
    is_column: Vec<bool>,
    up: Vec<u32>,
    complement: Vec<Option<usize>>,
    covered: Vec<bool>,
    avoid_pair: Vec<u32>,
    cover_pair: Vec<u32>,
    span_basis: Vec<u32>,
    separation: OnceLock<Vec<u8>>,
    hull: OnceLock<Vec<u32>>,
    dual: OnceLock<Box<Domain>>,
}

impl Domain {
    /// Build the domain of the tuple `columns` (all of one arity `m <= 4`).
    pub fn new(columns: &[BooleanFunction]) -> Result<Self> {
        let first = columns.first().ok_or(Error::EmptyGenerators)?;
        let m = first.arity();
        if m > MAX_DOMAIN_ARITY {
            return Err(Error::NotEnumerable { what: "extension domain".into(), arity: m });
        }
        for r in columns {
            if r.arity() != m {
                return Err(Error::ArityMismatch { expected: m, found: r.arity() });
            }
        }
        let inputs = 1usize << m;
        let tables: Vec<u64> = columns.iter().map(|r| r.words()[0]).collect();
        // Group inputs by their image tuple.
        let mut index_of: HashMap<Vec<bool>, usize> = HashMap::new();
        let mut preimage: Vec<u64> = Vec::new();
        let mut image: Vec<Vec<bool>> = Vec::new();
        for a in 0..inputs {
            let key: Vec<bool> = tables.iter().map(|t| (t >> a) & 1 == 1).collect();
            let idx = *index_of.entry(key.clone()).or_insert_with(|| {
                preimage.push(0);
                image.push(key);
                preimage.len() - 1
            });
            preimage[idx] |= 1 << a;
        }
        let real_count = preimage.len();
        let s = tables.len();
        let zero = image.iter().position(|p| p.iter().all(|&b| !b));
        let ones = image.iter().position(|p| p.iter().all(|&b| b));
        let mut d = real_count;
        let zero = zero.unwrap_or_else(|| {
            d += 1;
            d - 1
        });
        let ones = ones.unwrap_or_else(|| {
            d += 1;
            d - 1
        });
        let mut col_masks = vec![0u32; s];
        for (i, p) in image.iter().enumerate() {
            for (c, &bit) in p.iter().enumerate() {
                if bit {
                    col_masks[c] |= 1 << i;
                }
            }
        }
        if ones >= real_count {
            for c in &mut col_masks {
                *c |= 1 << ones;
            }
        }
        let real = (1u32 << real_count) - 1;
        Ok(Self::from_columns(m, d, real, zero, ones, preimage, col_masks))
    }

    fn from_columns(
        m: u32,
        d: usize,
        real: u32,
        zero: usize,
        ones: usize,
        preimage: Vec<u64>,
        mut columns: Vec<u32>,
    ) -> Self {
        columns.sort_unstable();
        columns.dedup();
        let full = (1u32 << d) - 1;
        let size = 1usize << d;
        let mut is_column = vec![false; size];
        for &c in &columns {
            is_column[c as usize] = true;
        }
        // Downward closure: sets contained in some column.
        let mut covered = is_column.clone();
        for j in 0..d {
            let bit = 1usize << j;
            for a in (0..size).rev() {
                if a & bit == 0 && covered[a | bit] {
                    covered[a] = true;
                }
            }
        }
        let mut avoided = vec![false; size];
        for &c in &columns {
            avoided[(full ^ c) as usize] = true;
        }
        for j in 0..d {
            let bit = 1usize << j;
            for a in (0..size).rev() {
                if a & bit == 0 && avoided[a | bit] {
                    avoided[a] = true;
                }
            }
        }
        let mut up = vec![full; d];
        let mut cover_pair = vec![0u32; d];
        let mut avoid_pair = vec![0u32; d];
        for i in 0..d {
            for &c in &columns {
                if c >> i & 1 == 1 {
                    up[i] &= c;
                }
            }
            for j in 0..d {
                let pair = (1usize << i) | (1usize << j);
                if covered[pair] {
                    cover_pair[i] |= 1 << j;
                }
                if avoided[pair] {
                    avoid_pair[i] |= 1 << j;
                }
            }
        }
        let complement = (0..d)
            .map(|i| {
                (0..d).find(|&j| columns.iter().all(|&c| (c >> i & 1) != (c >> j & 1)))
            })
            .collect();
        let mut span_basis: Vec<u32> = Vec::new();
        for v in columns.iter().copied().chain(std::iter::once(full)) {
            let r = reduce(&span_basis, v);
            if r != 0 {
                span_basis.push(r);
                span_basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        Self {
            m,
            d,
            full,
            real,
            zero,
            ones,
            preimage,
            columns,
            is_column,
            up,
            complement,
            covered,
            avoid_pair,
            cover_pair,
            span_basis,
            separation: OnceLock::new(),
            hull: OnceLock::new(),
            dual: OnceLock::new(),
        }
    }

    /// Inner arity.
    pub fn arity(&self) -> u32 {
        self.m
    }

    /// Number of points, virtual ones included.
    pub fn point_count(&self) -> usize {
        self.d
    }

    /// Number of distinct columns.
    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    fn dual(&self) -> &Domain {
        self.dual.get_or_init(|| {
            let columns = self.columns.iter().map(|c| self.full ^ c).collect();
            Box::new(Domain::from_columns(
                self.m,
                self.d,
                self.real,
                self.ones,
                self.zero,
                self.preimage.clone(),
                columns,
            ))
        })
    }

    /// Smallest number of points of `t` not lying in a common column,
    /// `UNBOUNDED` if all of `t` does.
    fn separation(&self) -> &[u8] {
        self.separation.get_or_init(|| {
            let size = 1usize << self.d;
            let mut best = vec![UNBOUNDED; size];
            for t in 1..size {
                let mut b = if self.covered[t] { UNBOUNDED } else { t.count_ones() as u8 };
                if !self.covered[t] {
                    let mut rest = t;
                    while rest != 0 {
                        let j = rest.trailing_zeros();
                        rest &= rest - 1;
                        b = b.min(best[t ^ (1 << j)]);
                    }
                }
                best[t] = b;
            }
            best
        })
    }

    /// Intersection of all columns containing a set (full if there are none).
    fn hull(&self) -> &[u32] {
        self.hull.get_or_init(|| {
            let size = 1usize << self.d;
            let mut hull = vec![self.full; size];
            for &c in &self.columns {
                hull[c as usize] = c;
            }
            for a in (0..size).rev() {
                for j in 0..self.d {
                    let bit = 1usize << j;
                    if a & bit == 0 {
                        hull[a] &= hull[a | bit];
                    }
                }
            }
            hull
        })
    }

    fn monotone_ok(&self, v: u32) -> bool {
        let f = self.full & !v;
        ones_of(v).all(|i| self.up[i] & f == 0)
    }

    fn base_allows(&self, base: Base, v: u32) -> bool {
        let f = self.full & !v;
        match base {
            Base::All => true,
            Base::M => self.monotone_ok(v),
            Base::S => (0..self.d).all(|i| {
                self.complement[i].is_none_or(|j| (v >> i & 1) != (v >> j & 1))
            }),
            Base::SM => {
                ones_of(v).all(|i| self.cover_pair[i] & v == v && self.up[i] & f == 0)
                    && ones_of(f).all(|q| self.avoid_pair[q] & f == f)
            }
            Base::L => reduce(&self.span_basis, v) == 0,
            Base::U(r) => rank_admits(r, self.separation()[v as usize]),
            Base::MU(r) => self.monotone_ok(v) && rank_admits(r, self.separation()[v as usize]),
            Base::Lambda => {
                v == 0 || v == self.full || (self.covered[v as usize] && self.hull()[v as usize] == v)
            }
            Base::Omega1 => {
                v == 0 || v == self.full || self.is_column[v as usize] || self.is_column[f as usize]
            }
            Base::Istar => self.is_column[v as usize] || self.is_column[f as usize],
            Base::I => v == 0 || v == self.full || self.is_column[v as usize],
        }
    }

    /// Whether the values `v` on the real points (bit `i` for point `i`)
    /// extend to a member of `c`.
    pub fn extends(&self, c: CloneId, v: u32) -> bool {
        let (dualize, base, rule) = c.decompose();
        let (dom, v) = if dualize { (self.dual(), self.real & !v) } else { (self, v) };
        let virtual_points = dom.full & !dom.real;
        let mut extra = virtual_points;
        loop {
            let full_v = v | extra;
            let at_zero = full_v >> dom.zero & 1 == 1;
            let at_ones = full_v >> dom.ones & 1 == 1;
            if rule.allows(at_zero, at_ones) && dom.base_allows(base, full_v) {
                return true;
            }
            if extra == 0 {
                return false;
            }
            extra = (extra - 1) & virtual_points;
        }
    }

    /// All `h` with `h = f(r_1, ..., r_s)` for some `f` in `c`, sorted.
    pub fn left_closure(&self, c: CloneId) -> Result<Vec<BooleanFunction>> {
        c.validate()?;
        let real_count = self.real.count_ones();
        let mut out = Vec::new();
        for v in 0u32..(1 << real_count) {
            if self.extends(c, v) {
                let table = ones_of(v).fold(0u64, |acc, i| acc | self.preimage[i]);
                out.push(BooleanFunction::from_small(self.m, table)?);
            }
        }
        out.sort();
        Ok(out)
    }

    /// Whether `h` is a composite of `c` with this tuple.
    pub fn contains(&self, c: CloneId, h: &BooleanFunction) -> Result<bool> {
        c.validate()?;
        if h.arity() != self.m {
            return Err(Error::ArityMismatch { expected: self.m, found: h.arity() });
        }
        let t = h.words()[0];
        let mut v = 0u32;
        for (i, &pre) in self.preimage.iter().enumerate() {
            let hits = t & pre;
            if hits != 0 && hits != pre {
                return Ok(false);
            }
            if hits != 0 {
                v |= 1 << i;
            }
        }
        Ok(self.extends(c, v))
    }
}

fn rank_admits(r: Rank, separation: u8) -> bool {
    r.admits((separation != UNBOUNDED).then_some(u32::from(separation)))
}

fn ones_of(v: u32) -> impl Iterator<Item = usize> {
    let mut rest = v;
    std::iter::from_fn(move || {
        (rest != 0).then(|| {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            i
        })
    })
}

/// Reduce `v` against a basis sorted by decreasing leading bit.
fn reduce(basis: &[u32], mut v: u32) -> u32 {
    for &b in basis {
        let lead = 31 - b.leading_zeros();
        if v >> lead & 1 == 1 {
            v ^= b;
        }
    }
    v
}
