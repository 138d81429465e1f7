//! Tuples over {0,1} and the arity cap.
//!
//! A tuple `(a_1, ..., a_n)` is packed into an integer with `a_1` as the most
//! significant of the `n` low bits, so the packed word *is* the tuple's index
//! in a truth table.

use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on arities accepted by constructors.
pub const DEFAULT_ARITY_CAP: u32 = 16;

/// Hard ceiling for [`set_arity_cap`]; tables beyond this get unreasonably large.
pub const MAX_ARITY_CAP: u32 = 24;

static ARITY_CAP: AtomicU32 = AtomicU32::new(DEFAULT_ARITY_CAP);

/// Current arity cap.
pub fn arity_cap() -> u32 {
    ARITY_CAP.load(Ordering::Relaxed)
}

/// Change the process-wide arity cap. Values above [`MAX_ARITY_CAP`] are rejected.
pub fn set_arity_cap(cap: u32) -> Result<()> {
    if cap == 0 || cap > MAX_ARITY_CAP {
        return Err(Error::CapTooLarge {
            cap,
            limit: MAX_ARITY_CAP,
            what: "arity cap".into(),
        });
    }
    ARITY_CAP.store(cap, Ordering::Relaxed);
    Ok(())
}

pub(crate) fn check_arity(n: u32) -> Result<()> {
    let cap = arity_cap();
    if n == 0 || n > cap {
        Err(Error::ArityOutOfRange { arity: n, cap })
    } else {
        Ok(())
    }
}

/// An element of {0,1}^n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BitTuple {
    n: u32,
    bits: u32,
}

impl BitTuple {
    /// Build from a packed word. Bits above position `n` must be clear.
    pub fn new(n: u32, bits: u32) -> Result<Self> {
        check_arity(n)?;
        if n < 32 && bits >> n != 0 {
            return Err(Error::IndexOutOfRange { index: bits, arity: n });
        }
        Ok(Self { n, bits })
    }

    pub(crate) fn from_raw(n: u32, bits: u32) -> Self {
        debug_assert!(n >= 1 && (n >= 32 || bits >> n == 0));
        Self { n, bits }
    }

    /// Build from components `a_1, ..., a_n`.
    pub fn from_components(components: &[bool]) -> Result<Self> {
        let n = components.len() as u32;
        check_arity(n)?;
        let bits = components
            .iter()
            .fold(0u32, |acc, &c| (acc << 1) | u32::from(c));
        Ok(Self { n, bits })
    }

    pub fn zeros(n: u32) -> Result<Self> {
        Self::new(n, 0)
    }

    pub fn ones(n: u32) -> Result<Self> {
        check_arity(n)?;
        Ok(Self { n, bits: low_mask(n) })
    }

    /// Characteristic tuple of a set of 1-based positions.
    pub fn char_tuple(n: u32, positions: &[u32]) -> Result<Self> {
        check_arity(n)?;
        let mut bits = 0u32;
        for &i in positions {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, arity: n });
            }
            bits |= 1 << (n - i);
        }
        Ok(Self { n, bits })
    }

    pub fn arity(&self) -> u32 {
        self.n
    }

    /// Position of this tuple in a truth table of arity `n`.
    pub fn index(&self) -> u32 {
        self.bits
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Component `a_i`, 1-based.
    pub fn get(&self, i: u32) -> Result<bool> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, arity: self.n });
        }
        Ok((self.bits >> (self.n - i)) & 1 == 1)
    }

    pub fn components(&self) -> Vec<bool> {
        (1..=self.n)
            .map(|i| (self.bits >> (self.n - i)) & 1 == 1)
            .collect()
    }

    /// Support as sorted 1-based positions.
    pub fn support(&self) -> Vec<u32> {
        (1..=self.n)
            .filter(|&i| (self.bits >> (self.n - i)) & 1 == 1)
            .collect()
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn complement(&self) -> Self {
        Self { n: self.n, bits: !self.bits & low_mask(self.n) }
    }

    /// Componentwise sum mod 2.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        Ok(Self { n: self.n, bits: self.bits ^ other.bits })
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        Ok(Self { n: self.n, bits: self.bits & other.bits })
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.same_arity(other)?;
        Ok(Self { n: self.n, bits: self.bits | other.bits })
    }

    /// Hamming distance.
    pub fn distance(&self, other: &Self) -> Result<u32> {
        self.same_arity(other)?;
        Ok((self.bits ^ other.bits).count_ones())
    }

    /// Componentwise order `a <= b`.
    pub fn le(&self, other: &Self) -> Result<bool> {
        self.same_arity(other)?;
        Ok(self.bits & !other.bits == 0)
    }

    fn same_arity(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ArityMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    /// All tuples of arity `n` in index order.
    pub fn all(n: u32) -> Result<impl Iterator<Item = BitTuple>> {
        check_arity(n)?;
        Ok((0..(1u32 << n)).map(move |bits| BitTuple { n, bits }))
    }
}

impl fmt::Debug for BitTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitTuple({})", self)
    }
}

impl fmt::Display for BitTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.components() {
            f.write_str(if c { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub(crate) fn low_mask(n: u32) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_follows_most_significant_first() {
        assert_eq!(BitTuple::from_components(&[false, false]).unwrap().index(), 0);
        assert_eq!(BitTuple::from_components(&[true, true]).unwrap().index(), 3);
        assert_eq!(BitTuple::from_components(&[true, false]).unwrap().index(), 2);
    }

    #[test]
    fn weight_and_distance() {
        let e12 = BitTuple::char_tuple(7, &[1, 2]).unwrap();
        assert_eq!(e12.weight(), 2);
        assert_eq!(BitTuple::zeros(5).unwrap().weight(), 0);
        assert_eq!(e12.add(&e12.complement()).unwrap().weight(), 7);

        let a = BitTuple::from_components(&[true, false, true]).unwrap();
        let b = BitTuple::from_components(&[false, false, true]).unwrap();
        assert_eq!(a.distance(&b).unwrap(), 1);
        assert_eq!(a.distance(&a).unwrap(), 0);
    }

    #[test]
    fn char_tuple_symmetric_difference() {
        let e12 = BitTuple::char_tuple(3, &[1, 2]).unwrap();
        let e23 = BitTuple::char_tuple(3, &[2, 3]).unwrap();
        assert_eq!(e12.add(&e23).unwrap(), BitTuple::char_tuple(3, &[1, 3]).unwrap());
        assert_eq!(BitTuple::char_tuple(3, &[]).unwrap(), BitTuple::zeros(3).unwrap());
        assert!(BitTuple::char_tuple(3, &[4]).is_err());
        assert!(BitTuple::char_tuple(3, &[0]).is_err());
    }

    #[test]
    fn arity_checks() {
        assert!(BitTuple::new(0, 0).is_err());
        assert!(BitTuple::new(17, 0).is_err());
        assert!(BitTuple::new(2, 4).is_err());
        let a = BitTuple::zeros(2).unwrap();
        let b = BitTuple::zeros(3).unwrap();
        assert!(matches!(a.distance(&b), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn distance_is_weight_of_sum_exhaustive() {
        for n in 1..=4 {
            for a in BitTuple::all(n).unwrap() {
                assert_eq!(a.complement().complement(), a);
                for b in BitTuple::all(n).unwrap() {
                    assert_eq!(a.distance(&b).unwrap(), a.add(&b).unwrap().weight());
                }
            }
        }
    }
}
