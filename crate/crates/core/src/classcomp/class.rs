//! Function classes truncated at a maximal arity.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{all_functions, BooleanFunction};
use crate::tuple::check_arity;

/// A set of Boolean functions of arities `1..=max_arity`, kept sorted by
/// arity and then by table value.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FunctionClass {
    max_arity: u32,
    parts: Vec<BTreeSet<BooleanFunction>>,
}

impl FunctionClass {
    /// The empty class.
    pub fn new(max_arity: u32) -> Result<Self> {
        check_arity(max_arity)?;
        Ok(Self { max_arity, parts: vec![BTreeSet::new(); max_arity as usize] })
    }

    pub fn from_functions(
        max_arity: u32,
        functions: impl IntoIterator<Item = BooleanFunction>,
    ) -> Result<Self> {
        let mut class = Self::new(max_arity)?;
        for f in functions {
            class.insert(f)?;
        }
        Ok(class)
    }

    /// Every function of arity at most `max_arity <= 4`.
    pub fn full(max_arity: u32) -> Result<Self> {
        let mut class = Self::new(max_arity)?;
        for n in 1..=max_arity {
            class.parts[n as usize - 1] = all_functions(n)?.collect();
        }
        Ok(class)
    }

    /// The class of all functions satisfying `pred`, for `max_arity <= 4`.
    pub fn filtered(max_arity: u32, pred: impl Fn(&BooleanFunction) -> bool) -> Result<Self> {
        let mut class = Self::new(max_arity)?;
        for n in 1..=max_arity {
            class.parts[n as usize - 1] = all_functions(n)?.filter(|f| pred(f)).collect();
        }
        Ok(class)
    }

    /// All projections of arity at most `max_arity`.
    pub fn projections(max_arity: u32) -> Result<Self> {
        let mut class = Self::new(max_arity)?;
        for n in 1..=max_arity {
            for i in 1..=n {
                class.insert(BooleanFunction::projection(n, i)?)?;
            }
        }
        Ok(class)
    }

    pub fn max_arity(&self) -> u32 {
        self.max_arity
    }

    /// Add `f`; returns whether it was new.
    pub fn insert(&mut self, f: BooleanFunction) -> Result<bool> {
        let n = f.arity();
        if n > self.max_arity {
            return Err(Error::ArityOutOfRange { arity: n, cap: self.max_arity });
        }
        Ok(self.parts[n as usize - 1].insert(f))
    }

    pub fn contains(&self, f: &BooleanFunction) -> bool {
        let n = f.arity();
        n <= self.max_arity && self.parts[n as usize - 1].contains(f)
    }

    /// The n-ary part; empty beyond the cap.
    pub fn part(&self, n: u32) -> &BTreeSet<BooleanFunction> {
        static EMPTY: BTreeSet<BooleanFunction> = BTreeSet::new();
        if n == 0 || n > self.max_arity {
            &EMPTY
        } else {
            &self.parts[n as usize - 1]
        }
    }

    pub(crate) fn part_mut(&mut self, n: u32) -> &mut BTreeSet<BooleanFunction> {
        &mut self.parts[n as usize - 1]
    }

    pub fn len(&self) -> usize {
        self.parts.iter().map(BTreeSet::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(BTreeSet::is_empty)
    }

    /// Members in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &BooleanFunction> + '_ {
        self.parts.iter().flatten()
    }

    /// Largest arity with a member.
    pub fn top_arity(&self) -> Option<u32> {
        (1..=self.max_arity).rev().find(|&n| !self.part(n).is_empty())
    }

    fn same_cap(&self, other: &Self) -> Result<()> {
        if self.max_arity != other.max_arity {
            return Err(Error::CapMismatch { left: self.max_arity, right: other.max_arity });
        }
        Ok(())
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_cap(other)?;
        let parts = self.parts.iter().zip(&other.parts).map(|(a, b)| a | b).collect();
        Ok(Self { max_arity: self.max_arity, parts })
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.same_cap(other)?;
        let parts = self.parts.iter().zip(&other.parts).map(|(a, b)| a & b).collect();
        Ok(Self { max_arity: self.max_arity, parts })
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        self.same_cap(other)?;
        Ok(self.parts.iter().zip(&other.parts).all(|(a, b)| a.is_subset(b)))
    }

    /// Keep only arities up to `cap`, or widen the cap with empty parts.
    pub fn with_cap(&self, cap: u32) -> Result<Self> {
        let mut out = Self::new(cap)?;
        for n in 1..=cap.min(self.max_arity) {
            out.parts[n as usize - 1] = self.parts[n as usize - 1].clone();
        }
        Ok(out)
    }

    /// Apply `f` to every member.
    pub fn map(&self, f: impl Fn(&BooleanFunction) -> BooleanFunction) -> Self {
        let parts = self.parts.iter().map(|p| p.iter().map(&f).collect()).collect();
        Self { max_arity: self.max_arity, parts }
    }

    /// Keep the members satisfying `pred`.
    pub fn retain(&self, pred: impl Fn(&BooleanFunction) -> bool) -> Self {
        let parts = self
            .parts
            .iter()
            .map(|p| p.iter().filter(|f| pred(f)).cloned().collect())
            .collect();
        Self { max_arity: self.max_arity, parts }
    }

    /// Parse a class file: one literal per line, `#` starts a comment.
    pub fn parse(text: &str, max_arity: u32) -> Result<Self> {
        let mut class = Self::new(max_arity)?;
        for line in text.lines() {
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            class.insert(content.parse()?)?;
        }
        Ok(class)
    }

    /// Canonical class-file text, one literal per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in self.iter() {
            out.push_str(&f.to_string());
            out.push('\n');
        }
        out
    }

    /// Literals in canonical order.
    pub fn literals(&self) -> Vec<String> {
        self.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Debug for FunctionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionClass")
            .field("max_arity", &self.max_arity)
            .field("members", &self.literals())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_operations() {
        let and = BooleanFunction::named("and").unwrap();
        let or = BooleanFunction::named("or").unwrap();
        let a = FunctionClass::from_functions(2, [and.clone()]).unwrap();
        let b = FunctionClass::from_functions(2, [or.clone()]).unwrap();
        let u = a.union(&b).unwrap();
        assert_eq!(u.len(), 2);
        assert!(a.intersection(&b).unwrap().is_empty());
        assert!(a.is_subset(&u).unwrap());
        assert!(!u.is_subset(&a).unwrap());
        let c = FunctionClass::new(3).unwrap();
        assert!(matches!(a.union(&c), Err(Error::CapMismatch { .. })));
        let mut d = FunctionClass::new(1).unwrap();
        assert!(d.insert(and).is_err());
        assert_eq!(FunctionClass::full(2).unwrap().len(), 20);
        assert_eq!(FunctionClass::projections(3).unwrap().len(), 6);
    }

    #[test]
    fn class_file_round_trip() {
        let text = "# a class\n2:0x8\n\n1:0x1   # negation\n2:0xe\n";
        let class = FunctionClass::parse(text, 2).unwrap();
        assert_eq!(class.to_text(), "1:0x1\n2:0x8\n2:0xE\n");
        assert_eq!(FunctionClass::parse(&class.to_text(), 2).unwrap(), class);
        assert!(FunctionClass::parse("3:0x00", 2).is_err());
        assert!(FunctionClass::parse("junk", 2).is_err());
    }
}
