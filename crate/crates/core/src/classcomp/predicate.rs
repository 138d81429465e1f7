//! Function classes given by a predicate, realized arity by arity.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::FunctionClass;
use crate::error::{Error, Result};
use crate::function::BooleanFunction;

/// Largest cap at which predicate classes are materialized.
pub const PREDICATE_CAP_LIMIT: u32 = 4;

/// Named classes defined by conditions on a function's values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Predicate {
    /// `f(0) <= f(1)`.
    Eiio,
    /// `f(0) >= f(1)`.
    Eioi,
    /// `f(0) != f(1)`.
    Neq,
    /// `Neq` together with the functions with `f(0) = f(1) = 1`.
    Eioo,
    /// `Neq` together with the functions with `f(0) = f(1) = 0`.
    Eiii,
    /// Prescribed values at the all-zero and all-one tuples; `None` is free.
    Omega(Option<bool>, Option<bool>),
    /// Reflexive functions, `f(not x) = f(x)`.
    Refl,
    /// Majorants of self-dual functions.
    Smaj,
    /// Minorants of self-dual functions.
    Smin,
    /// Constant functions with the given values allowed.
    Vak { zero: bool, one: bool },
}

impl Predicate {
    /// Evaluate the predicate on a single function.
    pub fn holds(&self, f: &BooleanFunction) -> bool {
        let (a, b) = (f.at_zero(), f.at_ones());
        match *self {
            Predicate::Eiio => a <= b,
            Predicate::Eioi => a >= b,
            Predicate::Neq => a != b,
            Predicate::Eioo => a != b || (a && b),
            Predicate::Eiii => a != b || (!a && !b),
            Predicate::Omega(x, y) => x.is_none_or(|x| x == a) && y.is_none_or(|y| y == b),
            Predicate::Refl => f.is_reflexive(),
            // f lies above a self-dual function exactly when f(x) or f(not x)
            // holds everywhere, and below one when they never hold together.
            Predicate::Smaj => f.join(&f.inner_negation()).map(|g| g.is_constant() == Some(true)).unwrap_or(false),
            Predicate::Smin => f.meet(&f.inner_negation()).map(|g| g.is_constant() == Some(false)).unwrap_or(false),
            Predicate::Vak { zero, one } => match f.is_constant() {
                Some(false) => zero,
                Some(true) => one,
                None => false,
            },
        }
    }
}

fn bit(c: char) -> Option<Option<bool>> {
    match c {
        '0' => Some(Some(false)),
        '1' => Some(Some(true)),
        'x' | 'X' | '*' => Some(None),
        _ => None,
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = |v: Option<bool>| match v {
            Some(false) => '0',
            Some(true) => '1',
            None => 'x',
        };
        match self {
            Predicate::Eiio => f.write_str("Eiio"),
            Predicate::Eioi => f.write_str("Eioi"),
            Predicate::Neq => f.write_str("Neq"),
            Predicate::Eioo => f.write_str("Eioo"),
            Predicate::Eiii => f.write_str("Eiii"),
            Predicate::Omega(a, b) => write!(f, "Omega{}{}", sym(*a), sym(*b)),
            Predicate::Refl => f.write_str("Refl"),
            Predicate::Smaj => f.write_str("Smaj"),
            Predicate::Smin => f.write_str("Smin"),
            Predicate::Vak { zero, one } => {
                f.write_str("Vak")?;
                if *zero {
                    f.write_str("0")?;
                }
                if *one {
                    f.write_str("1")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownSymbol(s.to_string());
        let lower = s.trim().to_ascii_lowercase();
        let p = match lower.as_str() {
            "eiio" => Predicate::Eiio,
            "eioi" => Predicate::Eioi,
            "neq" => Predicate::Neq,
            "eioo" => Predicate::Eioo,
            "eiii" => Predicate::Eiii,
            "refl" => Predicate::Refl,
            "smaj" => Predicate::Smaj,
            "smin" => Predicate::Smin,
            "vak" => Predicate::Vak { zero: false, one: false },
            "vak0" => Predicate::Vak { zero: true, one: false },
            "vak1" => Predicate::Vak { zero: false, one: true },
            "vak01" => Predicate::Vak { zero: true, one: true },
            other => {
                let rest = other.strip_prefix("omega").ok_or_else(unknown)?;
                let chars: Vec<char> = rest.chars().collect();
                if chars.len() != 2 {
                    return Err(unknown());
                }
                Predicate::Omega(bit(chars[0]).ok_or_else(unknown)?, bit(chars[1]).ok_or_else(unknown)?)
            }
        };
        Ok(p)
    }
}

impl Serialize for Predicate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Predicate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The class of functions of arity at most `cap` satisfying `p`.
pub fn predicate_class(p: Predicate, cap: u32) -> Result<FunctionClass> {
    if cap > PREDICATE_CAP_LIMIT {
        return Err(Error::CapTooLarge {
            cap,
            limit: PREDICATE_CAP_LIMIT,
            what: format!("predicate class {p}"),
        });
    }
    FunctionClass::filtered(cap, |f| p.holds(f))
}
