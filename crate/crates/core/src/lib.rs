//! Boolean functions, Post's lattice of clones, and clonoids of Boolean functions.

pub mod anf;
pub mod classcomp;
pub mod error;
pub mod function;
pub mod gf2geom;
pub mod postlattice;
pub mod tuple;
pub mod verify;

pub use anf::{anf, degree, Anf};
pub use classcomp::{FunctionClass, Predicate};
pub use error::{Error, Result};
pub use function::BooleanFunction;
pub use gf2geom::{AffineMap, Gf2Subset, Gf2Subspace};
pub use postlattice::{CardinalityVerdict, CloneId, Rank};
pub use verify::{Mode, Verdict, VerificationReport};
pub use tuple::{arity_cap, set_arity_cap, BitTuple, DEFAULT_ARITY_CAP, MAX_ARITY_CAP};
