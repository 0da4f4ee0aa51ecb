//! Executable, stage-bounded computability theory for computably enumerable
//! equivalence relations (ceers).
//!
//! - [`machine`]: a register-machine numbering of partial computable
//!   functions `φ_e` and c.e. sets `W_e`.
//! - [`ceer`]: ceers as monotone stage approximations, their combinators
//!   (cylindrification, uniform join, restriction) and a bounded reduction
//!   checker.
//! - [`transversal`]: principal transversals and majorization evidence.
//! - [`constructions`]: the interval priority construction, the weak-array
//!   construction, a Post-style simple set of words and the transversal
//!   extractor for finitely generated algebras.
//! - [`semigroup`]: the two-generator semigroups `S(R)` and their finite-class
//!   variant over `{a, b}⁺`.

pub mod ceer;
pub mod constructions;
pub mod dsu;
pub mod machine;
pub mod pairing;
pub mod semigroup;
pub mod transversal;
pub mod word;

/// A stage of an approximation; stage 0 is the start.
pub type Stage = u64;

pub use ceer::{build, classes_at, parse_spec, CeerRef, CeerSpec, StagedCeer};
pub use machine::{phi_stage, we_stage, Program};
pub use word::{word_code, word_decode, Word};
