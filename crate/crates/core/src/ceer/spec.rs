use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

use super::combinators::{cylindrify, restrict, uniform_join};
use super::leaves::{FromPairs, Leaf, UnidimensionalCe};
use super::CeerRef;
use crate::machine::{CachedProgram, Program};

/// A combinator tree describing a ceer. Program-valued parameters are
/// Gödel numbers in the [`crate::machine`] numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CeerSpec {
    IdOmega,
    IdN(u64),
    Mod(u64),
    Intervals(Vec<u64>),
    Unidimensional(BTreeSet<u64>),
    /// `R_{W_e}`.
    UnidimensionalCe(BigUint),
    /// Equivalence closure of the pairs coded in `W_e`.
    FromPairs(BigUint),
    Cylindrify(Box<CeerSpec>),
    UniformJoin(Box<CeerSpec>, Box<CeerSpec>),
    /// Restriction along the surjection computed by the given program.
    Restrict(Box<CeerSpec>, BigUint),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("malformed spec: {0}")]
    Shape(String),
}

impl CeerSpec {
    pub fn validate(&self) -> Result<(), SpecError> {
        match self {
            CeerSpec::IdN(0) => Err(SpecError::Shape("idn needs n >= 1".into())),
            CeerSpec::Mod(0) => Err(SpecError::Shape("mod needs k >= 1".into())),
            CeerSpec::Intervals(sizes) if sizes.contains(&0) => {
                Err(SpecError::Shape("interval sizes must be positive".into()))
            }
            CeerSpec::Cylindrify(inner) | CeerSpec::Restrict(inner, _) => inner.validate(),
            CeerSpec::UniformJoin(l, r) => {
                l.validate()?;
                r.validate()
            }
            _ => Ok(()),
        }
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            CeerSpec::Cylindrify(inner) | CeerSpec::Restrict(inner, _) => 1 + inner.size(),
            CeerSpec::UniformJoin(l, r) => 1 + l.size() + r.size(),
            _ => 1,
        }
    }
}

/// Canonical text form; [`super::parse_spec`] reads it back.
impl fmt::Display for CeerSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CeerSpec::IdOmega => write!(f, "(id)"),
            CeerSpec::IdN(n) => write!(f, "(idn {n})"),
            CeerSpec::Mod(k) => write!(f, "(mod {k})"),
            CeerSpec::Intervals(sizes) => {
                write!(f, "(intervals")?;
                for s in sizes {
                    write!(f, " {s}")?;
                }
                write!(f, ")")
            }
            CeerSpec::Unidimensional(set) => {
                let items: Vec<String> = set.iter().map(u64::to_string).collect();
                write!(f, "(uni {{{}}})", items.join(","))
            }
            CeerSpec::UnidimensionalCe(e) => write!(f, "(uni-ce {e})"),
            CeerSpec::FromPairs(e) => write!(f, "(pairs {e})"),
            CeerSpec::Cylindrify(inner) => write!(f, "(cyl {inner})"),
            CeerSpec::UniformJoin(l, r) => write!(f, "(join {l} {r})"),
            CeerSpec::Restrict(inner, e) => write!(f, "(restrict {inner} {e})"),
        }
    }
}

pub fn build(spec: &CeerSpec) -> Result<CeerRef, SpecError> {
    spec.validate()?;
    Ok(build_valid(spec))
}

fn build_valid(spec: &CeerSpec) -> CeerRef {
    let program = |e: &BigUint| CachedProgram::new(Program::decode(e));
    match spec {
        CeerSpec::IdOmega => Arc::new(Leaf::IdOmega),
        CeerSpec::IdN(n) => Arc::new(Leaf::IdN(*n)),
        CeerSpec::Mod(k) => Arc::new(Leaf::Mod(*k)),
        CeerSpec::Intervals(sizes) => Arc::new(Leaf::intervals(sizes)),
        CeerSpec::Unidimensional(set) => Arc::new(Leaf::Unidimensional(set.clone())),
        CeerSpec::UnidimensionalCe(e) => Arc::new(UnidimensionalCe::new(program(e))),
        CeerSpec::FromPairs(e) => Arc::new(FromPairs::new(program(e))),
        CeerSpec::Cylindrify(inner) => Arc::new(cylindrify(build_valid(inner))),
        CeerSpec::UniformJoin(l, r) => Arc::new(uniform_join(build_valid(l), build_valid(r))),
        CeerSpec::Restrict(inner, e) => Arc::new(restrict(build_valid(inner), program(e))),
    }
}
