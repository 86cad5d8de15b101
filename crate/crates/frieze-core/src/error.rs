use thiserror::Error;

use crate::surfaces::{PuncturedArc, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FriezeError {
    #[error("invalid triangulation: {}", join(.0))]
    InvalidTriangulation(Vec<Violation>),
    #[error("arc {0} is not in the triangulation")]
    NotInTriangulation(String),
    #[error("{0} is the radius of a self-folded triangle and cannot be flipped")]
    SelfFoldedRadius(PuncturedArc),
    #[error("{0} is not a radius")]
    NotARadius(PuncturedArc),
    #[error("not a quiddity sequence: {0}")]
    NotAQuiddity(String),
    #[error("({0}, {1}) is not an arc of the {2}-gon")]
    NotAnArc(i64, i64, usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("non-integral unglue step at column {column}: {numerator} / {denominator}")]
    NonIntegralStep {
        column: usize,
        numerator: String,
        denominator: String,
    },
    #[error("symmetry violation: {0}")]
    SymmetryViolation(String),
    #[error("{0} is the cut arc")]
    ArcIsCutArc(PuncturedArc),
    #[error("region mismatch: {0}")]
    RegionMismatch(String),
    #[error("no radius other than {0} to cut along")]
    NoAlternateCut(PuncturedArc),
    #[error("size {size} exceeds the enumeration bound {bound}")]
    SizeTooLarge { size: usize, bound: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, FriezeError>;
