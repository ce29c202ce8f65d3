use thiserror::Error;

use crate::ring::Ring;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no simplices given")]
    EmptyComplex,
    #[error("mixed dimension: simplex {index} has {found} vertices, expected {expected}")]
    MixedDimension { index: usize, expected: usize, found: usize },
    #[error("degenerate simplex {index}: vertex {vertex} repeated")]
    DegenerateSimplex { index: usize, vertex: usize },
    #[error("degree {degree} out of range (maximum {max})")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: Ring, found: Ring },
    #[error("vector length {found} does not match the {expected} simplices of degree {degree}")]
    LengthMismatch { degree: usize, expected: usize, found: usize },
    #[error("complex is not orientable; integer coefficients need an orientation")]
    NotOrientable,
    #[error("complex is not a connected closed pseudomanifold")]
    NotClosed,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("complex has dimension {0}, expected a surface")]
    NotASurface(usize),
    #[error("complex has dimension {found}, expected {expected}")]
    WrongDimension { expected: usize, found: usize },
    #[error("level value {0} is not a regular value")]
    NotRegularValue(String),
    #[error("normal arcs disagree on face {face}")]
    FaceMatchingFailure { face: usize },
    #[error("unknown complex name {0:?}")]
    UnknownName(String),
    #[error("data file missing: {0}")]
    FileMissing(String),
    #[error("checksum mismatch for {name}: expected {expected}, found {found}")]
    ChecksumMismatch { name: String, expected: String, found: String },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("expected an exact rational p/q, found '{0}'")]
    InvalidRational(String),
    #[error("vertex {0} does not occur in the complex")]
    UnknownVertex(usize),
    #[error("{0} is not an edge of the complex")]
    UnknownEdge(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
