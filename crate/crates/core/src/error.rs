//! Error types shared across the engine.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group of order {order} exceeds the configured bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("generators do not close under the stated degree: {0}")]
    ClosureFailure(String),
    #[error("invalid Cayley table: {0}")]
    InvalidCayleyTable(String),
    #[error("element outside the parent group")]
    ForeignElement,
    #[error("subgroup data is not a subgroup: {0}")]
    NotASubgroup(String),
}

#[derive(Debug, Error)]
pub enum CategoryError {
    #[error("morphism composition mismatch: target of inner is {inner_target} but source of outer is {outer_source}")]
    CompositionMismatch {
        inner_target: usize,
        outer_source: usize,
    },
    #[error("object index {0} is not in the orbit category")]
    NoSuchObject(usize),
    #[error("subgroup is not a member of the family")]
    NotInFamily,
    #[error("family has {count} members, eager materialisation is capped at {max}")]
    TooManyObjects { count: usize, max: usize },
}

#[derive(Debug, Error)]
pub enum ModuleError {
    #[error("variance mismatch: expected a {expected} module")]
    VarianceMismatch { expected: &'static str },
    #[error("modules live over different orbit categories")]
    CategoryMismatch,
    #[error("family of K-subgroups is not contained in the family over G")]
    FamilyNotCompatible,
    #[error("module is not tagged as a finite sum of free modules")]
    NotFreeSum,
    #[error("functoriality violated: {0}")]
    NotAFunctor(String),
    #[error("matrix dimensions inconsistent with module ranks: {0}")]
    ShapeMismatch(String),
}

#[derive(Debug, Error)]
pub enum ResolutionError {
    #[error("family is not semi-full; the standard resolution exists but is not free, refusing derived-functor use")]
    FamilyNotSemiFull,
    #[error("cell budget exceeded: {need} cells requested, budget is {budget}")]
    BudgetExceeded { need: usize, budget: usize },
    #[error("cell stabiliser lies outside the family (dimension {dim}, cell {cell})")]
    StabilizerOutsideFamily { dim: usize, cell: usize },
    #[error("boundary square is nonzero at dimension {dim}, cell {cell}")]
    BoundarySquareNonzero { dim: usize, cell: usize },
    #[error("degree {degree} outside the built truncation {truncation}")]
    DegreeOutOfRange { degree: usize, truncation: usize },
    #[error("contracting-homotopy identity fails at degree {degree}")]
    HomotopyIdentityFailed { degree: usize },
}

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("boundary composition d_{n} . d_{np1} is nonzero", np1 = n + 1)]
    BoundaryMismatch { n: usize },
    #[error("chain map does not commute with boundaries at dimension {0}")]
    NotChainMap(usize),
    #[error("attaching chain {0} is not a 1-cycle")]
    NotACycle(usize),
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("{file}:{line}: {msg}")]
    Syntax {
        file: String,
        line: usize,
        msg: String,
    },
    #[error("io error reading {0}: {1}")]
    Io(String, std::io::Error),
}

/// Top-level error for CLI and high-level drivers.
#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
