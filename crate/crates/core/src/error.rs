use thiserror::Error;

use crate::geom::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed number {0:?}")]
    Number(String),
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("point lies on a quadrant boundary")]
    QuadrantBoundary,
    #[error("vertex index {0} out of range")]
    VertexIndex(usize),
    #[error("bad edge ({0}, {1}): {2}")]
    Edge(usize, usize, &'static str),
}

/// A graph failed validation; carries the violations found.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidGraph {
    #[error("graph violates general position: {}", .0[0])]
    GeneralPosition(Vec<Violation>),
    #[error("graph is not a plane embedding: {}", .0[0])]
    Planarity(Vec<Violation>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EccError {
    #[error("vertex {vertex} shares its height with vertex {other}")]
    TiedHeight { vertex: usize, other: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Deg2Error {
    #[error("vertex {vertex} has degree {degree}, expected 2")]
    NotDegreeTwo { vertex: usize, degree: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Ecc(#[from] EccError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReconstructError {
    #[error("vertex {0} has degree 2")]
    Degree2Present(usize),
    #[error("witness height {0} meets no column of the cardinal grid")]
    NoColumnMatch(String),
    #[error("witness height {0} meets no row of the cardinal grid")]
    NoRowMatch(String),
    #[error("recovered {found} vertices but the cardinal lines imply {expected}")]
    CountMismatch { expected: usize, found: usize },
    #[error("invalid reconstruction input: {0}")]
    Input(String),
    #[error(transparent)]
    Invalid(#[from] InvalidGraph),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("no admissible witnessing direction for vertex {vertex} after {tries} tries")]
    ExhaustedTries { vertex: usize, tries: usize },
    #[error("integer overflow in arrangement bookkeeping")]
    Overflow,
    #[error(transparent)]
    Invalid(#[from] InvalidGraph),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("gave up after {0} rejected samples")]
    ExhaustedRejects(usize),
    #[error("invalid generator config: {0}")]
    Config(String),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RenderError {
    #[error("render size must be positive, got {0}x{1}")]
    Dimensions(u32, u32),
}

/// Stable machine-readable error codes.
impl InvalidGraph {
    pub fn code(&self) -> &'static str {
        match self {
            InvalidGraph::GeneralPosition(_) => "GENERAL_POSITION",
            InvalidGraph::Planarity(_) => "PLANARITY",
        }
    }
}

impl ParseError {
    pub fn code(&self) -> &'static str {
        "PARSE"
    }
}

impl GeomError {
    pub fn code(&self) -> &'static str {
        "PARSE"
    }
}

impl EccError {
    pub fn code(&self) -> &'static str {
        match self {
            EccError::TiedHeight { .. } => "GENERAL_POSITION",
            EccError::Geom(e) => e.code(),
        }
    }
}

impl Deg2Error {
    pub fn code(&self) -> &'static str {
        match self {
            Deg2Error::NotDegreeTwo { .. } => "PARSE",
            Deg2Error::Geom(e) => e.code(),
            Deg2Error::Ecc(e) => e.code(),
        }
    }
}

impl ReconstructError {
    pub fn code(&self) -> &'static str {
        match self {
            ReconstructError::Degree2Present(_) => "DEG2_PRESENT",
            ReconstructError::CountMismatch { .. } => "COUNT_MISMATCH",
            ReconstructError::NoColumnMatch(_) | ReconstructError::NoRowMatch(_) => "NO_MATCH",
            ReconstructError::Input(_) => "PARSE",
            ReconstructError::Invalid(e) => e.code(),
        }
    }
}

impl PlanError {
    pub fn code(&self) -> &'static str {
        match self {
            PlanError::ExhaustedTries { .. } | PlanError::Overflow => "EXHAUSTED_TRIES",
            PlanError::Invalid(e) => e.code(),
            PlanError::Geom(e) => e.code(),
        }
    }
}

impl GenError {
    pub fn code(&self) -> &'static str {
        match self {
            GenError::ExhaustedRejects(_) => "EXHAUSTED_TRIES",
            GenError::Config(_) | GenError::UnknownFixture(_) => "PARSE",
        }
    }
}

impl RenderError {
    pub fn code(&self) -> &'static str {
        "PARSE"
    }
}
