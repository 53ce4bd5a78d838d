use planecc::{
    Deg2Error, EccError, GenError, GeomError, InvalidGraph, ParseError, PlanError,
    ReconstructError, RenderError,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Invalid(#[from] InvalidGraph),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Ecc(#[from] EccError),
    #[error(transparent)]
    Deg2(#[from] Deg2Error),
    #[error(transparent)]
    Reconstruct(#[from] ReconstructError),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Render(#[from] RenderError),
    #[error("plan verification failed: {0}")]
    Verify(String),
}

impl CliError {
    pub fn io(path: &str, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_string(),
            source,
        }
    }

    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse(e) => e.code(),
            CliError::Io { .. } => "PARSE",
            CliError::Invalid(e) => e.code(),
            CliError::Geom(e) => e.code(),
            CliError::Ecc(e) => e.code(),
            CliError::Deg2(e) => e.code(),
            CliError::Reconstruct(e) => e.code(),
            CliError::Plan(e) => e.code(),
            CliError::Gen(e) => e.code(),
            CliError::Render(e) => e.code(),
            CliError::Verify(_) => "NO_MATCH",
        }
    }
}
