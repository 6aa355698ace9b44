use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no convergence: {0}")]
    NonConvergence(String),

    #[error("composition hypothesis violated: Re E2 + Re F1 = {left} + {right} is not > {n}")]
    Hypothesis { left: f64, right: f64, n: i64 },

    #[error("resonance: {0}")]
    Resonance(String),

    #[error("ill-conditioned: {0}")]
    Conditioning(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("mode errors: {}", format_mode_errors(.0))]
    Modes(Vec<(i64, Error)>),
}

fn format_mode_errors(v: &[(i64, Error)]) -> String {
    v.iter()
        .map(|(k, e)| format!("k={k}: {e}"))
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    /// True for errors that signal a genuine pole of the quantity being computed.
    pub fn is_pole(&self) -> bool {
        match self {
            Error::Pole(_) => true,
            Error::Modes(v) => v.iter().any(|(_, e)| e.is_pole()),
            _ => false,
        }
    }

    pub fn is_nonconvergence(&self) -> bool {
        match self {
            Error::NonConvergence(_) => true,
            Error::Modes(v) => v.iter().any(|(_, e)| e.is_nonconvergence()),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
