use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `(P⁻|X)` (or the analogous pairing) vanishes within tolerance.
    #[error("degenerate pairing: |{what}| = {value:e} is below tolerance")]
    DegeneratePairing { what: &'static str, value: f64 },

    /// The element lies on a lower-dimensional cell where the requested
    /// factorization does not exist.
    #[error("degenerate cell: {what} = {value:e}")]
    DegenerateCell { what: &'static str, value: f64 },

    #[error("shape violation: {0}")]
    ShapeViolation(String),

    #[error("not an automorphism of the Jordan algebra (residual {residual:e})")]
    NotAutomorphism { residual: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("factor check failed: {0}")]
    FactorCheck(String),

    #[error("rank deficiency: expected {expected}, found {found}")]
    RankDeficient { expected: usize, found: usize },

    #[error("solve failed to converge: {0}")]
    Convergence(String),

    #[error("Gamma pole at argument {0}")]
    Pole(String),

    #[error("quadrature did not converge: error estimate {estimate:e} exceeds {target:e}")]
    NonConvergent { estimate: f64, target: f64 },

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { pos, msg: msg.into() }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Stable machine-readable name used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegeneratePairing { .. } => "DegeneratePairing",
            Error::DegenerateCell { .. } => "DegenerateCell",
            Error::ShapeViolation(_) => "ShapeViolation",
            Error::NotAutomorphism { .. } => "NotAutomorphism",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::FactorCheck(_) => "FactorCheck",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::Convergence(_) => "Convergence",
            Error::Pole(_) => "PoleError",
            Error::NonConvergent { .. } => "NonConvergent",
            Error::Syntax { .. } => "SyntaxError",
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Error::DegenerateCell { .. } | Error::DegeneratePairing { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
