use thiserror::Error;

/// Failures from the exact arithmetic layer (scalars, polynomials, matrices).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u32, right: u32 },
    #[error("unsupported conductor {0} (supported: 1..={max})", max = crate::scalar::MAX_CONDUCTOR)]
    UnsupportedConductor(u32),
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to}): {from} does not divide {to}")]
    NotEmbeddable { from: u32, to: u32 },
    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("form is not homogeneous")]
    NotHomogeneous,
    #[error("form is identically zero")]
    ZeroForm,
    #[error("form degree must be at least {min}, got {got}")]
    DegreeTooSmall { min: u32, got: u32 },
    #[error("representation has {rep} matrices but the form has {form} variables")]
    ArityMismatch { rep: usize, form: usize },
    #[error("representations differ in shape: {0}")]
    ShapeMismatch(String),
    #[error("representation does not satisfy the linearization identity for this form")]
    VerificationFailed,
    #[error("determinant of the pencil is not a power of the form: {0}")]
    NotPerfectPower(String),
    #[error("nondegeneracy test supports 1..=3 variables, got {0}")]
    UnsupportedArity(usize),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("invalid construction parameters: {0}")]
    InvalidParameters(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("rank r = {r} outside the supported range {min}..={max}")]
    RankOutOfRange { r: i64, min: i64, max: i64 },
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinearizerError {
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error("form must be a ternary cubic (n = 3, d = 3), got n = {n}, d = {d}")]
    NotTernaryCubic { n: usize, d: u32 },
    #[error("form is degenerate (its partial derivatives share a projective zero)")]
    Degenerate,
    #[error("stored residual {stored:e} disagrees with recomputed {recomputed:e}")]
    ResidualMismatch { stored: f64, recomputed: f64 },
    #[error("malformed solution data: {0}")]
    Malformed(String),
}

/// Crate-wide error carrying the originating module in its message.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("algebra: {0}")]
    Algebra(#[from] AlgebraError),
    #[error("clifford: {0}")]
    Clifford(CliffordError),
    #[error("lattice: {0}")]
    Lattice(#[from] LatticeError),
    #[error("linearizer: {0}")]
    Linearizer(LinearizerError),
    #[error("format: {0}")]
    Format(String),
}

impl From<CliffordError> for Error {
    fn from(e: CliffordError) -> Self {
        match e {
            CliffordError::Algebra(a) => Error::Algebra(a),
            other => Error::Clifford(other),
        }
    }
}

impl From<LinearizerError> for Error {
    fn from(e: LinearizerError) -> Self {
        match e {
            LinearizerError::Clifford(c) => c.into(),
            other => Error::Linearizer(other),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
