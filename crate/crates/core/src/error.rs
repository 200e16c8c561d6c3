use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("undeclared variable `{name}` at offset {offset}")]
    UndeclaredVariable { name: String, offset: usize },

    #[error("negative exponent at offset {offset}")]
    NegativeExponent { offset: usize },

    #[error("ring mismatch: {0} variables vs {1} variables")]
    RingMismatch(usize, usize),

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid Landau-Ginzburg pair: {0}")]
    InvalidLgPair(String),

    #[error("D^2 != W*Id: entry ({row},{col}) of {block} is `{found}`, expected `{expected}`")]
    NotAFactorization { block: &'static str, row: usize, col: usize, found: String, expected: String },

    #[error("sum of products a_i*b_i is `{found}`, expected W = `{expected}`")]
    KoszulSumMismatch { found: String, expected: String },

    #[error(
        "critical set is not finite (Jacobi quotient is infinite-dimensional); \
         use the Koszul cohomology diagnostics for non-isolated critical loci"
    )]
    NonFiniteCriticalSet,

    #[error("the Jacobi algebra is zero (W has no critical points); no trace exists")]
    ZeroAlgebra,

    #[error("degenerate pairing: {0}")]
    DegeneratePairing(String),

    #[error("degree bound must be non-negative, got {0}")]
    NegativeBound(i64),

    #[error("factorizations belong to different Landau-Ginzburg pairs")]
    LgMismatch,

    #[error("morphism objects do not match: {0}")]
    ObjectMismatch(String),

    #[error("morphism is not a cocycle")]
    NotACocycle,

    #[error("class lies outside the computed degree window (degree {0}); raise the degree bound")]
    OutsideWindow(i64),

    #[error("validation error in `{field}`: {message}")]
    Validation { field: String, message: String },

    #[error("report schema version mismatch: {0} vs {1}")]
    SchemaMismatch(String, String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("job file error: {0}")]
    Toml(#[from] toml::de::Error),
}

impl Error {
    pub fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation { field: field.into(), message: message.into() }
    }

    /// Validation and input-format errors, as opposed to hard computation errors.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Validation { .. }
                | Error::Syntax { .. }
                | Error::UndeclaredVariable { .. }
                | Error::NegativeExponent { .. }
                | Error::Toml(_)
                | Error::InvalidLgPair(_)
                | Error::NegativeBound(_)
        )
    }
}
