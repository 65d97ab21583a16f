use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// An arithmetic function was evaluated past its declared horizon.
    #[error("function `{name}` evaluated at {requested} but is only defined up to {horizon}")]
    HorizonExceeded {
        name: String,
        requested: u64,
        horizon: u64,
    },

    /// Dirichlet inversion (or anything needing f(1) != 0) on a non-invertible function.
    #[error("function `{name}` has f(1) = 0 and is not Dirichlet invertible")]
    NotInvertible { name: String },

    /// Triangular inversion hit a zero diagonal entry.
    #[error("triangular matrix is singular: zero diagonal entry in row {row}")]
    SingularMatrix { row: usize },

    /// A w evaluation point in {0, 1, -1}, where w^n - 1 or w^n can vanish.
    #[error("invalid w evaluation point {value}: w must not be 0, 1 or -1")]
    InvalidWPoint { value: String },

    /// An out-of-range or malformed argument.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A supplied value table contradicts itself.
    #[error("inconsistent input table at n = {n}: expected {expected}, got {got}")]
    InconsistentTable {
        n: u64,
        expected: String,
        got: String,
    },

    /// Brute-force oracle called past its supported size.
    #[error("oracle argument {argument} = {value} exceeds desk scale (limit {limit})")]
    OracleSize {
        argument: &'static str,
        value: u64,
        limit: u64,
    },

    /// Failure parsing a rational literal or a custom function file.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
