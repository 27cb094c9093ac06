use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid design parameters: {0}")]
    InvalidParameters(String),

    #[error("lambda_{i} = {lambda} * C({v}-{i},{t}-{i}) / C({k}-{i},{t}-{i}) is not an integer")]
    NonIntegerLambda { t: u32, v: u64, k: u64, lambda: u64, i: u32 },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("exhaustive check needs {needed} subsets, budget is {budget}")]
    TooLarge { needed: u128, budget: u128 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime congruent to 3 mod 4 with q >= 7")]
    BadResidueClass(u64),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("shape error at line {line}: expected {expected} entries, found {found}")]
    Shape { line: usize, expected: usize, found: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("design is not symmetric (v={v}, b={b}, r={r}, k={k})")]
    NotSymmetricDesign { v: u64, b: u64, r: u64, k: u64 },

    #[error("degenerate design: {0}")]
    DegenerateDesign(String),

    #[error("requested {requested} marked vertices but the part has {available}")]
    TooMany { requested: usize, available: usize },

    #[error("no {m}-per-part configuration with {d}-regular induced subgraph exists")]
    NotFound { m: usize, d: usize },

    #[error("search budget of {nodes} nodes exhausted")]
    BudgetExceeded { nodes: u64 },

    #[error("lambda = {lambda} sits on the pole of eigenvalue index {index}")]
    PoleAtEigenvalue { lambda: f64, index: usize },

    #[error("no sign change of the reduced equation on ({lo}, {hi})")]
    NoRootInBracket { lo: f64, hi: f64 },

    #[error("marked set is empty")]
    EmptyMarkedSet,

    #[error("vertex {index} is not in 0..{n}")]
    BadIndex { index: usize, n: usize },

    #[error("eigensolver did not converge")]
    ConvergenceFailure,

    #[error("unsupported marked configuration: {0}")]
    UnsupportedConfiguration(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
