use thiserror::Error;

/// Every failure the library can report.
///
/// Variants that name a mathematical check (`NotFaithful`, `DimensionAnomaly`, ...)
/// indicate that a computed object violated a structural property inside the
/// truncation window; variants like `BadBound` are caller mistakes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 251]")]
    NotPrime(u32),
    #[error("t^2 - {u}t - {v} has the root {root} mod {p}")]
    ReduciblePolynomial { p: u32, u: u32, v: u32, root: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("adjoint pair at degree {0} is (0, 0)")]
    ZeroPair(usize),
    #[error("presentation fails the Jacobi check: {0}")]
    NotLie(String),
    #[error("window {window} exceeds the limit {limit} for this operation")]
    WindowTooLarge { window: usize, limit: usize },
    #[error("window {window} too large for brute force over a field of size {field_size}")]
    WindowTooLargeForBruteForce { window: usize, field_size: usize },
    #[error("bad bound {bound}: must lie in [{min}, {max}]")]
    BadBound { bound: usize, min: usize, max: usize },
    #[error("generators are linearly dependent over the extension field")]
    DegenerateGenerators,
    #[error("module component of degree {0} is not generated by the degree-1 action")]
    CoveringFails(usize),
    #[error("endomorphism ring is not commutative")]
    NotCommutative,
    #[error("endomorphism ring is not a field: {0}")]
    NotAField(String),
    #[error("degree {degree} outside the window [{lo}, {hi}]")]
    OutOfWindow { degree: usize, lo: usize, hi: usize },
    #[error("window {0} too small to decide the ideal structure")]
    WindowTooSmall(usize),
    #[error("component of degree {0} is not stable under the endomorphism field")]
    NotEStable(usize),
    #[error("representation is not faithful in degree {0}")]
    NotFaithful(usize),
    #[error("algebra is not metabelian within the window")]
    NotMetabelian,
    #[error("reconstructed component of degree {degree} has dimension {dim}, expected {expected}")]
    DimensionAnomaly {
        degree: usize,
        dim: usize,
        expected: usize,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
