use thiserror::Error;

/// Everything that can go wrong across the toolkit.
///
/// Variants in the "structural" group never fire on correct arithmetic; they
/// exist so that a broken invariant surfaces as a failed claim instead of a
/// silently wrong report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree {0} is outside 1..=24")]
    DegreeTooLarge(usize),
    #[error("field of size {p}^{degree} does not fit the element encoding")]
    FieldTooLarge { p: u32, degree: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different fields")]
    SpecMismatch,
    #[error("{d} does not divide the ambient degree {degree}")]
    NotASubfieldDegree { d: usize, degree: usize },
    #[error("q = {0} is outside desk scale (q <= 9)")]
    OutOfDeskScale(u64),
    #[error("ambient field of degree {degree} does not split the group equations for q = {q}")]
    AmbientFieldTooSmall { q: u64, degree: usize },
    #[error("element is not in the multiplicative group of F_(q^2)")]
    NotInMultiplicativeGroup,
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error("group action violated: {0}")]
    ActionViolation(String),
    #[error("point count mismatch at level f = {f}: counted {counted}, predicted {predicted}")]
    MismatchAtLevel { f: u32, counted: i64, predicted: i64 },
    #[error("precision {0} is too small")]
    PrecisionTooSmall(usize),
    #[error("precision exhausted at {0} terms")]
    PrecisionExhausted(usize),
    #[error("Swan conductor sum {0} is not an integer")]
    NonIntegralSwan(String),
    #[error("invariant dimension {0} is not a non-negative integer")]
    NonIntegralDimension(String),
    #[error("Wedderburn audit failed: sum {sum} differs from group order {order}")]
    AuditFailure { sum: String, order: u64 },
    #[error("trace/Lefschetz mismatch at element {0}")]
    LefschetzMismatch(usize),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("need 0 < b < m, got m = {m}, b = {b}")]
    OutOfRange { m: i64, b: i64 },
    #[error("continued fraction entry {0} is below 2")]
    InvalidEntry(i64),
    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("self-intersection at vertex {0} is not an integer")]
    NonIntegralSelfIntersection(String),
    #[error("cross-check failed: {0}")]
    CrossCheckFailure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
