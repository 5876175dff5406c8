use thiserror::Error;

use crate::circle::CircleCertificate;
use crate::loops::LoopViolation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows} rows, {cols} columns)")]
    NotSquare { rows: usize, cols: usize },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("expected a polynomial, found negative exponent {0}")]
    NotPolynomial(i64),
    #[error("polynomial vanishes on the unit circle ({0})")]
    RootOnCircle(CircleCertificate),
    #[error("invalid polynomial loop: {}", fmt_violations(.0))]
    InvalidLoop(Vec<LoopViolation>),
    #[error("constant matrix is not unitary")]
    NotUnitary,
    #[error("constant matrix is not special unitary (det = {0})")]
    NotSpecialUnitary(String),
    #[error("vector leaves the window z^-{r}K+ / z^{r}K+ (exponent {exp})")]
    OutsideWindow { r: usize, exp: i64 },
    #[error("span is not z-stable")]
    NotZStable,
    #[error("index-0 check failed: span has dimension {dim}, expected {expected}")]
    IndexNonzero { dim: usize, expected: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("truncation depth {depth} is below the degree bound {bound}")]
    TruncationTooSmall { depth: usize, bound: usize },
    #[error("generators do not span a bounded lattice: {0}")]
    Unbounded(String),
    #[error("matrix is not invertible on |z| ≥ 1: {0}")]
    NotInvertible(String),
    #[error("no exact representative: {0}")]
    Representability(String),
    #[error("window of {slots} slots exceeds the cap of {cap}")]
    WindowTooLarge { slots: usize, cap: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("element is not Weyl invariant")]
    NotWeylInvariant,
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("precision unattainable: {0}")]
    Precision(String),
    #[error("parse error: {0}")]
    Parse(String),
}

fn fmt_violations(v: &[LoopViolation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
