use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names double as the machine-readable error names printed by the
/// command-line tool, so they are kept stable.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid precision context: {0}")]
    InvalidContext(String),
    #[error("operands belong to different precision contexts")]
    ContextMismatch,
    #[error("element is not a unit")]
    NotUnit,
    #[error("element is not a square in the residue field")]
    NoSquareRoot,
    #[error("supplied branch does not square to the element mod p")]
    BadBranch,
    #[error("element is not divisible by p^{0}")]
    NonIntegral(u32),
    #[error("integration needs a division by p^{valuation} at t^{index} that the coefficient does not allow")]
    NonIntegralIntegral { index: usize, valuation: u32 },
    #[error("element is not invertible modulo the polynomial")]
    NotInvertible,
    #[error("initial approximation does not satisfy the relation at t^0")]
    BadInit,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("polynomial must be monic of degree {0}")]
    NotMonic(usize),
    #[error("initial polynomial is not separable over the residue field")]
    NotSeparable,
    #[error("initial data do not satisfy f = V^2 mod U")]
    BadInitialData,
    #[error("initial divisor contains a Weierstrass point")]
    WeierstrassImage,
    #[error("working precision {have} is below the {need} digits needed")]
    InsufficientPrecision { have: u32, need: u32 },
    #[error("{have} series terms given, {need} needed")]
    TooFewTerms { have: usize, need: usize },
    #[error("curve reduction is singular")]
    SingularReduction,
    #[error("curve model must have odd degree 2g+1 >= 3, got degree {0}")]
    WrongModel(usize),
    #[error("expansion point is a Weierstrass point")]
    WeierstrassPoint,
    #[error("point does not lie on the curve")]
    NotOnCurve,
    #[error("x-coordinates collide modulo p")]
    CollidingRoots,
    #[error("coefficients do not descend to the base ring")]
    NotRational,
    #[error("divisor arithmetic hit a degenerate configuration")]
    DegenerateDivisor,
    #[error("no Padé approximant with unit denominator constant term")]
    NoSolution,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("coordinate-wise system matrix is singular modulo p")]
    SingularH,
    #[error("{0}")]
    Schema(String),
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidContext(_) => "InvalidContext",
            Error::ContextMismatch => "ContextMismatch",
            Error::NotUnit => "NotUnit",
            Error::NoSquareRoot => "NoSquareRoot",
            Error::BadBranch => "BadBranch",
            Error::NonIntegral(_) => "NonIntegral",
            Error::NonIntegralIntegral { .. } => "NonIntegralIntegral",
            Error::NotInvertible => "NotInvertible",
            Error::BadInit => "BadInit",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NotMonic(_) => "NotMonic",
            Error::NotSeparable => "NotSeparable",
            Error::BadInitialData => "BadInitialData",
            Error::WeierstrassImage => "WeierstrassImage",
            Error::InsufficientPrecision { .. } => "InsufficientPrecision",
            Error::TooFewTerms { .. } => "TooFewTerms",
            Error::SingularReduction => "SingularReduction",
            Error::WrongModel(_) => "WrongModel",
            Error::WeierstrassPoint => "WeierstrassPoint",
            Error::NotOnCurve => "NotOnCurve",
            Error::CollidingRoots => "CollidingRoots",
            Error::NotRational => "NotRational",
            Error::DegenerateDivisor => "DegenerateDivisor",
            Error::NoSolution => "NoSolution",
            Error::PoleAtPoint => "PoleAtPoint",
            Error::SingularH => "SingularH",
            Error::Schema(_) => "Schema",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
