use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("squares do not form a connected surface (orbit of square 0 has {orbit} of {total} squares)")]
    NotConnected { orbit: usize, total: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("cylinder intersection is not a whole number of blocks: {0}")]
    NonIntegralIntersection(String),
    #[error("polynomial division is not exact")]
    NonExactDivision,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial has no real root")]
    NoRealRoot,
    #[error("could not separate the factors on the isolating interval")]
    IntervalAmbiguous,
    #[error("invalid stratum: {0}")]
    InvalidStratum(String),
    #[error("parameters too small: {0}")]
    ParamsTooSmall(String),
    #[error("genus {0} is too small for this family")]
    GenusTooSmall(usize),
    #[error("multitwist is not pseudo-Anosov (Perron-Frobenius eigenvalue of XX^T is at most 4)")]
    NotPseudoAnosov,
    #[error("degree {given} does not match the certified trace degree {certified}")]
    DegreeMismatch { given: usize, certified: usize },
    #[error("core curves span rank {rank} in mod 2 homology, expected {expected}")]
    CurvesDoNotGenerate { rank: usize, expected: usize },
    #[error("spin parity is undefined for strata with odd orders")]
    SpinUndefined,
    #[error("surface has no cone point")]
    NoConePoint,
    #[error("no admissible parameter found up to {0}")]
    SearchExhausted(u64),
    #[error("unreachable combination: {0}")]
    UnreachableCombination(String),
    #[error("unknown family '{0}'")]
    UnknownFamily(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

pub type Result<T> = std::result::Result<T, Error>;
