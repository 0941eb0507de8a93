//! Error type shared by every operation in the crate.

use thiserror::Error;

/// Failure modes of geometric constructions and plumbing.
///
/// Most geometric variants signal a non-generic configuration; callers that
/// sample randomly are expected to resample on those.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix does not have full rank")]
    RankDeficient,
    #[error("subspaces are not transverse")]
    NotTransverse,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("no transverse chart found")]
    ChartFailure,
    #[error("roots do not lie in the base field")]
    NotSplit,
    #[error("polynomial does not split into linear factors over the base field")]
    RootsNotSplit,
    #[error("point lies in the omega stratum")]
    InOmega,
    #[error("point is not in the omega stratum")]
    NotInOmega,
    #[error("quadric ideal rank did not stabilize")]
    RankUnstable,
    #[error("space of quadrics through the curve has dimension {0}, expected 3")]
    NetDim(usize),
    #[error("linear syzygies of the net are not of the expected shape")]
    SyzygyFail,
    #[error("point lies in a plane meeting the curve in a conic")]
    DegeneratePlane,
    #[error("plane does not meet the threefold in three distinct points")]
    NotThreePoints,
    #[error("plane meets the threefold in a curve")]
    InOmegaConfig,
    #[error("the two cubics span the same 3-space")]
    SameSpan,
    #[error("points span more than the requested dimension")]
    TooManyPoints,
    #[error("point does not lie on the section")]
    NotOnSection,
    #[error("cubic lies in the section")]
    CubicInSection,
    #[error("intersection scheme is not reduced")]
    NonReduced,
    #[error("intersection scheme has length {0}, expected 3")]
    WrongLength(usize),
    #[error("subspace has unexpected projective dimension {0}")]
    BadDim(isize),
    #[error("constraints admit no tangent hyperplane")]
    NoHyperplane,
    #[error("interpolation kernel has dimension {0}, expected 1")]
    KernelDim(usize),
    #[error("form restricts to zero")]
    ZeroRestriction,
    #[error("eigenspaces of the 2-form are degenerate")]
    EigenDegenerate,
    #[error("lines are not conjugate")]
    ConjugacyFail,
    #[error("residual curve is degenerate")]
    ResidualDegenerate,
    #[error("found {0} common horizontal lines, expected 3")]
    LineCount(usize),
    #[error("join is not a hyperplane")]
    NotHyperplane,
    #[error("point is not on the dual quartic curve")]
    NotOnFx,
    #[error("schema mismatch: {0}")]
    SchemaMismatch(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("retry budget of {0} exhausted")]
    RetriesExhausted(usize),
}

impl Error {
    /// Stable upper-case name of the variant, used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::RankDeficient => "RANK_DEFICIENT",
            Error::NotTransverse => "NOT_TRANSVERSE",
            Error::NotSymmetric => "NOT_SYMMETRIC",
            Error::ChartFailure => "CHART_FAILURE",
            Error::NotSplit => "NOT_SPLIT",
            Error::RootsNotSplit => "ROOTS_NOT_SPLIT",
            Error::InOmega => "IN_OMEGA",
            Error::NotInOmega => "NOT_IN_OMEGA",
            Error::RankUnstable => "RANK_UNSTABLE",
            Error::NetDim(..) => "NET_DIM",
            Error::SyzygyFail => "SYZYGY_FAIL",
            Error::DegeneratePlane => "DEGENERATE_PLANE",
            Error::NotThreePoints => "NOT_THREE_POINTS",
            Error::InOmegaConfig => "IN_OMEGA_CONFIG",
            Error::SameSpan => "SAME_SPAN",
            Error::TooManyPoints => "TOO_MANY_POINTS",
            Error::NotOnSection => "NOT_ON_SECTION",
            Error::CubicInSection => "CUBIC_IN_SECTION",
            Error::NonReduced => "NON_REDUCED",
            Error::WrongLength(..) => "WRONG_LENGTH",
            Error::BadDim(..) => "BAD_DIM",
            Error::NoHyperplane => "NO_HYPERPLANE",
            Error::KernelDim(..) => "KERNEL_DIM",
            Error::ZeroRestriction => "ZERO_RESTRICTION",
            Error::EigenDegenerate => "EIGEN_DEGENERATE",
            Error::ConjugacyFail => "CONJUGACY_FAIL",
            Error::ResidualDegenerate => "RESIDUAL_DEGENERATE",
            Error::LineCount(..) => "LINE_COUNT",
            Error::NotHyperplane => "NOT_HYPERPLANE",
            Error::NotOnFx => "NOT_ON_FX",
            Error::SchemaMismatch(..) => "SCHEMA_MISMATCH",
            Error::FieldMismatch(..) => "FIELD_MISMATCH",
            Error::Parse(..) => "PARSE",
            Error::Config(..) => "CONFIG",
            Error::RetriesExhausted(..) => "RETRIES_EXHAUSTED",
        }
    }
}

/// Shorthand result type.
pub type Result<T> = std::result::Result<T, Error>;
