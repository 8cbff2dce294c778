use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("elements belong to different rings")]
    RingMismatch,

    #[error("bundles live on different varieties")]
    VarietyMismatch,

    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),

    #[error("invalid generator `{name}`: {reason}")]
    InvalidGenerator { name: String, reason: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("unknown divisor `{0}`")]
    UnknownDivisor(String),

    #[error("ring cutoff must be at least 1")]
    ZeroCutoff,

    #[error("relation for `{lhs}` is not homogeneous: {detail}")]
    InhomogeneousRelation { lhs: String, detail: String },

    #[error("rewriting `{monomial}` did not terminate within {cap} passes")]
    NonTerminating { monomial: String, cap: usize },

    #[error("degree {degree} is outside 0..={cutoff}")]
    DegreeOutOfRange { degree: u32, cutoff: u32 },

    #[error("exponential needs a nilpotent argument; degree-0 part is {0}")]
    NotNilpotent(String),

    #[error("logarithm needs a unipotent argument; degree-0 part is {0}")]
    NotUnipotent(String),

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: String, found: String },

    #[error("part {index} is not homogeneous of degree {index}")]
    NonHomogeneousPart { index: usize },

    #[error("need at least {needed} parts, got {got}")]
    TooFewParts { needed: usize, got: usize },

    #[error("c_0 must equal 1, found {0}")]
    LeadingClassNotOne(String),

    #[error("cover degree must be positive")]
    ZeroCoverDegree,

    #[error("cover degree {n} is not a multiple of N(E) = {big_n}")]
    IncompatibleCover { n: String, big_n: String },

    #[error("integral `{monomial}` must have degree {dim}")]
    IntegralDegree { monomial: String, dim: u32 },

    #[error("no integral declared for monomial `{0}`")]
    MissingIntegral(String),

    #[error("invalid bundle: {0}")]
    InvalidBundle(String),

    #[error("weight {weight} on `{divisor}` must lie in [0,1)")]
    WeightOutOfRange { divisor: String, weight: String },

    #[error("denominator of {value} exceeds the limit {limit}")]
    DenominatorTooLarge { value: String, limit: String },

    #[error("parabolic bundle needs at least one summand")]
    EmptyBundle,
}
