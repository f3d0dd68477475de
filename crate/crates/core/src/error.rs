use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // binary forms
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("gcd of two zero forms is undefined")]
    BothZero,
    #[error("operation requires a nonzero form")]
    ZeroForm,

    // lattices
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("Gram matrix is not symmetric")]
    AsymmetricGram,
    #[error("Gram matrix is degenerate (determinant 0)")]
    DegenerateGram,
    #[error("lattice is not even")]
    OddLattice,
    #[error("trilinear form is not symmetric")]
    AsymmetricForm,
    #[error("induced Gram matrix is degenerate")]
    DegenerateResult,
    #[error("embedding is not injective")]
    NotInjective,
    #[error("embedding does not pull back the ambient form to the given Gram matrix")]
    IncompatibleForm,
    #[error("rank {0} exceeds 20")]
    RankTooLarge(usize),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    // overlattices
    #[error("discriminant group of order {order} exceeds enumeration bound {bound}")]
    GroupTooLarge { order: u64, bound: u64 },
    #[error("subgroup is not isotropic: {0}")]
    NotIsotropic(String),
    #[error("element does not belong to the discriminant group")]
    NotInGroup,

    // weierstrass
    #[error("discriminant 4*alpha^3 + 27*beta^2 vanishes identically")]
    IdenticallyZeroDiscriminant,
    #[error("non-minimal Weierstrass model at place {place}")]
    NonMinimal { place: String },
    #[error("valuations ({0:?}, {1:?}, {2}) match no Kodaira row")]
    NoRowMatch(Option<u32>, Option<u32>, u32),
    #[error("model is already minimal")]
    AlreadyMinimal,
    #[error("reduction would drive the line bundle degree to {0}")]
    DegreeUnderflow(i64),

    // cone
    #[error("class is not a (-2)-class")]
    NotRoot,
    #[error("lattice has rank {0}, expected 2")]
    NotRank2(usize),
    #[error("class {0:?} lies on the wall of root {1:?}")]
    OnWall(Vec<i64>, Vec<i64>),
    #[error("class does not have positive square")]
    NotPositive,
    #[error("chamber walls changed when the height bound was doubled to {0}")]
    Unstable(i64),
    #[error("lattice signature is not hyperbolic (1, n-1)")]
    BadSignature,

    // input handling
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
}

impl Error {
    /// Short stable identifier used in machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegreeMismatch(..) => "DegreeMismatch",
            Error::BothZero => "BothZero",
            Error::ZeroForm => "ZeroForm",
            Error::BadParameter(_) => "BadParameter",
            Error::AsymmetricGram => "AsymmetricGram",
            Error::DegenerateGram => "DegenerateGram",
            Error::OddLattice => "OddLattice",
            Error::AsymmetricForm => "AsymmetricForm",
            Error::DegenerateResult => "DegenerateResult",
            Error::NotInjective => "NotInjective",
            Error::IncompatibleForm => "IncompatibleForm",
            Error::RankTooLarge(_) => "RankTooLarge",
            Error::Overflow(_) => "Overflow",
            Error::GroupTooLarge { .. } => "GroupTooLarge",
            Error::NotIsotropic(_) => "NotIsotropic",
            Error::NotInGroup => "NotInGroup",
            Error::IdenticallyZeroDiscriminant => "IdenticallyZeroDiscriminant",
            Error::NonMinimal { .. } => "NonMinimal",
            Error::NoRowMatch(..) => "NoRowMatch",
            Error::AlreadyMinimal => "AlreadyMinimal",
            Error::DegreeUnderflow(_) => "DegreeUnderflow",
            Error::NotRoot => "NotRoot",
            Error::NotRank2(_) => "NotRank2",
            Error::OnWall(..) => "OnWall",
            Error::NotPositive => "NotPositive",
            Error::Unstable(_) => "Unstable",
            Error::BadSignature => "BadSignature",
            Error::Parse(_) => "ParseError",
            Error::Validation(_) => "ValidationError",
        }
    }

    /// Malformed input, or input that violates a precondition of the
    /// requested computation. Everything else is an engine-side failure.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Validation(_)
                | Error::AsymmetricGram
                | Error::DegenerateGram
                | Error::BadParameter(_)
                | Error::DegreeMismatch(..)
                | Error::OddLattice
                | Error::AsymmetricForm
                | Error::NotInjective
                | Error::IncompatibleForm
                | Error::NotRank2(_)
                | Error::NotPositive
                | Error::OnWall(..)
                | Error::BadSignature
                | Error::NotRoot
        )
    }
}
