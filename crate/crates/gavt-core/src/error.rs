use alloc::string::String;

/// Errors raised across the crate. [`Error::name`] gives the stable variant
/// name printed by the command line.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("gcd({0}, {1}) is not 1")]
    NotCoprime(i64, i64),
    #[error("valuation of zero")]
    ZeroValuation,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} does not divide {1}")]
    NotDivisor(u64, u64),
    #[error("{0} is not coprime to 6")]
    NotCoprimeToSix(u64),
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("polynomial has two distinct irreducible factors")]
    NotElementary,
    #[error("p-adic factorization not supported: {0}")]
    UnsupportedFactorization(String),
    #[error("multiplicity {split} of the minimal polynomial disagrees with index {index}")]
    InconsistentTate { split: u32, index: u32 },
    #[error("not a Weil polynomial")]
    NotWeil,
    #[error("unknown group label {0:?}")]
    UnknownLabel(String),
    #[error("group of order {0} exceeds the search bound")]
    TooLarge(usize),
    #[error("inner product is not rational")]
    NotRational,
    #[error("matrix group closure exceeds {0} elements")]
    NotFinite(usize),
    #[error("no stored fact for {0}")]
    UnknownWitness(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Variant name, as reported by the command line.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotCoprime(..) => "NotCoprime",
            Error::ZeroValuation => "ZeroValuation",
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::NotDivisor(..) => "NotDivisor",
            Error::NotCoprimeToSix(_) => "NotCoprimeToSix",
            Error::UnsupportedDegree(_) => "UnsupportedDegree",
            Error::NotElementary => "NotElementary",
            Error::UnsupportedFactorization(_) => "UnsupportedFactorization",
            Error::InconsistentTate { .. } => "InconsistentTate",
            Error::NotWeil => "NotWeil",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::TooLarge(_) => "TooLarge",
            Error::NotRational => "NotRational",
            Error::NotFinite(_) => "NotFinite",
            Error::UnknownWitness(_) => "UnknownWitness",
            Error::Parse(_) => "Parse",
            Error::Invalid(_) => "Invalid",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
