use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parameters outside the regime A + mu > 0, 0 < eta < 1: {0}")]
    OutOfRegime(String),
    #[error("continuation left the safeguard bracket: {0}")]
    BranchLost(String),
    #[error("denominator Lambda0 - n^2 + (A+mu)^2 vanishes")]
    DegenerateDenominator,
    #[error("unsupported series order {0}; only 0, 3, 4 are available")]
    UnsupportedOrder(u32),
    #[error("limiting eigenvalues differ: {0} vs {1}")]
    NotDegenerate(f64, f64),
    #[error("no sign change of F_nm on [{0}, {1}]")]
    NoSignChange(f64, f64),
    #[error("a zero of J_{order} lies inside the bracket at {at}")]
    ZeroInsideBracket { order: u32, at: f64 },
    #[error("t J_n'(t)/J_n(t) is nonnegative inside the bracket (at {0})")]
    WrongSign(f64),
    #[error("singular point of the boundary-layer function at ({0}, {1})")]
    SingularPoint(f64, f64),
    #[error("quadrature did not converge: {0}")]
    NonConvergent(String),
    #[error("no singular-value dip below threshold (min sigma {0:e})")]
    NoDip(f64),
    #[error("{0} dips below threshold inside the bracket")]
    MultipleDips(usize),
    #[error("all basis columns underflow")]
    IllConditioned,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Variant name, stable across releases.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Domain(_) => "Domain",
            Error::InvalidInput(_) => "InvalidInput",
            Error::OutOfRegime(_) => "OutOfRegime",
            Error::BranchLost(_) => "BranchLost",
            Error::DegenerateDenominator => "DegenerateDenominator",
            Error::UnsupportedOrder(_) => "UnsupportedOrder",
            Error::NotDegenerate(..) => "NotDegenerate",
            Error::NoSignChange(..) => "NoSignChange",
            Error::ZeroInsideBracket { .. } => "ZeroInsideBracket",
            Error::WrongSign(_) => "WrongSign",
            Error::SingularPoint(..) => "SingularPoint",
            Error::NonConvergent(_) => "NonConvergent",
            Error::NoDip(_) => "NoDip",
            Error::MultipleDips(_) => "MultipleDips",
            Error::IllConditioned => "IllConditioned",
        }
    }

    /// True for errors caused by arguments outside an operation's preconditions.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::InvalidInput(_) | Error::OutOfRegime(_) | Error::UnsupportedOrder(_))
    }
}
