use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what}: argument {value} outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("{what}: argument {value} too close to a singular point for double precision")]
    NumericalRange { what: &'static str, value: f64 },

    #[error(
        "λ = 1 is the critical point: the entanglement spectrum collapses; \
         use the asymptote_* operations there"
    )]
    CriticalPoint,

    #[error("{what} did not converge within {limit} terms/iterations")]
    NonConvergence { what: &'static str, limit: usize },

    #[error("negative radicand {value:e} in the closed-form fluctuation at λ = {lambda}")]
    NegativeRadicand { lambda: f64, value: f64 },

    #[error("probabilities sum to {sum}, not 1")]
    Unnormalized { sum: f64 },

    #[error("no sign change of {what} on [{lo}, {hi}]")]
    BracketFailure { what: &'static str, lo: f64, hi: f64 },

    #[error("α = 1 is the von Neumann limit; use the von Neumann entropy instead")]
    AlphaIsOne,

    #[error("invalid chain: {0}")]
    InvalidChain(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, domain: &'static str) -> Self {
        Error::Domain {
            what,
            value,
            domain,
        }
    }
}
