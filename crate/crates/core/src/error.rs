use crate::subset::EndSubset;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("degenerate case (g, n) = ({genus}, {ends}): no trivalent graphs")]
    DegenerateCase { genus: usize, ends: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("point lies on the resonance wall {0}")]
    OnWall(EndSubset),

    #[error("could not sample {wanted} points of the chamber within bound {bound}")]
    SamplingFailed { wanted: usize, bound: i64 },

    #[error("interpolation system is rank deficient ({rank} of {unknowns})")]
    RankDeficient { rank: usize, unknowns: usize },

    #[error("interpolant disagrees with the engine at held-out point {0:?}")]
    InterpolationMismatch(Vec<i64>),

    #[error("cone vectors do not determine the connection: {0}")]
    ConeSpanFailure(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
