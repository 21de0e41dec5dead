//! Error type shared by the whole crate.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A physical parameter violated its domain constraint.
    #[error("invalid parameter `{name}`: {constraint}")]
    InvalidParameter {
        name: &'static str,
        constraint: String,
    },

    /// Forward scattering has no nontrivial solution under linear dispersion.
    #[error("forward phase matching is degenerate: linear dispersion admits only q = 0")]
    ForwardBranchDegenerate,

    /// The kernel was evaluated exactly on an undamped pole.
    #[error("response kernel evaluated exactly on an undamped pole at frame frequency {at}")]
    PoleEvaluation { at: String },

    /// The port response denominator 1 - i u Lambda vanished.
    #[error("degenerate port response denominator (kernel value {lambda})")]
    DegenerateDenominator { lambda: String },

    /// A sweep or grid definition was rejected.
    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    /// The requested column does not exist in this table.
    #[error("unknown column `{0}` for this table")]
    UnknownColumn(String),

    /// Splitting analysis needs more maxima than the data supplies.
    #[error("found {found} maxima where at least {needed} are required")]
    TooFewMaxima { found: usize, needed: usize },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, constraint: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            constraint: constraint.into(),
        }
    }
}
