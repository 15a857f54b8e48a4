//! Quadrature on the unit disc for Dirichlet seminorms and the identities
//! relating them under the covering `z ↦ zⁿ`.

mod checks;
mod forms;
mod function;
mod grid;
mod suite;

use thiserror::Error;

pub use checks::{
    check_adjoint, check_dbar_equality, check_hardy, check_ibp, dirichlet_pairing, seminorm1,
    CheckOptions, Comparison, HardyResult, Seminorm,
};
pub use forms::{ClosedForm, Combination, Form, NegLogAbsSq, PullBack, PushForward, ZPoly};
pub use function::{pullback_pow, pushforward_pow, DiscFunction, Samples};
pub use grid::{DiscGrid, DEFAULT_ANGULAR, DEFAULT_RADIAL};
pub use suite::{certified_suite, CheckRecord, VerificationReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiscError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("{angular} angular nodes are not divisible by the degree {n}")]
    GridIncompatibleWithDegree { angular: usize, n: u32 },
    #[error("refinement estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    GridTooCoarse { estimate: f64, tolerance: f64 },
    #[error("function does not vanish on the boundary (max {max:e})")]
    BoundaryNonVanishing { max: f64 },
    #[error("quadrature changed by {change:e} under refinement")]
    QuadratureNotConverged { change: f64 },
    #[error("functions live on different grids")]
    GridMismatch,
    #[error("operation needs a closed form")]
    ClosedFormRequired,
    #[error("non-finite sample at node {0}")]
    NonFinite(usize),
}

impl DiscError {
    pub fn code(&self) -> &'static str {
        match self {
            DiscError::InvalidGrid(_) => "InvalidGrid",
            DiscError::GridIncompatibleWithDegree { .. } => "GridIncompatibleWithDegree",
            DiscError::GridTooCoarse { .. } => "GridTooCoarse",
            DiscError::BoundaryNonVanishing { .. } => "BoundaryNonVanishing",
            DiscError::QuadratureNotConverged { .. } => "QuadratureNotConverged",
            DiscError::GridMismatch => "GridMismatch",
            DiscError::ClosedFormRequired => "ClosedFormRequired",
            DiscError::NonFinite(_) => "NonFinite",
        }
    }
}
