use thiserror::Error;

use crate::grid::CellCoord;

/// Errors raised by the planning library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A cell or move destination falls outside the grid.
    #[error("cell {cell} is outside the {n}x{m} grid")]
    OutOfBounds { cell: CellCoord, n: u32, m: u32 },

    /// The instance cannot be solved under the requested parameters.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Internal bookkeeping diverged from what the construction guarantees.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// The planner left cells uncovered or produced an invalid plan.
    #[error("feasibility violation: {0}")]
    Feasibility(String),

    /// The exact solver refuses instances above its cell cap.
    #[error("instance has {cells} cells, above the exact-solver cap of {cap}")]
    CapExceeded { cells: usize, cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
