//! Minimal-time coverage planning for a fleet of identical UAVs sweeping a
//! rectangular grid in a uniform wind.
//!
//! The crate provides the per-move timing model, exact lower bounds on the
//! operation time, a constructive planner whose result is always within one
//! crosswind move of that bound, an independent validator, an exact
//! branch-and-bound solver for small grids and an LP-format model writer.
//!
//! ```
//! use uavcov::{plan, GridSpec, MoveTimes};
//!
//! let grid = GridSpec::von_neumann(11, 10, 3).unwrap();
//! let times = MoveTimes::new(4.0, 5.16, 6.66).unwrap();
//! let plan = plan(&grid, &times).unwrap();
//! assert!((plan.operation_time - 179.32).abs() < 1e-9);
//! ```

pub mod bounds;
pub mod error;
pub mod ffg;
pub mod grid;
pub mod nopp;
pub mod oracle;
pub mod path;
pub mod reference;
pub mod schema;
pub mod svg;
pub mod sweep;
pub mod timing;
pub mod validate;

pub use bounds::{lemma1_optimum, min_uavs_for_budget, operation_lb, path_time_lb};
pub use error::{Error, Result};
pub use grid::{CellCoord, CellSet, GridSpec, Move, Neighborhood};
pub use nopp::{plan, GapClass, Plan};
pub use path::UavPath;
pub use timing::{move_times, MoveTimes, WindKinematics};
pub use validate::{gap_check, mission_time, validate_path, validate_plan, GapCheck, Violation};
