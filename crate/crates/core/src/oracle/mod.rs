//! Ground truth for small instances: an exact branch-and-bound search and a
//! writer for the step-indexed MIP model in LP text format.

mod exact;
mod mip;

pub use exact::{exact_solve, ExactOptions, ExactResult, DEFAULT_CELL_CAP};
pub use mip::{emit_mip, MipFamily, MIP_FAMILIES};
