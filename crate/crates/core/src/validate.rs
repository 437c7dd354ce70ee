//! Independent checks of paths and plans against the coverage constraints.
//!
//! Nothing here trusts planner bookkeeping: mission times are recomputed from
//! move labels and every violation is collected rather than stopping early.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::grid::{CellCoord, GridSpec, Move};
use crate::nopp::Plan;
use crate::path::UavPath;
use crate::timing::MoveTimes;

/// A single broken constraint. Path indices are 0-based positions in the plan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Violation {
    EmptyPath { path: usize },
    OutOfBounds { path: usize, index: usize, cell: CellCoord },
    NonAdjacentStep { path: usize, index: usize, from: CellCoord, to: CellCoord },
    DuplicateCell { path: usize, cell: CellCoord },
    /// `cells.len() != moves.len() + 1`.
    LengthMismatch { path: usize, cells: usize, moves: usize },
    /// A move label does not lead from one listed cell to the next.
    MoveMismatch { path: usize, index: usize, label: Move, from: CellCoord, to: CellCoord },
    Overlap { cell: CellCoord, paths: (usize, usize) },
    Uncovered { cells: Vec<CellCoord> },
    WrongPathCount { expected: usize, found: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyPath { path } => write!(f, "EmptyPath: path {path} has no cells"),
            Violation::OutOfBounds { path, index, cell } => {
                write!(f, "OutOfBounds: path {path} cell #{index} {cell}")
            }
            Violation::NonAdjacentStep { path, index, from, to } => {
                write!(f, "NonAdjacentStep: path {path} step #{index} {from} -> {to}")
            }
            Violation::DuplicateCell { path, cell } => write!(f, "DuplicateCell: path {path} revisits {cell}"),
            Violation::LengthMismatch { path, cells, moves } => {
                write!(f, "LengthMismatch: path {path} has {cells} cells but {moves} moves")
            }
            Violation::MoveMismatch { path, index, label, from, to } => {
                write!(f, "MoveMismatch: path {path} move #{index} '{label}' does not lead {from} -> {to}")
            }
            Violation::Overlap { cell, paths: (a, b) } => write!(f, "Overlap: {cell} in paths {a} and {b}"),
            Violation::Uncovered { cells } => {
                write!(f, "Uncovered: {} cell(s)", cells.len())?;
                for c in cells.iter().take(8) {
                    write!(f, " {c}")?;
                }
                if cells.len() > 8 {
                    write!(f, " ...")?;
                }
                Ok(())
            }
            Violation::WrongPathCount { expected, found } => {
                write!(f, "WrongPathCount: expected {expected} paths, found {found}")
            }
        }
    }
}

fn path_violations(index: usize, p: &UavPath, g: &GridSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    if p.cells.is_empty() {
        out.push(Violation::EmptyPath { path: index });
        return out;
    }
    if p.moves.len() + 1 != p.cells.len() {
        out.push(Violation::LengthMismatch { path: index, cells: p.cells.len(), moves: p.moves.len() });
    }
    for (i, &c) in p.cells.iter().enumerate() {
        if !g.contains(c) {
            out.push(Violation::OutOfBounds { path: index, index: i, cell: c });
        }
    }
    for (i, w) in p.cells.windows(2).enumerate() {
        if !g.adjacent(w[0], w[1]) {
            out.push(Violation::NonAdjacentStep { path: index, index: i, from: w[0], to: w[1] });
        }
        if let Some(&label) = p.moves.get(i) {
            if Move::between(w[0], w[1]) != Some(label) {
                out.push(Violation::MoveMismatch { path: index, index: i, label, from: w[0], to: w[1] });
            }
        }
    }
    let mut seen = HashMap::with_capacity(p.cells.len());
    for &c in &p.cells {
        if seen.insert(c, ()).is_some() {
            out.push(Violation::DuplicateCell { path: index, cell: c });
        }
    }
    out
}

/// Checks bounds, step adjacency, label consistency and revisits.
pub fn validate_path(p: &UavPath, g: &GridSpec) -> Result<(), Vec<Violation>> {
    let v = path_violations(0, p, g);
    if v.is_empty() {
        Ok(())
    } else {
        Err(v)
    }
}

/// Checks every path, pairwise disjointness and full coverage.
///
/// Paths may be empty only when they belong to idle UAVs; `paths` must hold
/// exactly `g.q` entries.
pub fn validate_paths(paths: &[UavPath], g: &GridSpec) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    if paths.len() != g.q as usize {
        out.push(Violation::WrongPathCount { expected: g.q as usize, found: paths.len() });
    }
    let mut owner: HashMap<CellCoord, usize> = HashMap::with_capacity(g.cell_count());
    for (k, p) in paths.iter().enumerate() {
        if !p.cells.is_empty() {
            out.extend(path_violations(k, p, g));
        }
        let mut own = std::collections::HashSet::new();
        for &c in &p.cells {
            if !own.insert(c) {
                continue;
            }
            if let Some(&other) = owner.get(&c) {
                out.push(Violation::Overlap { cell: c, paths: (other, k) });
            } else {
                owner.insert(c, k);
            }
        }
    }
    let missing: Vec<_> = g.cells().filter(|c| !owner.contains_key(c)).collect();
    if !missing.is_empty() {
        out.push(Violation::Uncovered { cells: missing });
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Checks a planner result; see [`validate_paths`].
pub fn validate_plan(plan: &Plan, g: &GridSpec) -> Result<(), Vec<Violation>> {
    validate_paths(&plan.paths, g)
}

/// Mission time recomputed from the move labels.
pub fn mission_time(p: &UavPath, t: &MoveTimes) -> f64 {
    p.moves.iter().map(|&mv| t.of(mv)).sum()
}

/// Operation time minus lower bound, classified on the `{0, Tp}` lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapCheck {
    Zero,
    OneTp,
    Violation,
}

/// Tolerance used when comparing times against the lower bound.
pub fn gap_tolerance(lb: f64) -> f64 {
    1e-9_f64.max(1e-6 * lb.abs())
}

pub fn gap_check(operation_time: f64, lb: f64, crosswind: f64) -> GapCheck {
    let gap = operation_time - lb;
    let tol = gap_tolerance(lb);
    if gap.abs() <= tol {
        GapCheck::Zero
    } else if (gap - crosswind).abs() <= tol {
        GapCheck::OneTp
    } else {
        GapCheck::Violation
    }
}
