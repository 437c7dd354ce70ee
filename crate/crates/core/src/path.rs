use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{CellCoord, Move};

/// One UAV's route: the visited cells and the moves between them.
///
/// `cells.len() == moves.len() + 1` for any non-empty path, and
/// `moves[i]` takes `cells[i]` to `cells[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct UavPath {
    pub cells: Vec<CellCoord>,
    pub moves: Vec<Move>,
}

impl UavPath {
    pub fn start_at(c: CellCoord) -> Self {
        Self { cells: vec![c], moves: Vec::new() }
    }

    /// Builds a path from consecutive orthogonally adjacent cells.
    pub fn from_cells(cells: Vec<CellCoord>) -> Result<Self> {
        let moves = cells
            .windows(2)
            .map(|w| {
                Move::between(w[0], w[1]).ok_or_else(|| {
                    Error::Domain(format!("cells {} and {} are not orthogonally adjacent", w[0], w[1]))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { cells, moves })
    }

    pub fn last(&self) -> Option<CellCoord> {
        self.cells.last().copied()
    }

    /// Appends `mv` from the current end, landing on `to`.
    pub fn push(&mut self, mv: Move, to: CellCoord) {
        self.moves.push(mv);
        self.cells.push(to);
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn count(&self, mv: Move) -> usize {
        self.moves.iter().filter(|&&m| m == mv).count()
    }

    pub fn crosswind_count(&self) -> usize {
        self.moves.iter().filter(|m| m.is_crosswind()).count()
    }
}
