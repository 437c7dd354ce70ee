//! Discretized search area: cells, neighborhoods and move labels.
//!
//! Cells are addressed by their 1-based center index `(x, y)`. The X axis runs
//! along the wind (west to east), the Y axis across it. Conversion to 0-based
//! storage indices happens only inside [`CellSet`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A grid cell identified by its 1-based column `x` and row `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[u32; 2]", into = "[u32; 2]")]
pub struct CellCoord {
    pub x: u32,
    pub y: u32,
}

impl CellCoord {
    pub const fn new(x: u32, y: u32) -> Self {
        Self { x, y }
    }
}

impl From<[u32; 2]> for CellCoord {
    fn from([x, y]: [u32; 2]) -> Self {
        Self { x, y }
    }
}

impl From<CellCoord> for [u32; 2] {
    fn from(c: CellCoord) -> Self {
        [c.x, c.y]
    }
}

impl From<(u32, u32)> for CellCoord {
    fn from((x, y): (u32, u32)) -> Self {
        Self { x, y }
    }
}

impl fmt::Display for CellCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Cell connectivity used when checking path adjacency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Neighborhood {
    /// The four orthogonal neighbors.
    #[default]
    VonNeumann,
    /// All eight surrounding cells.
    Moore,
}

/// A single-cell move in a planner path.
///
/// Wire labels follow the usual convention: `S` with the wind, `O` against it,
/// `U`/`D` perpendicular to it. Diagonal moves are timing categories only and
/// never appear in a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    /// `S`: one cell downwind, `(x+1, y)`.
    #[serde(rename = "S")]
    Downwind,
    /// `O`: one cell upwind, `(x-1, y)`.
    #[serde(rename = "O")]
    Upwind,
    /// `U`: one cell up, `(x, y+1)`.
    #[serde(rename = "U")]
    Up,
    /// `D`: one cell down, `(x, y-1)`.
    #[serde(rename = "D")]
    Down,
}

impl Move {
    pub const ALL: [Move; 4] = [Move::Downwind, Move::Upwind, Move::Up, Move::Down];

    pub fn label(self) -> char {
        match self {
            Move::Downwind => 'S',
            Move::Upwind => 'O',
            Move::Up => 'U',
            Move::Down => 'D',
        }
    }

    pub fn from_label(c: char) -> Option<Self> {
        match c {
            'S' => Some(Move::Downwind),
            'O' => Some(Move::Upwind),
            'U' => Some(Move::Up),
            'D' => Some(Move::Down),
            _ => None,
        }
    }

    /// True for `U` and `D`, the moves perpendicular to the wind.
    pub fn is_crosswind(self) -> bool {
        matches!(self, Move::Up | Move::Down)
    }

    fn delta(self) -> (i64, i64) {
        match self {
            Move::Downwind => (1, 0),
            Move::Upwind => (-1, 0),
            Move::Up => (0, 1),
            Move::Down => (0, -1),
        }
    }

    /// The move that takes `from` to the orthogonally adjacent `to`, if any.
    pub fn between(from: CellCoord, to: CellCoord) -> Option<Self> {
        let dx = i64::from(to.x) - i64::from(from.x);
        let dy = i64::from(to.y) - i64::from(from.y);
        Move::ALL.into_iter().find(|mv| mv.delta() == (dx, dy))
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// Dimensions of the search area, fleet size, connectivity and cell pitch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    /// Cells along the wind (X axis).
    pub n: u32,
    /// Cells across the wind (Y axis).
    pub m: u32,
    /// Number of UAVs.
    pub q: u32,
    pub neighborhood: Neighborhood,
    /// Center-to-center distance between adjacent cells, in meters.
    pub cell_pitch: f64,
}

impl GridSpec {
    /// Validates `n, m >= 1`, `cell_pitch > 0` and `1 <= q <= min(n, m)`.
    pub fn new(n: u32, m: u32, q: u32, neighborhood: Neighborhood, cell_pitch: f64) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Domain(format!("grid must be at least 1x1, got {n}x{m}")));
        }
        if !(cell_pitch.is_finite() && cell_pitch > 0.0) {
            return Err(Error::Domain(format!("cell pitch must be positive, got {cell_pitch}")));
        }
        if q == 0 {
            return Err(Error::Domain("q must be at least 1".into()));
        }
        if q > n.min(m) {
            return Err(Error::Domain(format!("q exceeds min(n,m): q={q}, n={n}, m={m}")));
        }
        Ok(Self { n, m, q, neighborhood, cell_pitch })
    }

    /// Von Neumann grid with unit pitch; the common case in tests and tables.
    pub fn von_neumann(n: u32, m: u32, q: u32) -> Result<Self> {
        Self::new(n, m, q, Neighborhood::VonNeumann, 1.0)
    }

    pub fn cell_count(&self) -> usize {
        self.n as usize * self.m as usize
    }

    pub fn contains(&self, c: CellCoord) -> bool {
        (1..=self.n).contains(&c.x) && (1..=self.m).contains(&c.y)
    }

    fn check(&self, c: CellCoord) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(Error::OutOfBounds { cell: c, n: self.n, m: self.m })
        }
    }

    /// All cells in column-major order: `(1,1), (1,2), ..., (n,m)`.
    pub fn cells(&self) -> impl Iterator<Item = CellCoord> + '_ {
        (1..=self.n).flat_map(move |x| (1..=self.m).map(move |y| CellCoord::new(x, y)))
    }

    /// In-bounds neighbors of `c` under this grid's connectivity.
    pub fn neighbors(&self, c: CellCoord) -> Result<Vec<CellCoord>> {
        self.check(c)?;
        let offsets: &[(i64, i64)] = match self.neighborhood {
            Neighborhood::VonNeumann => &[(1, 0), (-1, 0), (0, 1), (0, -1)],
            Neighborhood::Moore => &[(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)],
        };
        Ok(offsets.iter().filter_map(|&(dx, dy)| self.offset(c, dx, dy)).collect())
    }

    /// Whether `a` and `b` are distinct neighbors under this grid's connectivity.
    pub fn adjacent(&self, a: CellCoord, b: CellCoord) -> bool {
        let dx = a.x.abs_diff(b.x);
        let dy = a.y.abs_diff(b.y);
        match self.neighborhood {
            Neighborhood::VonNeumann => dx + dy == 1,
            Neighborhood::Moore => dx.max(dy) == 1,
        }
    }

    /// The neighbor reached by `mv`, or an error if it leaves the grid.
    pub fn apply_move(&self, c: CellCoord, mv: Move) -> Result<CellCoord> {
        self.check(c)?;
        let (dx, dy) = mv.delta();
        self.offset(c, dx, dy).ok_or_else(|| {
            let x = (i64::from(c.x) + dx).max(0) as u32;
            let y = (i64::from(c.y) + dy).max(0) as u32;
            Error::OutOfBounds { cell: CellCoord::new(x, y), n: self.n, m: self.m }
        })
    }

    fn offset(&self, c: CellCoord, dx: i64, dy: i64) -> Option<CellCoord> {
        let x = i64::from(c.x) + dx;
        let y = i64::from(c.y) + dy;
        let cell = CellCoord::new(u32::try_from(x).ok()?, u32::try_from(y).ok()?);
        self.contains(cell).then_some(cell)
    }
}

/// Dense membership set over the cells of an `n x m` grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellSet {
    n: u32,
    m: u32,
    bits: Vec<bool>,
    len: usize,
}

impl CellSet {
    pub fn empty(n: u32, m: u32) -> Self {
        Self { n, m, bits: vec![false; n as usize * m as usize], len: 0 }
    }

    pub fn full(n: u32, m: u32) -> Self {
        let cells = n as usize * m as usize;
        Self { n, m, bits: vec![true; cells], len: cells }
    }

    fn index(&self, c: CellCoord) -> Option<usize> {
        ((1..=self.n).contains(&c.x) && (1..=self.m).contains(&c.y))
            .then(|| (c.x as usize - 1) * self.m as usize + (c.y as usize - 1))
    }

    /// Out-of-grid cells are never members.
    pub fn contains(&self, c: CellCoord) -> bool {
        self.index(c).is_some_and(|i| self.bits[i])
    }

    /// Returns whether the cell was newly inserted.
    pub fn insert(&mut self, c: CellCoord) -> bool {
        match self.index(c) {
            Some(i) if !self.bits[i] => {
                self.bits[i] = true;
                self.len += 1;
                true
            }
            _ => false,
        }
    }

    /// Returns whether the cell was present.
    pub fn remove(&mut self, c: CellCoord) -> bool {
        match self.index(c) {
            Some(i) if self.bits[i] => {
                self.bits[i] = false;
                self.len -= 1;
                true
            }
            _ => false,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = CellCoord> + '_ {
        let m = self.m as usize;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(i, _)| CellCoord::new((i / m) as u32 + 1, (i % m) as u32 + 1))
    }
}
