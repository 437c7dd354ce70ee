//! Column shapes hanging from a top line, their valleys, the feasibility
//! classification and a constructive single-path covering.
//!
//! Shape coordinates put column `i` at `x = i` (1-based) and the top line at
//! `y = k`; column `i` occupies rows `k - heights[i] + 1 ..= k`.

use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{CellCoord, CellSet, Move};
use crate::path::UavPath;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FfgShape {
    pub r: u32,
    pub k: u32,
    pub heights: Vec<u32>,
}

impl FfgShape {
    pub fn new(heights: Vec<u32>) -> Result<Self> {
        let k = heights.iter().copied().max().ok_or_else(|| Error::Domain("shape has no columns".into()))?;
        if let Some(i) = heights.iter().position(|&h| h == 0) {
            return Err(Error::Domain(format!("column {} is empty", i + 1)));
        }
        Ok(Self { r: heights.len() as u32, k, heights })
    }

    pub fn rectangle(r: u32, k: u32) -> Result<Self> {
        Self::new(vec![k; r as usize])
    }

    /// Reads the shape formed by `cells` in columns `x0 ..= x1`, hanging from
    /// row `top`. Cells above `top` or outside the column range are ignored.
    pub fn from_cells(cells: &CellSet, x0: u32, x1: u32, top: u32) -> Result<Self> {
        if x1 < x0 {
            return Err(Error::Domain(format!("empty column range {x0}..={x1}")));
        }
        let mut heights = Vec::with_capacity((x1 - x0 + 1) as usize);
        for x in x0..=x1 {
            let mut h = 0;
            while h < top && cells.contains(CellCoord::new(x, top - h)) {
                h += 1;
            }
            if h == 0 {
                return Err(Error::Domain(format!("column {x} has no cell on the top line {top}")));
            }
            if (1..top - h).any(|y| cells.contains(CellCoord::new(x, y))) {
                return Err(Error::Domain(format!("column {x} is not contiguous from the top line {top}")));
            }
            heights.push(h);
        }
        Self::new(heights)
    }

    pub fn cell_count(&self) -> u64 {
        self.heights.iter().map(|&h| u64::from(h)).sum()
    }

    /// Cells of the shape in shape coordinates.
    pub fn cells(&self) -> impl Iterator<Item = CellCoord> + '_ {
        self.heights.iter().enumerate().flat_map(move |(i, &h)| {
            (self.k - h + 1..=self.k).map(move |y| CellCoord::new(i as u32 + 1, y))
        })
    }
}

/// A maximal run of equal-height columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Valley {
    /// 1-based column indices.
    pub columns: RangeInclusive<u32>,
    pub depth: u32,
}

impl Valley {
    pub fn length(&self) -> u32 {
        self.columns.end() - self.columns.start() + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValleyPartition {
    pub valleys: Vec<Valley>,
}

pub fn valleys(s: &FfgShape) -> ValleyPartition {
    let mut out = Vec::new();
    let mut start = 0usize;
    for i in 1..=s.heights.len() {
        if i == s.heights.len() || s.heights[i] != s.heights[start] {
            out.push(Valley { columns: start as u32 + 1..=i as u32, depth: s.heights[start] });
            start = i;
        }
    }
    ValleyPartition { valleys: out }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeClass {
    NotFfg,
    Ffg,
    Ffg1,
    Ffg2,
}

/// Each class predicate evaluated on its own; a shape can be in several.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ShapeFlags {
    pub ffg: bool,
    pub ffg1: bool,
    pub ffg2: bool,
}

pub fn shape_flags(s: &FfgShape) -> ShapeFlags {
    let v = valleys(s).valleys;
    let middle = if v.len() > 2 { &v[1..v.len() - 1] } else { &[][..] };
    let ffg = middle.iter().all(|x| x.length() % 2 == 0);
    ShapeFlags {
        ffg,
        ffg1: v.len() == 1,
        ffg2: ffg && v[0].depth == 1 && middle.iter().all(|x| x.depth > 1),
    }
}

/// Most specific class, preferring `Ffg1` over `Ffg2` when both hold
/// (a single depth-1 valley).
pub fn classify(s: &FfgShape) -> ShapeClass {
    let f = shape_flags(s);
    if f.ffg1 {
        ShapeClass::Ffg1
    } else if f.ffg2 {
        ShapeClass::Ffg2
    } else if f.ffg {
        ShapeClass::Ffg
    } else {
        ShapeClass::NotFfg
    }
}

/// One path over every cell of an FF-G shape, in shape coordinates.
///
/// Columns are paired inside valleys: down the first of a pair, across, up
/// the second, then across to the next pair along the top line. An odd first
/// valley has its first column climbed from the bottom beforehand; an odd
/// final valley has its last column descended afterwards. A lone odd valley
/// gets the final-column treatment.
pub fn cover_ffg(s: &FfgShape) -> Result<UavPath> {
    if classify(s) == ShapeClass::NotFfg {
        return Err(Error::Precondition(format!("shape is not FF-G: heights {:?}", s.heights)));
    }
    let v = valleys(s).valleys;
    let first_odd = v.len() > 1 && v[0].length() % 2 == 1;
    let last_odd = v[v.len() - 1].length() % 2 == 1;
    let lo = if first_odd { 2 } else { 1 };
    let hi = if last_odd { s.r - 1 } else { s.r };
    let bottom = |col: u32| s.k - s.heights[col as usize - 1] + 1;

    let mut path = UavPath::default();
    let step = |path: &mut UavPath, mv: Move, to: CellCoord| {
        if path.is_empty() {
            *path = UavPath::start_at(to);
        } else {
            path.push(mv, to);
        }
    };

    if first_odd {
        for y in bottom(1)..=s.k {
            step(&mut path, Move::Up, CellCoord::new(1, y));
        }
    }
    let mut col = lo;
    while col < hi {
        step(&mut path, Move::Downwind, CellCoord::new(col, s.k));
        for y in (bottom(col)..s.k).rev() {
            step(&mut path, Move::Down, CellCoord::new(col, y));
        }
        step(&mut path, Move::Downwind, CellCoord::new(col + 1, bottom(col + 1)));
        for y in bottom(col + 1) + 1..=s.k {
            step(&mut path, Move::Up, CellCoord::new(col + 1, y));
        }
        col += 2;
    }
    if last_odd {
        step(&mut path, Move::Downwind, CellCoord::new(s.r, s.k));
        for y in (bottom(s.r)..s.k).rev() {
            step(&mut path, Move::Down, CellCoord::new(s.r, y));
        }
    }
    Ok(path)
}

/// Free cells at or below row `top` as a shape spanning columns `1..=n`.
pub fn residual_shape(free: &CellSet, n: u32, top: u32) -> Result<FfgShape> {
    FfgShape::from_cells(free, 1, n, top)
}
