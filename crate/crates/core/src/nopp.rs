//! Four-phase near-optimal coverage planner.
//!
//! UAVs are planned one after another over the cells the previous ones left
//! free. Each UAV gets a budget of `ceil(nm/q) - n` crosswind moves and:
//!
//! 1. greedily descends, sweeps downwind and climbs back (phase one);
//! 2. drops a trailing climb whose parity would strand a column (phase two);
//! 3. spends the remaining budget on up/over/down detours (phase three);
//! 4. for the last UAV only, climbs into any cells still free (phase four).
//!
//! The resulting operation time is always the lower bound or the lower bound
//! plus one crosswind move.

use serde::{Deserialize, Serialize};

use crate::bounds::{max_load, operation_lb};
use crate::error::{Error, Result};
use crate::grid::{CellCoord, CellSet, GridSpec, Move};
use crate::path::UavPath;
use crate::timing::MoveTimes;
use crate::validate::{gap_check, mission_time, GapCheck};

/// Per-UAV planner bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlannerState {
    /// Cells not yet covered by any UAV.
    pub free: CellSet,
    /// Crosswind moves still available.
    pub crosswind_budget: u64,
    /// Up moves made so far.
    pub ups: u64,
    /// Down moves made so far.
    pub downs: u64,
    /// Cells assigned to this UAV.
    pub assigned: u64,
    pub start: CellCoord,
    /// Whether the initial crosswind budget was odd.
    pub odd_budget: bool,
}

/// State for UAV `uav` (1-based) given the cells still free.
pub fn initial_settings(g: &GridSpec, uav: u32, free: CellSet) -> Result<PlannerState> {
    if g.q > g.n.min(g.m) {
        return Err(Error::Domain(format!("q exceeds min(n,m): q={}, n={}, m={}", g.q, g.n, g.m)));
    }
    if uav == 0 || uav > g.q {
        return Err(Error::Domain(format!("UAV index {uav} outside 1..={}", g.q)));
    }
    let assigned = max_load(g.cell_count() as u64, u64::from(g.q));
    let budget = assigned - u64::from(g.n);
    Ok(PlannerState {
        free,
        crosswind_budget: budget,
        ups: 0,
        downs: 0,
        assigned,
        start: CellCoord::new(1, g.m - g.q + uav),
        odd_budget: budget % 2 == 1,
    })
}

fn step(c: CellCoord, mv: Move) -> CellCoord {
    match mv {
        Move::Downwind => CellCoord::new(c.x + 1, c.y),
        Move::Upwind => CellCoord::new(c.x - 1, c.y),
        Move::Up => CellCoord::new(c.x, c.y + 1),
        Move::Down => CellCoord::new(c.x, c.y - 1),
    }
}

fn below(c: CellCoord) -> Option<CellCoord> {
    (c.y > 1).then(|| CellCoord::new(c.x, c.y - 1))
}

/// Greedy descent / downwind / climb loop.
///
/// Each iteration takes the first feasible of D, S, U. Climbs need budget,
/// must stay at or below the start row and may not outnumber descents (by at
/// least two when the budget started odd).
pub fn phase_one(mut st: PlannerState) -> (UavPath, PlannerState) {
    let mut cur = st.start;
    let mut path = UavPath::start_at(cur);
    st.free.remove(cur);
    for _ in 0..st.assigned {
        let down = below(cur).filter(|&c| st.free.contains(c) && st.crosswind_budget > 0);
        let (mv, next) = if let Some(next) = down {
            st.crosswind_budget -= 1;
            st.downs += 1;
            (Move::Down, next)
        } else if st.free.contains(step(cur, Move::Downwind)) {
            (Move::Downwind, step(cur, Move::Downwind))
        } else {
            let up = step(cur, Move::Up);
            let climb_limit = if st.odd_budget { st.ups + 1 < st.downs } else { st.ups < st.downs };
            if st.free.contains(up) && st.crosswind_budget > 0 && climb_limit && up.y <= st.start.y {
                st.crosswind_budget -= 1;
                st.ups += 1;
                (Move::Up, up)
            } else {
                // Nothing changes on a stuck iteration, so the rest are no-ops too.
                break;
            }
        };
        st.free.remove(next);
        path.push(mv, next);
        cur = next;
    }
    (path, st)
}

fn trailing_run(moves: &[Move], mv: Move) -> usize {
    moves.iter().rev().take_while(|&&m| m == mv).count()
}

/// Parity statistic of the downwind run preceding a trailing climb.
///
/// With a trailing climb `U*` preceded by a downwind run `S*`, this is
/// `|S*| - 1` when a descent comes right before `S*` and `|S*|` otherwise.
/// Zero when the path does not end in a climb.
pub fn h_value(p: &UavPath) -> u64 {
    let climb = trailing_run(&p.moves, Move::Up);
    if climb == 0 {
        return 0;
    }
    let head = &p.moves[..p.moves.len() - climb];
    let run = trailing_run(head, Move::Downwind);
    let before = head.len().checked_sub(run + 1).map(|i| head[i]);
    match before {
        Some(Move::Down) => run.saturating_sub(1) as u64,
        _ => run as u64,
    }
}

/// Truncates the trailing climb and refunds its cells and budget.
pub fn phase_two(mut p: UavPath, mut st: PlannerState) -> Result<(UavPath, PlannerState)> {
    let climb = trailing_run(&p.moves, Move::Up);
    if climb == 0 {
        return Err(Error::Consistency("phase two requires a path ending in up moves".into()));
    }
    let keep = p.moves.len() - climb;
    for c in p.cells.drain(keep + 1..) {
        st.free.insert(c);
    }
    p.moves.truncate(keep);
    st.crosswind_budget += climb as u64;
    st.ups -= climb as u64;
    Ok((p, st))
}

/// Spends an even crosswind budget on up/over/down detours.
///
/// Each round finds the first downwind move after the previous insertion that
/// follows an up or downwind move and whose origin has a free cell above it
/// within the start row. The downwind move becomes up, downwind, down. Since
/// the insertion point advances by original index only, a new round can match
/// the freshly inserted up/downwind pair and stack a two-wide tower.
pub fn phase_three(mut p: UavPath, mut st: PlannerState) -> Result<(UavPath, PlannerState)> {
    if st.crosswind_budget == 0 || st.crosswind_budget % 2 == 1 {
        return Err(Error::Precondition(format!(
            "phase three needs a positive even budget, got {}",
            st.crosswind_budget
        )));
    }
    let top = st.start.y;
    let mut last = 0usize;
    for _ in 0..st.crosswind_budget / 2 {
        let hit = (last + 1..p.moves.len()).find(|&i| {
            p.moves[i] == Move::Downwind
                && matches!(p.moves[i - 1], Move::Up | Move::Downwind)
                && {
                    let c = p.cells[i];
                    c.y < top && st.free.contains(CellCoord::new(c.x, c.y + 1))
                }
        });
        let Some(i) = hit else {
            // No match leaves the state untouched, so later rounds cannot match either.
            break;
        };
        let c = p.cells[i];
        let over = CellCoord::new(c.x, c.y + 1);
        let across = CellCoord::new(c.x + 1, c.y + 1);
        if !st.free.contains(across) {
            return Err(Error::Consistency(format!(
                "detour at {c} needs {across} free but it is already covered"
            )));
        }
        p.moves.splice(i..=i, [Move::Up, Move::Downwind, Move::Down]);
        p.cells.splice(i + 1..i + 1, [over, across]);
        st.free.remove(over);
        st.free.remove(across);
        st.crosswind_budget -= 2;
        st.ups += 1;
        st.downs += 1;
        last = i;
    }
    Ok((p, st))
}

/// Last-UAV sweep: climbs from the path end into free cells above it.
pub fn phase_four(mut p: UavPath, free: &mut CellSet) -> Result<UavPath> {
    for _ in 0..free.len() {
        let Some(end) = p.last() else { break };
        let up = CellCoord::new(end.x, end.y + 1);
        if free.remove(up) {
            p.push(Move::Up, up);
        }
    }
    if !free.is_empty() {
        let left: Vec<String> = free.iter().take(8).map(|c| c.to_string()).collect();
        return Err(Error::Feasibility(format!(
            "{} cell(s) left uncovered after the final sweep: {}",
            free.len(),
            left.join(" ")
        )));
    }
    Ok(p)
}

/// What the pipeline did for one UAV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct UavTrace {
    pub initial_budget: u64,
    pub budget_after_phase_one: u64,
    pub h_value: u64,
    pub truncated_climb: Option<u64>,
    /// Budget handed to phase three, after rounding an odd value up.
    pub detour_budget: u64,
    pub detours: u64,
    pub swept_up: u64,
}

/// Result of planning a single UAV.
#[derive(Debug, Clone, PartialEq)]
pub struct UavOutcome {
    pub path: UavPath,
    pub state: PlannerState,
    pub trace: UavTrace,
}

/// Runs the phase pipeline for UAV `uav` over `free`.
pub fn plan_uav(g: &GridSpec, uav: u32, free: CellSet) -> Result<UavOutcome> {
    let st = initial_settings(g, uav, free)?;
    let mut trace = UavTrace { initial_budget: st.crosswind_budget, ..UavTrace::default() };

    let (mut path, mut st) = phase_one(st);
    trace.budget_after_phase_one = st.crosswind_budget;
    trace.h_value = h_value(&path);
    if trace.h_value % 2 == 1 {
        let climb = trailing_run(&path.moves, Move::Up) as u64;
        (path, st) = phase_two(path, st)?;
        trace.truncated_climb = Some(climb);
    }
    if st.crosswind_budget % 2 == 1 {
        st.crosswind_budget += 1;
    }
    trace.detour_budget = st.crosswind_budget;
    if st.crosswind_budget > 0 {
        let before = path.len();
        (path, st) = phase_three(path, st)?;
        trace.detours = ((path.len() - before) / 2) as u64;
    }
    if uav == g.q && !st.free.is_empty() {
        let before = path.len();
        path = phase_four(path, &mut st.free)?;
        trace.swept_up = (path.len() - before) as u64;
    }
    Ok(UavOutcome { path, state: st, trace })
}

/// Gap between planner output and the lower bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GapClass {
    Zero,
    OneTp,
}

/// A full multi-UAV coverage plan.
#[derive(Debug, Clone, PartialEq)]
pub struct Plan {
    pub paths: Vec<UavPath>,
    pub mission_times: Vec<f64>,
    pub operation_time: f64,
    pub lb: f64,
    pub gap_class: GapClass,
}

impl Plan {
    /// Builds a plan from finished paths, recomputing times and the gap.
    pub fn from_paths(g: &GridSpec, t: &MoveTimes, paths: Vec<UavPath>) -> Result<Self> {
        let mission_times: Vec<f64> = paths.iter().map(|p| mission_time(p, t)).collect();
        let operation_time = mission_times.iter().copied().fold(0.0, f64::max);
        let lb = operation_lb(g.n, g.m, g.q, t)?;
        let gap_class = match gap_check(operation_time, lb, t.crosswind) {
            GapCheck::Zero => GapClass::Zero,
            GapCheck::OneTp => GapClass::OneTp,
            GapCheck::Violation => {
                return Err(Error::Consistency(format!(
                    "operation time {operation_time} is neither the lower bound {lb} nor one crosswind move above it"
                )))
            }
        };
        Ok(Self { paths, mission_times, operation_time, lb, gap_class })
    }
}

fn row_sweeps(g: &GridSpec) -> Vec<UavPath> {
    (1..=g.m)
        .map(|y| {
            let mut p = UavPath::start_at(CellCoord::new(1, y));
            for x in 2..=g.n {
                p.push(Move::Downwind, CellCoord::new(x, y));
            }
            p
        })
        .collect()
}

/// Plans all `q` UAVs and classifies the result against the lower bound.
///
/// With `q == m` every UAV simply sweeps its own row.
pub fn plan(g: &GridSpec, t: &MoveTimes) -> Result<Plan> {
    if g.q > g.n.min(g.m) {
        return Err(Error::Domain(format!("q exceeds min(n,m): q={}, n={}, m={}", g.q, g.n, g.m)));
    }
    if g.q == g.m {
        return Plan::from_paths(g, t, row_sweeps(g));
    }
    let mut free = CellSet::full(g.n, g.m);
    let mut paths = Vec::with_capacity(g.q as usize);
    for uav in 1..=g.q {
        let out = plan_uav(g, uav, free)?;
        free = out.state.free;
        paths.push(out.path);
    }
    if !free.is_empty() {
        return Err(Error::Feasibility(format!("{} cell(s) left uncovered", free.len())));
    }
    Plan::from_paths(g, t, paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::validate_paths;

    fn rounded() -> MoveTimes {
        MoveTimes::new(4.0, 5.16, 6.66).unwrap()
    }

    fn grid(n: u32, m: u32, q: u32) -> GridSpec {
        GridSpec::von_neumann(n, m, q).unwrap()
    }

    fn moves(s: &str) -> Vec<Move> {
        s.chars().map(|c| Move::from_label(c).unwrap()).collect()
    }

    fn label(p: &UavPath) -> String {
        p.moves.iter().map(|m| m.label()).collect()
    }

    #[test]
    fn initial_settings_examples() {
        let g = grid(11, 10, 3);
        let st = initial_settings(&g, 1, CellSet::full(11, 10)).unwrap();
        assert_eq!(st.start, CellCoord::new(1, 8));
        assert_eq!((st.assigned, st.crosswind_budget, st.odd_budget), (37, 26, false));

        let g = grid(13, 11, 4);
        let st = initial_settings(&g, 1, CellSet::full(13, 11)).unwrap();
        assert_eq!(st.start, CellCoord::new(1, 8));
        assert_eq!((st.assigned, st.crosswind_budget, st.odd_budget), (36, 23, true));

        let g = grid(6, 4, 1);
        let st = initial_settings(&g, 1, CellSet::full(6, 4)).unwrap();
        assert_eq!((st.start, st.assigned, st.crosswind_budget), (CellCoord::new(1, 4), 24, 18));

        assert!(initial_settings(&g, 2, CellSet::full(6, 4)).is_err());
    }

    #[test]
    fn phase_one_descends_sweeps_and_climbs() {
        let g = grid(11, 10, 3);
        let st = initial_settings(&g, 1, CellSet::full(11, 10)).unwrap();
        let (p, st) = phase_one(st);
        assert_eq!(label(&p), "D".repeat(7) + &"S".repeat(10) + &"U".repeat(7));
        assert_eq!(p.last(), Some(CellCoord::new(11, 8)));
        assert_eq!(st.crosswind_budget, 12);
        assert_eq!(h_value(&p), 9);
    }

    #[test]
    fn phase_one_small_cases() {
        let g = grid(2, 2, 1);
        let (p, st) = phase_one(initial_settings(&g, 1, CellSet::full(2, 2)).unwrap());
        assert_eq!(p.cells[0], CellCoord::new(1, 2));
        assert_eq!(label(&p), "DSU");
        assert!(st.free.is_empty());

        let g = grid(6, 1, 1);
        let (p, _) = phase_one(initial_settings(&g, 1, CellSet::full(6, 1)).unwrap());
        assert_eq!(label(&p), "SSSSS");
    }

    #[test]
    fn h_value_definition() {
        // 8x9, q=5 first UAV: seven downwind moves after a descent.
        let p = UavPath { cells: vec![], moves: moves(&("DDDD".to_owned() + &"S".repeat(7) + "UUUU")) };
        assert_eq!(h_value(&p), 6);
        let p = UavPath { cells: vec![], moves: moves("SSSSSSS") };
        assert_eq!(h_value(&p), 0);
        let p = UavPath { cells: vec![], moves: moves("SSU") };
        assert_eq!(h_value(&p), 2);
        let p = UavPath { cells: vec![], moves: moves("DSUSDSSU") };
        assert_eq!(h_value(&p), 1);
    }

    #[test]
    fn h_value_of_phase_one_on_reference_grids() {
        let g = grid(8, 9, 5);
        let (p, _) = phase_one(initial_settings(&g, 1, CellSet::full(8, 9)).unwrap());
        assert_eq!(h_value(&p), 6);
        let g = grid(8, 9, 8);
        let (p, _) = phase_one(initial_settings(&g, 1, CellSet::full(8, 9)).unwrap());
        assert_eq!(h_value(&p), 0);
    }

    #[test]
    fn phase_two_truncates_climb() {
        let g = grid(11, 10, 3);
        let (p, st) = phase_one(initial_settings(&g, 1, CellSet::full(11, 10)).unwrap());
        let free_before = st.free.len();
        let (p, st) = phase_two(p, st).unwrap();
        assert_eq!(label(&p), "D".repeat(7) + &"S".repeat(10));
        assert_eq!(st.crosswind_budget, 19);
        assert_eq!(st.free.len(), free_before + 7);
        assert_eq!(trailing_run(&p.moves, Move::Up), 0);

        let p = UavPath { cells: vec![CellCoord::new(1, 1), CellCoord::new(1, 2)], moves: vec![Move::Up] };
        let mut st = initial_settings(&grid(2, 2, 1), 1, CellSet::empty(2, 2)).unwrap();
        st.crosswind_budget = 0;
        st.ups = 1;
        let (p, st) = phase_two(p, st).unwrap();
        assert_eq!(p.cells, vec![CellCoord::new(1, 1)]);
        assert_eq!(st.crosswind_budget, 1);
        assert!(st.free.contains(CellCoord::new(1, 2)));

        let flat = UavPath::start_at(CellCoord::new(1, 1));
        assert!(phase_two(flat, st).is_err());
    }

    #[test]
    fn first_uav_of_three_on_eleven_by_ten() {
        let g = grid(11, 10, 3);
        let out = plan_uav(&g, 1, CellSet::full(11, 10)).unwrap();
        assert_eq!(out.trace.h_value, 9);
        assert_eq!(out.trace.truncated_climb, Some(7));
        assert_eq!(out.trace.detour_budget, 20);
        assert_eq!(out.trace.detours, 10);
        assert_eq!(out.path.len(), 38);
        assert!((mission_time(&out.path, &rounded()) - 179.32).abs() < 1e-9);

        let second = plan_uav(&g, 2, out.state.free).unwrap();
        assert_eq!(second.path.cells[0], CellCoord::new(1, 9));
        assert_eq!(second.trace.budget_after_phase_one, 12);
        assert_eq!(second.trace.h_value, 4);
        assert_eq!(second.trace.truncated_climb, None);
        assert_eq!(second.trace.detours, 6);
    }

    #[test]
    fn second_uav_phase_one_ends_at_eleven_nine() {
        let g = grid(11, 10, 3);
        let first = plan_uav(&g, 1, CellSet::full(11, 10)).unwrap();
        let (p, st) = phase_one(initial_settings(&g, 2, first.state.free).unwrap());
        assert_eq!(p.last(), Some(CellCoord::new(11, 9)));
        assert_eq!(st.crosswind_budget, 12);
    }

    #[test]
    fn phase_three_rejects_odd_or_empty_budget() {
        let g = grid(4, 4, 1);
        let mut st = initial_settings(&g, 1, CellSet::full(4, 4)).unwrap();
        let p = UavPath::start_at(CellCoord::new(1, 4));
        st.crosswind_budget = 3;
        assert!(matches!(phase_three(p.clone(), st.clone()), Err(Error::Precondition(_))));
        st.crosswind_budget = 0;
        assert!(phase_three(p, st).is_err());
    }

    #[test]
    fn phase_three_inserts_detour() {
        let g = grid(3, 2, 1);
        let mut free = CellSet::full(3, 2);
        let path = UavPath::from_cells(vec![CellCoord::new(1, 1), CellCoord::new(2, 1), CellCoord::new(3, 1)]).unwrap();
        for &c in &path.cells {
            free.remove(c);
        }
        let mut st = initial_settings(&g, 1, free).unwrap();
        st.start = CellCoord::new(1, 2);
        st.crosswind_budget = 2;
        let (p, st) = phase_three(path, st).unwrap();
        assert_eq!(label(&p), "SUSD");
        assert_eq!(p.cells[2], CellCoord::new(2, 2));
        assert_eq!(p.cells[3], CellCoord::new(3, 2));
        assert_eq!(st.crosswind_budget, 0);
        assert_eq!(st.free.iter().collect::<Vec<_>>(), vec![CellCoord::new(1, 2)]);
    }

    #[test]
    fn phase_four_climbs_into_last_cells() {
        let g = grid(13, 11, 4);
        let mut free = CellSet::full(13, 11);
        let mut last = None;
        for uav in 1..=4 {
            let st = initial_settings(&g, uav, free).unwrap();
            let (mut p, mut st) = phase_one(st);
            if h_value(&p) % 2 == 1 {
                (p, st) = phase_two(p, st).unwrap();
            }
            if st.crosswind_budget % 2 == 1 {
                st.crosswind_budget += 1;
            }
            if st.crosswind_budget > 0 {
                (p, st) = phase_three(p, st).unwrap();
            }
            free = st.free;
            last = Some(p);
        }
        assert_eq!(free.iter().collect::<Vec<_>>(), vec![CellCoord::new(13, 11)]);
        let p = last.unwrap();
        let before = p.len();
        let p = phase_four(p, &mut free).unwrap();
        assert_eq!(p.len(), before + 1);
        assert_eq!(p.last(), Some(CellCoord::new(13, 11)));
        assert_eq!(p.moves.last(), Some(&Move::Up));
    }

    #[test]
    fn phase_four_minimal_and_failure() {
        let mut free = CellSet::empty(3, 3);
        free.insert(CellCoord::new(3, 3));
        let p = UavPath::start_at(CellCoord::new(3, 2));
        let p = phase_four(p, &mut free).unwrap();
        assert_eq!(p.len(), 2);
        assert!(free.is_empty());

        let mut free = CellSet::empty(3, 3);
        free.insert(CellCoord::new(1, 3));
        let err = phase_four(UavPath::start_at(CellCoord::new(3, 2)), &mut free).unwrap_err();
        assert!(matches!(err, Error::Feasibility(_)));
    }

    #[test]
    fn plan_reference_instances() {
        let t = rounded();
        let p = plan(&grid(11, 10, 3), &t).unwrap();
        assert!((p.operation_time - 179.32).abs() < 1e-9);
        assert_eq!(p.gap_class, GapClass::OneTp);

        let p = plan(&grid(13, 11, 4), &t).unwrap();
        assert!((p.operation_time - 166.68).abs() < 1e-9);
        assert_eq!(p.gap_class, GapClass::Zero);

        let p = plan(&grid(50, 50, 2), &t).unwrap();
        assert!((p.operation_time - 6388.0).abs() < 1e-6);
        assert_eq!(p.gap_class, GapClass::Zero);
    }

    #[test]
    fn plan_rejects_too_many_uavs() {
        let g = GridSpec { n: 3, m: 3, q: 4, neighborhood: Default::default(), cell_pitch: 1.0 };
        assert!(matches!(plan(&g, &rounded()), Err(Error::Domain(_))));
    }

    #[test]
    fn row_sweep_when_every_row_has_a_uav() {
        let g = grid(7, 4, 4);
        let p = plan(&g, &rounded()).unwrap();
        assert!(p.paths.iter().all(|p| p.count(Move::Downwind) == 6 && p.len() == 7));
        assert_eq!(p.gap_class, GapClass::Zero);
        assert!(validate_paths(&p.paths, &g).is_ok());
    }

    #[test]
    fn single_uav_covers_everything() {
        for (n, m) in [(1, 1), (1, 5), (5, 1), (4, 7), (9, 3)] {
            let g = grid(n, m, 1);
            let p = plan(&g, &rounded()).unwrap();
            assert!(validate_paths(&p.paths, &g).is_ok(), "{n}x{m}");
        }
    }
}
