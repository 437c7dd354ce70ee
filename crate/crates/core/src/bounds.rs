//! Lower bounds on path and operation time, and fleet sizing from a budget.

use crate::error::{Error, Result};
use crate::timing::MoveTimes;

/// Cells the busiest UAV must cover when `cells` are split over `uavs`.
pub fn max_load(cells: u64, uavs: u64) -> u64 {
    cells.div_ceil(uavs)
}

/// Fastest possible time to fly a path of `cells` cells on a grid `n` cells
/// long: straight downwind while it fits, crosswind for the remainder.
pub fn path_time_lb(cells: u64, n: u64, t: &MoveTimes) -> Result<f64> {
    if cells < 1 {
        return Err(Error::Domain("path must contain at least one cell".into()));
    }
    if n < 1 {
        return Err(Error::Domain("grid length must be at least 1".into()));
    }
    Ok(if cells <= n {
        (cells - 1) as f64 * t.downwind
    } else {
        (n - 1) as f64 * t.downwind + (cells - n) as f64 * t.crosswind
    })
}

/// Operation-time lower bound for `q` UAVs on an `n x m` grid:
/// `(n-1) Ts + (ceil(nm/q) - n) Tp`.
pub fn operation_lb(n: u32, m: u32, q: u32, t: &MoveTimes) -> Result<f64> {
    if n == 0 || m == 0 {
        return Err(Error::Domain(format!("grid must be at least 1x1, got {n}x{m}")));
    }
    if q == 0 || q > m {
        return Err(Error::Domain(format!("q must satisfy 1 <= q <= m, got q={q}, m={m}")));
    }
    let load = max_load(u64::from(n) * u64::from(m), u64::from(q));
    path_time_lb(load, u64::from(n), t)
}

/// Minimizer of `A x1 + B x2 + K x3` subject to `x1 - x3 <= N`,
/// `x1 + x2 + x3 = H`, `x >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoveMix {
    pub downwind: f64,
    pub crosswind: f64,
    pub upwind: f64,
    pub objective: f64,
}

/// Closed-form optimum `(N, H - N, 0)` of the move-mix program.
///
/// Requires non-negative inputs with `A <= B <= K`, `A + K >= 2B` and `H >= N`.
pub fn lemma1_optimum(a: f64, b: f64, k: f64, h: f64, n: f64) -> Result<MoveMix> {
    if ![a, b, k, h, n].iter().all(|v| v.is_finite() && *v >= 0.0) {
        return Err(Error::Precondition("all coefficients must be finite and non-negative".into()));
    }
    if !(a <= b && b <= k) {
        return Err(Error::Precondition(format!("need A <= B <= K, got ({a}, {b}, {k})")));
    }
    if a + k < 2.0 * b {
        return Err(Error::Precondition(format!("need A + K >= 2B, got ({a}, {b}, {k})")));
    }
    if h < n {
        return Err(Error::Precondition(format!("need H >= N, got H={h}, N={n}")));
    }
    Ok(MoveMix { downwind: n, crosswind: h - n, upwind: 0.0, objective: a * n + b * (h - n) })
}

/// Smallest fleet whose operation-time lower bound fits within `budget`.
///
/// This inverts the bound; it does not promise that the planner meets the
/// budget, which may need one extra crosswind move.
pub fn min_uavs_for_budget(n: u32, m: u32, budget: f64, t: &MoveTimes) -> Result<u32> {
    if n == 0 || m == 0 {
        return Err(Error::Domain(format!("grid must be at least 1x1, got {n}x{m}")));
    }
    if !budget.is_finite() {
        return Err(Error::Domain(format!("budget must be finite, got {budget}")));
    }
    let tol = 1e-9 * budget.abs().max(1.0);
    let fits = |q: u32| operation_lb(n, m, q, t).map(|lb| lb <= budget + tol);

    let floor_time = f64::from(n - 1) * t.downwind;
    if budget + tol < floor_time {
        return Err(Error::Infeasible(format!(
            "budget {budget} s is below the {floor_time} s needed to cross the grid downwind"
        )));
    }
    // Longest path that fits the budget, then the fewest UAVs whose max load fits.
    let slack = ((budget - floor_time) / t.crosswind + 1e-9).floor();
    let cells = u64::from(n) * u64::from(m);
    let longest = (u64::from(n) + slack.min(cells as f64) as u64).min(cells);
    let guess = cells.div_ceil(longest).clamp(1, u64::from(m)) as u32;

    // Guard the float inversion with exact checks on either side.
    let mut q = guess;
    while q > 1 && fits(q - 1)? {
        q -= 1;
    }
    while q <= m && !fits(q)? {
        q += 1;
    }
    if q > m {
        return Err(Error::Infeasible(format!("no q <= {m} meets the budget {budget} s")));
    }
    Ok(q)
}
