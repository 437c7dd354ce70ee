//! Batch evaluation of the planner over many instances, data-parallel when
//! the `parallel` feature is on and sequential otherwise.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ffg::{residual_shape, shape_flags};
use crate::grid::{CellSet, GridSpec};
use crate::nopp::{plan_uav, Plan};
use crate::timing::MoveTimes;
use crate::validate::{gap_check, validate_paths, GapCheck};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

/// Maps `f` over `items`, keeping input order. `Exec::Parallel` falls back to
/// a plain loop when the crate is built without `parallel`.
pub fn run<T, R, F>(items: &[T], exec: Exec, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// All `(n, m, q)` with `n, m` in `lo..=hi` and `1 <= q <= min(n, m)`.
pub fn instances(lo: u32, hi: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for n in lo..=hi {
        for m in lo..=hi {
            for q in 1..=n.min(m) {
                out.push((n, m, q));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub n: u32,
    pub m: u32,
    pub q: u32,
    pub operation_time: f64,
    pub lb: f64,
    pub gap: GapCheck,
    pub valid: bool,
    /// UAV indices (1-based) whose residual was not an FF-G2 shape.
    pub residual_failures: Vec<u32>,
    pub error: Option<String>,
}

impl CaseReport {
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.valid && self.gap != GapCheck::Violation && self.residual_failures.is_empty()
    }
}

fn plan_with_residuals(g: &GridSpec, t: &MoveTimes) -> Result<(Plan, Vec<u32>)> {
    if g.q == g.m {
        return Ok((crate::nopp::plan(g, t)?, Vec::new()));
    }
    let mut free = CellSet::full(g.n, g.m);
    let mut paths = Vec::with_capacity(g.q as usize);
    let mut failures = Vec::new();
    for uav in 1..=g.q {
        let out = plan_uav(g, uav, free)?;
        free = out.state.free;
        paths.push(out.path);
        if uav < g.q {
            let top = g.m - g.q + uav + 1;
            let ffg2 = residual_shape(&free, g.n, top).map(|s| shape_flags(&s).ffg2).unwrap_or(false);
            if !ffg2 {
                failures.push(uav);
            }
        }
    }
    Ok((Plan::from_paths(g, t, paths)?, failures))
}

/// Plans one instance and checks coverage, the gap and every residual shape.
pub fn check_instance(n: u32, m: u32, q: u32, t: &MoveTimes) -> CaseReport {
    let mut report = CaseReport {
        n,
        m,
        q,
        operation_time: f64::NAN,
        lb: f64::NAN,
        gap: GapCheck::Violation,
        valid: false,
        residual_failures: Vec::new(),
        error: None,
    };
    let outcome = GridSpec::von_neumann(n, m, q).and_then(|g| plan_with_residuals(&g, t).map(|r| (g, r)));
    match outcome {
        Ok((g, (plan, failures))) => {
            report.valid = validate_paths(&plan.paths, &g).is_ok();
            report.gap = gap_check(plan.operation_time, plan.lb, t.crosswind);
            report.operation_time = plan.operation_time;
            report.lb = plan.lb;
            report.residual_failures = failures;
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SweepSummary {
    pub instances: usize,
    pub zero: usize,
    pub one_tp: usize,
    pub failures: usize,
}

pub fn summarize(reports: &[CaseReport]) -> SweepSummary {
    let mut s = SweepSummary { instances: reports.len(), ..Default::default() };
    for r in reports {
        if !r.ok() {
            s.failures += 1;
        } else if r.gap == GapCheck::Zero {
            s.zero += 1;
        } else {
            s.one_tp += 1;
        }
    }
    s
}

/// Checks every instance of [`instances`]`(lo, hi)`.
pub fn gap_sweep(lo: u32, hi: u32, t: &MoveTimes, exec: Exec) -> Vec<CaseReport> {
    run(&instances(lo, hi), exec, |&(n, m, q)| check_instance(n, m, q, t))
}
