use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use crate::bounds::{operation_lb, path_time_lb};
use crate::error::{Error, Result};
use crate::grid::{CellCoord, GridSpec, Neighborhood};
use crate::nopp;
use crate::path::UavPath;
use crate::timing::MoveTimes;

pub const DEFAULT_CELL_CAP: usize = 30;

const TOL: f64 = 1e-9;
const CLOCK_EVERY: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactOptions {
    /// `None` searches to completion.
    pub time_limit: Option<Duration>,
    /// Largest `n * m` accepted; at most 64.
    pub cap: usize,
    /// Stop as soon as a plan meets the lower bound. Turning this off forces
    /// an exhaustive proof.
    pub stop_at_bound: bool,
    /// Start from the constructive plan rather than from no incumbent.
    pub seed_with_planner: bool,
}

impl Default for ExactOptions {
    fn default() -> Self {
        Self { time_limit: Some(Duration::from_secs(60)), cap: DEFAULT_CELL_CAP, stop_at_bound: true, seed_with_planner: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactResult {
    pub optimum: f64,
    /// True when the search closed: either it finished or it met the lower bound.
    pub certified: bool,
    /// A plan achieving `optimum`. Among equal-time optima the one returned
    /// may vary between parallel runs.
    pub witness: Vec<UavPath>,
    pub nodes: u64,
}

/// Move counts `(downwind, crosswind, upwind)` of a partial path.
#[derive(Debug, Clone, Copy, Default)]
struct Counts(u32, u32, u32);

struct Shared {
    incumbent: AtomicU64,
    stop: AtomicBool,
    timed_out: AtomicBool,
    witness: Mutex<Vec<Vec<u8>>>,
    nodes: AtomicU64,
}

impl Shared {
    fn best(&self) -> f64 {
        f64::from_bits(self.incumbent.load(Ordering::Relaxed))
    }
}

struct Instance<'a> {
    n: u32,
    m: u32,
    q: u32,
    cells: usize,
    full: u64,
    nbr: Vec<u64>,
    t: &'a MoveTimes,
    lb: f64,
    stop_at_bound: bool,
    deadline: Option<Instant>,
}

impl Instance<'_> {
    fn x_of(&self, i: u8) -> u32 {
        u32::from(i) / self.m + 1
    }

    fn coord(&self, i: u8) -> CellCoord {
        CellCoord::new(self.x_of(i), u32::from(i) % self.m + 1)
    }

    fn index(&self, c: CellCoord) -> u8 {
        ((c.x - 1) * self.m + (c.y - 1)) as u8
    }

    fn time(&self, c: Counts) -> f64 {
        self.t.eval(u64::from(c.0), u64::from(c.1), u64::from(c.2))
    }

    fn step(&self, c: Counts, from: u8, to: u8) -> Counts {
        let (f, t) = (u32::from(from), u32::from(to));
        if t == f + self.m {
            Counts(c.0 + 1, c.1, c.2)
        } else if t + self.m == f {
            Counts(c.0, c.1, c.2 + 1)
        } else {
            Counts(c.0, c.1 + 1, c.2)
        }
    }

    fn fresh_lb(&self, cells: u64) -> f64 {
        if cells == 0 {
            0.0
        } else {
            path_time_lb(cells, u64::from(self.n), self.t).unwrap_or(0.0)
        }
    }

    /// Best achievable objective given the head position, its current time
    /// and `fresh` unused UAVs for the `remaining` free cells.
    fn completion_bound(&self, head: u8, cur: f64, remaining: u64, fresh: u64) -> f64 {
        let reach = u64::from(self.n - self.x_of(head));
        let ext = |e: u64| {
            if e <= reach {
                e as f64 * self.t.downwind
            } else {
                reach as f64 * self.t.downwind + (e - reach) as f64 * self.t.crosswind
            }
        };
        if fresh == 0 {
            return cur + ext(remaining);
        }
        (0..=remaining)
            .map(|e| (cur + ext(e)).max(self.fresh_lb((remaining - e).div_ceil(fresh))))
            .fold(f64::INFINITY, f64::min)
    }

    fn components(&self, free: u64) -> u32 {
        let mut left = free;
        let mut count = 0;
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            loop {
                let mut grown = comp;
                let mut bits = comp;
                while bits != 0 {
                    let i = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    grown |= self.nbr[i];
                }
                grown &= free;
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            left &= !comp;
            count += 1;
        }
        count
    }

    /// Free cells that can only be a path end point.
    fn dead_ends(&self, free: u64, head: u8) -> u32 {
        let near_head = self.nbr[head as usize];
        let mut bits = free;
        let mut count = 0;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let degree = (self.nbr[i] & free).count_ones() + u32::from(near_head >> i & 1 == 1);
            if degree <= 1 {
                count += 1;
            }
        }
        count
    }
}

struct Worker<'a> {
    inst: &'a Instance<'a>,
    shared: &'a Shared,
    paths: Vec<Vec<u8>>,
    nodes: u64,
}

impl Worker<'_> {
    fn record(&self, value: f64) {
        let prev = self.shared.incumbent.fetch_min(value.to_bits(), Ordering::Relaxed);
        if value.to_bits() < prev {
            let mut w = self.shared.witness.lock().unwrap_or_else(|e| e.into_inner());
            if value <= self.shared.best() {
                *w = self.paths.clone();
            }
            if self.inst.stop_at_bound && value <= self.inst.lb + TOL {
                self.shared.stop.store(true, Ordering::Relaxed);
            }
        }
    }

    fn node(&mut self, k: u32, head: u8, start: u8, cnt: Counts, max_done: f64, free: u64) {
        self.nodes += 1;
        if self.nodes.is_multiple_of(CLOCK_EVERY) {
            if let Some(d) = self.inst.deadline {
                if Instant::now() >= d {
                    self.shared.timed_out.store(true, Ordering::Relaxed);
                    self.shared.stop.store(true, Ordering::Relaxed);
                }
            }
        }
        if self.shared.stop.load(Ordering::Relaxed) {
            return;
        }
        let inst = self.inst;
        let best = self.shared.best();
        let now = max_done.max(inst.time(cnt));
        if now >= best - TOL {
            return;
        }
        let remaining = u64::from(free.count_ones());
        if remaining == 0 {
            self.record(now);
            return;
        }
        let fresh = inst.q - 1 - k;
        let bound = max_done.max(inst.completion_bound(head, inst.time(cnt), remaining, u64::from(fresh)));
        if bound >= best - TOL {
            return;
        }
        let head_open = inst.nbr[head as usize] & free != 0;
        if inst.components(free) > fresh + u32::from(head_open) {
            return;
        }
        if inst.dead_ends(free, head) > 2 * fresh + 1 {
            return;
        }

        // Extend: downwind, up, down, upwind.
        let h = u32::from(head);
        let candidates = [
            (h + inst.m < inst.cells as u32).then(|| h + inst.m),
            (h % inst.m + 1 < inst.m).then(|| h + 1),
            (h % inst.m > 0).then(|| h.wrapping_sub(1)),
            (h >= inst.m).then(|| h - inst.m),
        ];
        for next in candidates.into_iter().flatten() {
            let next = next as u8;
            if free >> next & 1 == 1 {
                self.paths[k as usize].push(next);
                self.node(k, next, start, inst.step(cnt, head, next), max_done, free & !(1u64 << next));
                self.paths[k as usize].pop();
            }
        }

        // Close this path and launch the next UAV from a later start cell.
        if fresh > 0 {
            let mut later = free & (u64::MAX << start << 1);
            while later != 0 {
                let s = later.trailing_zeros() as u8;
                later &= later - 1;
                self.paths.push(vec![s]);
                self.node(k + 1, s, s, Counts::default(), now, free & !(1u64 << s));
                self.paths.pop();
            }
        }
    }
}

/// Optimal operation time over `q` vertex-disjoint paths covering the grid.
///
/// Von Neumann grids only. The incumbent starts from the constructive
/// planner, and the search stops as soon as it meets the lower bound.
pub fn exact_solve(g: &GridSpec, t: &MoveTimes, opts: ExactOptions) -> Result<ExactResult> {
    if g.neighborhood != Neighborhood::VonNeumann {
        return Err(Error::Domain("exact search supports Von Neumann grids only".into()));
    }
    if opts.cap > 64 {
        return Err(Error::Domain(format!("cell cap {} exceeds 64", opts.cap)));
    }
    let cells = g.cell_count();
    if cells > opts.cap {
        return Err(Error::CapExceeded { cells, cap: opts.cap });
    }
    let lb = operation_lb(g.n, g.m, g.q, t)?;
    let (seed_time, seed_paths) = if opts.seed_with_planner {
        let seed = nopp::plan(g, t)?;
        let mut paths = seed.paths;
        paths.resize(g.q as usize, UavPath::default());
        (seed.operation_time, paths)
    } else {
        (f64::INFINITY, Vec::new())
    };
    if opts.stop_at_bound && seed_time <= lb + TOL {
        return Ok(ExactResult { optimum: seed_time, certified: true, witness: seed_paths, nodes: 0 });
    }

    let mut nbr = vec![0u64; cells];
    let inst_coords: Vec<CellCoord> = g.cells().collect();
    let full = if cells == 64 { u64::MAX } else { (1u64 << cells) - 1 };
    let mut inst = Instance {
        n: g.n,
        m: g.m,
        q: g.q,
        cells,
        full,
        nbr: Vec::new(),
        t,
        lb,
        stop_at_bound: opts.stop_at_bound,
        deadline: opts.time_limit.map(|d| Instant::now() + d),
    };
    for &c in &inst_coords {
        let i = inst.index(c);
        for nb in g.neighbors(c)? {
            nbr[i as usize] |= 1u64 << inst.index(nb);
        }
    }
    inst.nbr = nbr;

    let shared = Shared {
        incumbent: AtomicU64::new(seed_time.to_bits()),
        stop: AtomicBool::new(false),
        timed_out: AtomicBool::new(false),
        witness: Mutex::new(Vec::new()),
        nodes: AtomicU64::new(0),
    };

    let run = |s: u8| {
        let mut w = Worker { inst: &inst, shared: &shared, paths: vec![vec![s]], nodes: 0 };
        w.node(0, s, s, Counts::default(), 0.0, inst.full & !(1u64 << s));
        shared.nodes.fetch_add(w.nodes, Ordering::Relaxed);
    };
    let starts: Vec<u8> = (0..cells as u8).collect();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        starts.par_iter().for_each(|&s| run(s));
    }
    #[cfg(not(feature = "parallel"))]
    starts.iter().for_each(|&s| run(s));

    let optimum = shared.best();
    let found = shared.witness.into_inner().unwrap_or_else(|e| e.into_inner());
    let witness = if found.is_empty() {
        seed_paths
    } else {
        let mut paths: Vec<UavPath> = found
            .iter()
            .map(|p| UavPath::from_cells(p.iter().map(|&i| inst.coord(i)).collect()))
            .collect::<Result<_>>()?;
        paths.resize(g.q as usize, UavPath::default());
        paths
    };
    Ok(ExactResult {
        optimum,
        certified: !shared.timed_out.load(Ordering::Relaxed),
        witness,
        nodes: shared.nodes.load(Ordering::Relaxed),
    })
}
