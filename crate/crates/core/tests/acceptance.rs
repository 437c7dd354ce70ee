//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria in `KNOWN_UNATTAINABLE` are evaluated exactly as stated and are
//! expected to report FAIL; the run fails if any other criterion fails or if
//! one of those starts passing.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uavcov::ffg::{classify, cover_ffg, FfgShape, ShapeClass};
use uavcov::oracle::{exact_solve, ExactOptions};
use uavcov::reference::{rounded_times, Suite, MISPRINTED_50X20};
use uavcov::sweep::{gap_sweep, summarize, Exec};
use uavcov::timing::{g_of_gamma, move_times, WindKinematics};
use uavcov::validate::validate_path;
use uavcov::{lemma1_optimum, min_uavs_for_budget, operation_lb, plan, GridSpec, MoveTimes};

const TABLE_TOL: f64 = 0.005;
const TP_TOL: f64 = 0.005;
const TO_TOL: f64 = 0.007;
const ORACLE_BUDGET: Duration = Duration::from_secs(60);
const SWEEP_BUDGET: Duration = Duration::from_secs(120);
const PLAN_BUDGET: Duration = Duration::from_secs(1);

/// Printed LB/Z for the 50 x 20, q = 6 row; the reference table carries the
/// lattice value instead.
const MISPRINT_CASE: (u32, u32, u32) = (50, 20, 6);

const KNOWN_UNATTAINABLE: &[&str] = &["ac02", "ac03", "ac07a"];

struct Outcome {
    id: &'static str,
    pass: bool,
    detail: String,
}

fn outcome(id: &'static str, pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { id, pass, detail: detail.into() }
}

fn printed(n: u32, m: u32, q: u32, value: f64) -> f64 {
    if (n, m, q) == MISPRINT_CASE {
        MISPRINTED_50X20
    } else {
        value
    }
}

fn ac01() -> Outcome {
    let t = move_times(&WindKinematics::new(20.0, 5.0, 100.0).unwrap()).unwrap();
    let pass = t.downwind == 4.0 && (t.crosswind - 5.164).abs() <= TP_TOL && (t.upwind - 6.667).abs() <= TO_TOL;
    outcome("ac01", pass, format!("Ts={} Tp={:.4} To={:.4}", t.downwind, t.crosswind, t.upwind))
}

fn all_cases() -> impl Iterator<Item = &'static uavcov::reference::ReferenceCase> {
    Suite::ALL.iter().flat_map(|s| s.cases())
}

fn ac02() -> Outcome {
    let t = rounded_times();
    let mut misses = Vec::new();
    let mut rows = 0;
    for c in all_cases() {
        rows += 1;
        let lb = operation_lb(c.n, c.m, c.q, &t).unwrap();
        let want = printed(c.n, c.m, c.q, c.lb);
        if (lb - want).abs() > TABLE_TOL {
            misses.push(format!("{} printed {want:.2} computed {lb:.2}", c.label()));
        }
    }
    outcome("ac02", misses.is_empty(), format!("{} rows, mismatches: [{}]", rows, misses.join("; ")))
}

/// The misprinted row cannot be any lattice value of the bound or of a plan
/// without upwind moves, and every other row matches.
fn ac02b() -> Outcome {
    let t = rounded_times();
    let (n, m, q) = MISPRINT_CASE;
    let lb = operation_lb(n, m, q, &t).unwrap();
    let base = f64::from(n - 1) * t.downwind;
    let steps = (MISPRINTED_50X20 - base) / t.crosswind;
    let off_lattice = (steps - steps.round()).abs() > 1e-6;
    // Every S/P mix a * 4 + b * 5.16 equal to the printed value needs a > n - 1
    // or too few cells.
    let cells = u64::from(n * m).div_ceil(u64::from(q));
    let feasible_mix = (0..=2000u64).any(|b| {
        let a = (MISPRINTED_50X20 - b as f64 * t.crosswind) / t.downwind;
        a >= 0.0 && (a - a.round()).abs() < 1e-6 && a.round() as u64 <= u64::from(n - 1) && a.round() as u64 + b + 1 >= cells
    });
    let others = all_cases()
        .filter(|c| (c.n, c.m, c.q) != MISPRINT_CASE)
        .all(|c| (operation_lb(c.n, c.m, c.q, &t).unwrap() - c.lb).abs() <= TABLE_TOL);
    let pass = others && off_lattice && !feasible_mix && ((lb - MISPRINTED_50X20) - 20.0).abs() < 1e-9;
    outcome(
        "ac02b",
        pass,
        format!("other rows match; {n}x{m} q={q}: computed {lb:.2}, printed {MISPRINTED_50X20:.2} is off-lattice by 20.00"),
    )
}

fn ac03() -> Outcome {
    let t = rounded_times();
    let mut misses = Vec::new();
    for c in all_cases() {
        let g = GridSpec::von_neumann(c.n, c.m, c.q).unwrap();
        let p = plan(&g, &t).unwrap();
        let z_want = printed(c.n, c.m, c.q, c.z_nopp);
        let gap = p.operation_time - p.lb;
        if (p.operation_time - z_want).abs() > TABLE_TOL || (gap - c.absolute_gap).abs() > TABLE_TOL {
            misses.push(format!("{} printed Z {z_want:.2} computed {:.2}", c.label(), p.operation_time));
        }
    }
    outcome("ac03", misses.is_empty(), format!("mismatches: [{}]", misses.join("; ")))
}

/// Hard floor: every row lands in {LB, LB + Tp}, and all rows but the
/// misprinted one match the table exactly.
fn ac03b() -> Outcome {
    let t = rounded_times();
    let mut bad = Vec::new();
    for c in all_cases() {
        let g = GridSpec::von_neumann(c.n, c.m, c.q).unwrap();
        let p = plan(&g, &t).unwrap();
        let gap = p.operation_time - p.lb;
        let in_set = gap.abs() <= TABLE_TOL || (gap - t.crosswind).abs() <= TABLE_TOL;
        let exact = (p.operation_time - c.z_nopp).abs() <= TABLE_TOL && (gap - c.absolute_gap).abs() <= TABLE_TOL;
        if !in_set || !exact {
            bad.push(c.label());
        }
    }
    outcome("ac03b", bad.is_empty(), format!("gap set and table match (misprint corrected); bad: {bad:?}"))
}

fn ac04() -> Outcome {
    let t = rounded_times();
    let mut lines = Vec::new();
    let mut pass = true;
    for c in Suite::Small.cases().iter().filter(|c| c.optimum.is_some()) {
        let g = GridSpec::von_neumann(c.n, c.m, c.q).unwrap();
        let start = Instant::now();
        let r = exact_solve(&g, &t, ExactOptions { time_limit: Some(ORACLE_BUDGET), ..Default::default() }).unwrap();
        let took = start.elapsed();
        let ok = r.certified && (r.optimum - c.optimum.unwrap()).abs() <= TABLE_TOL && took <= ORACLE_BUDGET;
        pass &= ok;
        lines.push(format!("{} {:.2} {:.3}s", c.label(), r.optimum, took.as_secs_f64()));
    }
    outcome("ac04", pass && lines.len() == 6, lines.join(", "))
}

fn ac05_and_ac06(sweep: &[uavcov::sweep::CaseReport], took: Duration) -> (Outcome, bool) {
    let s = summarize(sweep);
    let valid = sweep.iter().all(|r| r.error.is_none() && r.valid && r.gap != uavcov::validate::GapCheck::Violation);
    let residual_ok = sweep.iter().all(|r| r.residual_failures.is_empty());
    let pass = valid && s.instances == sweep.len() && took <= SWEEP_BUDGET;
    (
        outcome(
            "ac05",
            pass,
            format!("{} instances, {} zero, {} one_tp, {:.1}s", s.instances, s.zero, s.one_tp, took.as_secs_f64()),
        ),
        residual_ok,
    )
}

fn random_ffg(rng: &mut ChaCha8Rng) -> FfgShape {
    loop {
        let k = rng.gen_range(1..=8u32);
        let valleys = if k == 1 { 1 } else { rng.gen_range(1..=5) };
        let mut heights = Vec::new();
        let mut prev = 0;
        for v in 0..valleys {
            let len = if v == 0 || v == valleys - 1 { rng.gen_range(1..=3) } else { 2 * rng.gen_range(1..=2) };
            let mut depth = rng.gen_range(1..=k);
            while depth == prev {
                depth = rng.gen_range(1..=k);
            }
            prev = depth;
            heights.extend(std::iter::repeat_n(depth, len));
        }
        if heights.len() <= 12 && heights.contains(&k) {
            return FfgShape::new(heights).unwrap();
        }
    }
}

fn ac06(residual_ok: bool, instances: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut covered = 0;
    for _ in 0..500 {
        let s = random_ffg(&mut rng);
        let ok = classify(&s) != ShapeClass::NotFfg
            && cover_ffg(&s).is_ok_and(|p| {
                let g = GridSpec::von_neumann(s.r, s.k, 1).unwrap();
                validate_path(&p, &g).is_ok() && p.len() as u64 == s.cell_count()
            });
        covered += usize::from(ok);
    }
    outcome(
        "ac06",
        covered == 500 && residual_ok,
        format!("{covered}/500 shapes covered; residuals FF-G2 across {instances} instances: {residual_ok}"),
    )
}

fn random_kinematics(rng: &mut ChaCha8Rng) -> MoveTimes {
    let va = rng.gen_range(1.0..60.0);
    let vw = va * rng.gen_range(0.0..0.99);
    move_times(&WindKinematics::new(va, vw, 100.0).unwrap()).unwrap()
}

fn ac07a() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut holds = 0;
    let mut tb_over_to = 0;
    for _ in 0..1000 {
        let t = random_kinematics(&mut rng);
        holds += usize::from(t.moore_ordering_holds() == Some(true));
        tb_over_to += usize::from(t.diag_upwind.unwrap() > t.upwind);
    }
    outcome(
        "ac07a",
        holds == 1000,
        format!("Ts<Tf<Tp<Tb<To held in {holds}/1000; Tb>To in {tb_over_to}/1000"),
    )
}

fn ac07b() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut ok = 0;
    for _ in 0..1000 {
        let t = random_kinematics(&mut rng);
        let tb = t.diag_upwind.unwrap();
        let chain = t.downwind <= t.crosswind && t.crosswind <= t.upwind;
        ok += usize::from(chain && t.downwind + t.upwind >= 2.0 * t.crosswind && t.downwind + tb > 2.0 * t.crosswind);
    }
    let grid: Vec<f64> = (1..=1000).map(|i| f64::from(i) / 1001.0).collect();
    let g: Vec<f64> = grid.iter().map(|&x| g_of_gamma(x).unwrap()).collect();
    let positive = g.iter().all(|&v| v > 0.0);
    let increasing = g.windows(2).all(|w| w[1] > w[0]);
    outcome(
        "ac07b",
        ok == 1000 && positive && increasing,
        format!("Ts+To>=2Tp and Ts+Tb>2Tp in {ok}/1000; g>0 {positive}, increasing {increasing}"),
    )
}

fn ac08() -> Outcome {
    let t = rounded_times();
    let g = GridSpec::von_neumann(100, 100, 2).unwrap();
    let start = Instant::now();
    let p = plan(&g, &t).unwrap();
    let took = start.elapsed();
    let mut walls = Vec::new();
    for c in Suite::Large.cases() {
        let g = GridSpec::von_neumann(c.n, c.m, c.q).unwrap();
        let s = Instant::now();
        plan(&g, &t).unwrap();
        walls.push(format!("{} {:.3}s", c.label(), s.elapsed().as_secs_f64()));
    }
    outcome(
        "ac08",
        took <= PLAN_BUDGET && (p.operation_time - 25680.0).abs() <= TABLE_TOL,
        format!("plan(100,100,2) {:.3}s; large suite: {}", took.as_secs_f64(), walls.join(", ")),
    )
}

fn ac09() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut agree = 0;
    for _ in 0..200 {
        let (a, b, k) = loop {
            let (a, b, k) =
                (f64::from(rng.gen_range(0..20u32)), f64::from(rng.gen_range(0..30u32)), f64::from(rng.gen_range(0..40u32)));
            if a <= b && b <= k && a + k >= 2.0 * b {
                break (a, b, k);
            }
        };
        let h = rng.gen_range(0..40u32);
        let n = rng.gen_range(0..=h);
        let mut best = f64::INFINITY;
        for x1 in 0..=h {
            for x3 in 0..=h - x1 {
                if i64::from(x1) - i64::from(x3) <= i64::from(n) {
                    best = best.min(a * f64::from(x1) + b * f64::from(h - x1 - x3) + k * f64::from(x3));
                }
            }
        }
        let mix = lemma1_optimum(a, b, k, f64::from(h), f64::from(n)).unwrap();
        agree += usize::from(mix.objective == best);
    }
    outcome("ac09", agree == 200, format!("{agree}/200 exact agreements"))
}

fn ac10() -> Outcome {
    let t = MoveTimes::new(4.0, 5.16, 6.66).unwrap();
    let q = min_uavs_for_budget(100, 100, 3600.0, &t).unwrap();
    let scan = (1..=100).find(|&q| operation_lb(100, 100, q, &t).unwrap() <= 3600.0);
    outcome("ac10", q == 14 && scan == Some(14), format!("closed form {q}, scan {scan:?}"))
}

fn main() -> ExitCode {
    let t = rounded_times();
    let start = Instant::now();
    let sweep = gap_sweep(2, 30, &t, Exec::Parallel);
    let took = start.elapsed();
    let (o5, residual_ok) = ac05_and_ac06(&sweep, took);

    let outcomes = vec![
        ac01(),
        ac02(),
        ac02b(),
        ac03(),
        ac03b(),
        ac04(),
        o5,
        ac06(residual_ok, sweep.len()),
        ac07a(),
        ac07b(),
        ac08(),
        ac09(),
        ac10(),
    ];

    let mut ok = true;
    for o in &outcomes {
        let known = KNOWN_UNATTAINABLE.contains(&o.id);
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = if known && !o.pass { " (known unattainable)" } else { "" };
        println!("{tag} {}: {}{note}", o.id, o.detail);
        ok &= o.pass != known;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
