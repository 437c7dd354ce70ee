use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use uavcov::bounds::{min_uavs_for_budget, operation_lb};
use uavcov::oracle::{emit_mip, exact_solve, ExactOptions, DEFAULT_CELL_CAP};
use uavcov::reference::{rounded_times, Suite};
use uavcov::schema::{InstanceDoc, PlanDoc};
use uavcov::svg::render_svg;
use uavcov::sweep::{run, Exec};
use uavcov::validate::{gap_check, mission_time, validate_paths, GapCheck};
use uavcov::{plan, GridSpec, MoveTimes, Neighborhood};

/// Minimal-time coverage planning for UAV fleets in a uniform wind.
///
/// The grid's x axis runs downwind. Move times come either from physical
/// parameters (--airspeed, --wind-speed, --cell-size; full precision) or from
/// --move-times Ts,Tp,To, which reproduces rounded published arithmetic such
/// as 4,5.16,6.66.
#[derive(Parser)]
#[command(name = "uavcov", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan all UAV paths and write the plan as JSON.
    Plan {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG rendering here.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Print the operation-time lower bound.
    Lb {
        #[command(flatten)]
        instance: InstanceArgs,
    },
    /// Print the smallest fleet whose lower bound fits a time budget.
    MinUavs {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Time budget in seconds.
        #[arg(long)]
        budget: f64,
    },
    /// Check a plan file; exits 1 with the violation list if it is broken.
    Validate {
        plan: PathBuf,
    },
    /// Run a published benchmark suite and write CSV.
    Bench {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Leave the wall_time_s column empty so output is byte-stable.
        #[arg(long)]
        no_timing: bool,
        /// Run cases one after another instead of in parallel.
        #[arg(long)]
        sequential: bool,
    },
    /// Write the step-indexed MIP model in LP format.
    EmitMip {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a small instance exactly.
    Oracle {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Seconds before returning the best plan found, uncertified.
        #[arg(long, default_value_t = 60.0)]
        time_limit: f64,
        /// Largest n*m accepted (at most 64).
        #[arg(long, default_value_t = DEFAULT_CELL_CAP)]
        cap: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Small,
    Medium,
    Large,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Small => Suite::Small,
            SuiteArg::Medium => Suite::Medium,
            SuiteArg::Large => Suite::Large,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum NeighborhoodArg {
    VonNeumann,
    Moore,
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance JSON file; flags given alongside override its fields.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Grid length along the wind.
    #[arg(long)]
    n: Option<u32>,
    /// Grid width across the wind.
    #[arg(long)]
    m: Option<u32>,
    /// Number of UAVs.
    #[arg(long)]
    q: Option<u32>,
    #[arg(long, value_enum)]
    neighborhood: Option<NeighborhoodArg>,
    /// Ts,Tp,To in seconds; overrides the physical parameters.
    #[arg(long, value_parser = parse_times)]
    move_times: Option<[f64; 3]>,
    /// Airspeed in m/s.
    #[arg(long)]
    airspeed: Option<f64>,
    /// Wind speed in m/s.
    #[arg(long)]
    wind_speed: Option<f64>,
    /// Cell side in metres.
    #[arg(long)]
    cell_size: Option<f64>,
}

fn parse_times(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("'{p}': {e}")))
        .collect::<Result<_, _>>()?;
    <[f64; 3]>::try_from(parts).map_err(|v| format!("expected Ts,Tp,To, got {} value(s)", v.len()))
}

/// Exit-code class of a failure.
enum Failure {
    Usage(anyhow::Error),
    Domain(anyhow::Error),
}

impl From<uavcov::Error> for Failure {
    fn from(e: uavcov::Error) -> Self {
        Failure::Domain(e.into())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(e.into())
    }
}

type CmdResult = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(anyhow!(msg.into()))
}

impl InstanceArgs {
    fn doc(&self, need_q: bool) -> Result<InstanceDoc, Failure> {
        let base = match &self.instance {
            Some(path) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()));
                let text = text.map_err(Failure::Domain)?;
                Some(
                    serde_json::from_str::<InstanceDoc>(&text)
                        .with_context(|| format!("parsing {}", path.display()))
                        .map_err(Failure::Usage)?,
                )
            }
            None => None,
        };
        let pick = |flag: Option<u32>, from: Option<u32>, name: &str| {
            flag.or(from).ok_or_else(|| usage(format!("--{name} is required")))
        };
        let n = pick(self.n, base.as_ref().map(|b| b.n), "n")?;
        let m = pick(self.m, base.as_ref().map(|b| b.m), "m")?;
        let q = if need_q { pick(self.q, base.as_ref().map(|b| b.q), "q")? } else { self.q.unwrap_or(1) };
        let neighborhood = match self.neighborhood {
            Some(NeighborhoodArg::VonNeumann) => Neighborhood::VonNeumann,
            Some(NeighborhoodArg::Moore) => Neighborhood::Moore,
            None => base.as_ref().map(|b| b.neighborhood).unwrap_or_default(),
        };
        let doc = InstanceDoc {
            n,
            m,
            q,
            neighborhood,
            airspeed: self.airspeed.or(base.as_ref().and_then(|b| b.airspeed)),
            wind_speed: self.wind_speed.or(base.as_ref().and_then(|b| b.wind_speed)),
            cell_size: self.cell_size.or(base.as_ref().and_then(|b| b.cell_size)),
            move_times: self.move_times.or(base.as_ref().and_then(|b| b.move_times)),
        };
        let physical = [doc.airspeed, doc.wind_speed, doc.cell_size];
        if doc.move_times.is_none() && physical.iter().any(Option::is_none) {
            return Err(usage("give --move-times Ts,Tp,To or all of --airspeed, --wind-speed and --cell-size"));
        }
        Ok(doc)
    }
}

fn write_output(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plan documents serialize");
    s.push('\n');
    s
}

fn cmd_plan(args: &InstanceArgs, out: Option<&Path>, svg: Option<&Path>) -> CmdResult {
    let doc = args.doc(true)?;
    let g = doc.grid()?;
    let t = doc.times()?;
    let p = plan(&g, &t)?;
    if let Some(path) = svg {
        fs::write(path, render_svg(&g, &p.paths))?;
    }
    write_output(out, &pretty(&PlanDoc::new(doc, &t, &p)))?;
    Ok(())
}

fn cmd_lb(args: &InstanceArgs) -> CmdResult {
    let doc = args.doc(true)?;
    let t = doc.times()?;
    let lb = operation_lb(doc.n, doc.m, doc.q, &t)?;
    println!("{}", json!({ "n": doc.n, "m": doc.m, "q": doc.q, "lb": lb }));
    Ok(())
}

fn cmd_min_uavs(args: &InstanceArgs, budget: f64) -> CmdResult {
    let doc = args.doc(false)?;
    let t = doc.times()?;
    let q = min_uavs_for_budget(doc.n, doc.m, budget, &t)?;
    let lb = operation_lb(doc.n, doc.m, q, &t)?;
    println!("{}", json!({ "n": doc.n, "m": doc.m, "budget": budget, "min_uavs": q, "lb": lb }));
    Ok(())
}

fn cmd_validate(path: &Path) -> CmdResult {
    let text = fs::read_to_string(path)?;
    let doc: PlanDoc = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::Usage)?;
    let g = doc.instance.grid()?;
    let t = doc.times()?;
    let paths = doc.uav_paths();
    let mut problems: Vec<String> = match validate_paths(&paths, &g) {
        Ok(()) => Vec::new(),
        Err(v) => v.iter().map(ToString::to_string).collect(),
    };
    let times: Vec<f64> = paths.iter().map(|p| mission_time(p, &t)).collect();
    let operation_time = times.iter().copied().fold(0.0, f64::max);
    for (p, &mt) in doc.paths.iter().zip(&times) {
        if (p.mission_time - mt).abs() > 1e-6 * mt.max(1.0) {
            problems.push(format!("MissionTime: UAV {} reports {} but its moves take {mt}", p.uav, p.mission_time));
        }
    }
    if (doc.operation_time - operation_time).abs() > 1e-6 * operation_time.max(1.0) {
        problems.push(format!("OperationTime: reported {} but paths take {operation_time}", doc.operation_time));
    }
    let lb = operation_lb(g.n, g.m, g.q, &t)?;
    if gap_check(operation_time, lb, t.crosswind) == GapCheck::Violation {
        problems.push(format!("Gap: operation time {operation_time} is neither {lb} nor {lb} + {}", t.crosswind));
    }
    if problems.is_empty() {
        println!("ok: {} path(s), operation time {operation_time:.2}, lower bound {lb:.2}", paths.len());
        Ok(())
    } else {
        Err(Failure::Domain(anyhow!("plan is invalid:\n  {}", problems.join("\n  "))))
    }
}

struct BenchRow {
    case: String,
    lb: f64,
    z: f64,
    wall: f64,
    oracle: Option<(f64, bool)>,
}

fn bench_case(n: u32, m: u32, q: u32, t: &MoveTimes, with_oracle: bool) -> Result<BenchRow, uavcov::Error> {
    let g = GridSpec::von_neumann(n, m, q)?;
    let start = Instant::now();
    let p = plan(&g, t)?;
    let wall = start.elapsed().as_secs_f64();
    let oracle = if with_oracle && g.cell_count() <= DEFAULT_CELL_CAP {
        let r = exact_solve(&g, t, ExactOptions::default())?;
        r.certified.then_some((r.optimum, r.certified))
    } else {
        None
    };
    Ok(BenchRow { case: format!("({n},{m},{q})"), lb: p.lb, z: p.operation_time, wall, oracle })
}

fn cmd_bench(suite: Suite, out: Option<&Path>, no_timing: bool, sequential: bool) -> CmdResult {
    let t = rounded_times();
    let small = suite == Suite::Small;
    let exec = if sequential { Exec::Sequential } else { Exec::Parallel };
    let rows = run(suite.cases(), exec, |c| bench_case(c.n, c.m, c.q, &t, small));
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["case", "LB", "Z_NOPP", "wall_time_s", "optimality_gap_pct", "absolute_gap_s"];
    if small {
        header.extend(["Z_oracle", "oracle_certified"]);
    }
    let csv_err = |e: csv::Error| Failure::Domain(e.into());
    w.write_record(&header).map_err(csv_err)?;
    for row in rows {
        let r = row?;
        let gap = (r.z - r.lb).abs();
        let mut rec = vec![
            r.case,
            format!("{:.2}", r.lb),
            format!("{:.2}", r.z),
            if no_timing { String::new() } else { format!("{:.2}", r.wall) },
            format!("{:.2}", gap / r.lb * 100.0),
            format!("{gap:.2}"),
        ];
        if small {
            match r.oracle {
                Some((z, cert)) => rec.extend([format!("{z:.2}"), cert.to_string()]),
                None => rec.extend([String::new(), String::new()]),
            }
        }
        w.write_record(&rec).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Domain(anyhow!("{e}")))?;
    write_output(out, &String::from_utf8_lossy(&bytes))?;
    Ok(())
}

fn cmd_emit_mip(args: &InstanceArgs, out: Option<&Path>) -> CmdResult {
    let doc = args.doc(true)?;
    let g = doc.grid()?;
    let t = doc.times()?;
    write_output(out, &emit_mip(&g, &t))?;
    Ok(())
}

fn cmd_oracle(args: &InstanceArgs, time_limit: f64, cap: usize) -> CmdResult {
    let doc = args.doc(true)?;
    let g = doc.grid()?;
    let t = doc.times()?;
    let limit = Duration::try_from_secs_f64(time_limit).map_err(|e| usage(format!("--time-limit: {e}")))?;
    let r = exact_solve(&g, &t, ExactOptions { time_limit: Some(limit), cap, ..Default::default() })?;
    println!("{}", json!({ "optimum": r.optimum, "certified": r.certified }));
    Ok(())
}

fn dispatch(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Plan { instance, out, svg } => cmd_plan(&instance, out.as_deref(), svg.as_deref()),
        Command::Lb { instance } => cmd_lb(&instance),
        Command::MinUavs { instance, budget } => cmd_min_uavs(&instance, budget),
        Command::Validate { plan } => cmd_validate(&plan),
        Command::Bench { suite, out, no_timing, sequential } => {
            cmd_bench(suite.into(), out.as_deref(), no_timing, sequential)
        }
        Command::EmitMip { instance, out } => cmd_emit_mip(&instance, out.as_deref()),
        Command::Oracle { instance, time_limit, cap } => cmd_oracle(&instance, time_limit, cap),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
