//! `xsmt`: construct rectilinear and X-architecture Steiner trees with the
//! particle swarm engine, run batch benchmarks and ablations, query the
//! brute-force oracles, and render routed trees as SVG.
//!
//! Exit codes: 0 success, 1 usage error, 2 input error, 3 internal
//! invariant violation. Everything on stdout is reproducible from the
//! echoed config; timing goes to stderr and to the `runtime_ms` report
//! fields only.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use xsmt_cli::generate::generate_random_suite;
use xsmt_cli::netfile::{parse_netfile, write_netfile, ParsedNets};
use xsmt_cli::report::{ablation_table, rows_to_csv, to_json, Report};
use xsmt_cli::svg::render_svg;
use xsmt_core::engine::{self, parse_stage_plan, EngineError, RunConfig, StagePlan};
use xsmt_core::{ChoiceSet, Net, Particle, PsChoice, RoutingMode, TransformMode};

#[derive(Parser)]
#[command(
    name = "xsmt",
    version,
    about = "Steiner minimal trees for VLSI routing via discrete particle swarm optimization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve every net in a net file and print the best trees.
    Solve(SolveArgs),
    /// Repeated runs per net; best/mean/stddev report.
    Batch(BatchArgs),
    /// Curated ablations: stage plans, mutation points, or choice encoding.
    Ablate(AblateArgs),
    /// Enumerate every stage-plan combination of a given depth.
    Sweep(SweepArgs),
    /// Exact brute-force references for small nets.
    Oracle(OracleArgs),
    /// Render a routed tree as SVG.
    Render(RenderArgs),
    /// Generate a seeded random benchmark net file.
    Gen(GenArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum CliMode {
    /// Rectilinear (Manhattan) routing, choice digits {2, 3}.
    Rect,
    /// X-architecture (octilinear) routing, all four choice digits.
    X,
}

impl From<CliMode> for RoutingMode {
    fn from(m: CliMode) -> RoutingMode {
        match m {
            CliMode::Rect => RoutingMode::Rectilinear,
            CliMode::X => RoutingMode::XArch,
        }
    }
}

#[derive(Args, Clone)]
struct SolverOpts {
    /// Routing architecture.
    #[arg(long, value_enum, default_value_t = CliMode::X)]
    mode: CliMode,
    /// Swarm size.
    #[arg(long, default_value_t = 50)]
    pop: usize,
    /// Iteration budget.
    #[arg(long, default_value_t = 500)]
    iters: usize,
    /// Master seed; every run is reproducible from it.
    #[arg(long, env = "XSMT_SEED", default_value_t = 1)]
    seed: u64,
    /// Stage plan: comma list like E,PS,E,PS, or an alias like CM6 (four
    /// stages) or CM2@3 (three stages).
    #[arg(long, default_value = "E,PS,E,PS")]
    stages: String,
    /// Mutation points per mutation application.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Restrict choice digits, e.g. 01; defaults to the mode's domain.
    #[arg(long)]
    choices: Option<String>,
    /// Cap worker threads (results do not depend on this).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct SolveArgs {
    /// Net file to solve.
    netfile: PathBuf,
    #[command(flatten)]
    solver: SolverOpts,
    /// Print per-iteration trace lines to stderr.
    #[arg(long)]
    trace: bool,
    /// Also write results as JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BatchArgs {
    netfile: PathBuf,
    #[command(flatten)]
    solver: SolverOpts,
    /// Runs per net (seeds seed, seed+1, ...).
    #[arg(long, default_value_t = 10)]
    repeats: usize,
    /// Write the full report as JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the per-net rows as CSV to this file.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Vary {
    /// Single-stage PS vs E vs two-stage vs four-stage plans.
    Stages,
    /// Mutation points k in 1..=4.
    K,
    /// Two-choice {0,1} vs four-choice encoding (X mode).
    Encoding,
}

#[derive(Args)]
struct AblateArgs {
    netfile: PathBuf,
    #[command(flatten)]
    solver: SolverOpts,
    /// Which knob to ablate.
    #[arg(long, value_enum)]
    vary: Vary,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    netfile: PathBuf,
    #[command(flatten)]
    solver: SolverOpts,
    /// Stage count: 2 gives 4 plans, 3 gives 8, 4 gives 16.
    #[arg(long)]
    depth: u32,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    netfile: PathBuf,
    /// Exact rectilinear Steiner minimal tree length (up to 6 pins).
    #[arg(long)]
    exact_rsmt: bool,
    /// Minimum over the whole spanning-tree-and-choices search space
    /// (up to 5 pins).
    #[arg(long)]
    best_in_space: bool,
    /// Mode for --best-in-space.
    #[arg(long, value_enum, default_value_t = CliMode::X)]
    mode: CliMode,
}

#[derive(Args)]
struct RenderArgs {
    netfile: PathBuf,
    /// Which net to render; defaults to the first in the file.
    #[arg(long)]
    net: Option<String>,
    /// Particle string to render; when absent the net is solved first.
    #[arg(long)]
    particle: Option<String>,
    #[command(flatten)]
    solver: SolverOpts,
    /// Output SVG path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// Comma-separated pin counts, e.g. 8,20,100.
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    /// Nets per size.
    #[arg(long, default_value_t = 1)]
    count: usize,
    /// Coordinate range lo:hi on both axes.
    #[arg(long, default_value = "0:100")]
    range: String,
    #[arg(long, env = "XSMT_SEED", default_value_t = 1)]
    seed: u64,
    /// Output net file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    Usage(String),
    Input(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> CliError {
        match e {
            EngineError::Config(c) => CliError::Usage(c.to_string()),
            EngineError::Invariant(_) => CliError::Internal(e.to_string()),
        }
    }
}

impl From<xsmt_cli::report::ReportError> for CliError {
    fn from(e: xsmt_cli::report::ReportError) -> CliError {
        match e {
            xsmt_cli::report::ReportError::Engine(inner) => inner.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Batch(args) => cmd_batch(args),
        Command::Ablate(args) => cmd_ablate(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Render(args) => cmd_render(args),
        Command::Gen(args) => cmd_gen(args),
    }
}

fn parse_choice_digits(text: &str) -> Result<ChoiceSet, CliError> {
    let mut choices = Vec::new();
    for ch in text.chars() {
        let digit = ch
            .to_digit(10)
            .and_then(|d| PsChoice::from_digit(d as u8))
            .ok_or_else(|| {
                CliError::Usage(format!("bad choice digit '{}' (expected 0-3)", ch))
            })?;
        choices.push(digit);
    }
    ChoiceSet::from_choices(&choices)
        .ok_or_else(|| CliError::Usage("choice set must not be empty".into()))
}

impl SolverOpts {
    fn config(&self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::new(self.mode.into(), self.seed);
        cfg.population = self.pop;
        cfg.evaluations = self.iters;
        cfg.mutation_points = self.k;
        cfg.stage_plan = parse_stage_plan(&self.stages).map_err(CliError::Usage)?;
        if let Some(text) = &self.choices {
            cfg.choice_override = Some(parse_choice_digits(text)?);
        }
        cfg.check().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(cfg)
    }

    fn init_threads(&self) -> Result<(), CliError> {
        if let Some(threads) = self.threads {
            if threads == 0 {
                return Err(CliError::Usage("--threads must be at least 1".into()));
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global()
                .map_err(|e| CliError::Usage(format!("cannot configure thread pool: {}", e)))?;
        }
        Ok(())
    }

    fn echo(&self, cmd: &str, cfg: &RunConfig, extra: serde_json::Value) {
        let mut value = json!({
            "cmd": cmd,
            "mode": cfg.mode.to_string(),
            "pop": cfg.population,
            "iters": cfg.evaluations,
            "seed": cfg.seed,
            "stages": cfg.stage_plan.to_string(),
            "k": cfg.mutation_points,
            "choices": cfg.choices().to_string(),
            "threads": self.threads,
        });
        if let (Some(obj), Some(add)) = (value.as_object_mut(), extra.as_object()) {
            for (k, v) in add {
                obj.insert(k.clone(), v.clone());
            }
        }
        println!("# config {}", value);
    }
}

fn load_nets(path: &PathBuf) -> Result<Vec<Net>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {}", path.display(), e)))?;
    let ParsedNets {
        nets,
        duplicates_dropped,
    } = parse_netfile(&text).map_err(|e| CliError::Input(e.to_string()))?;
    if duplicates_dropped > 0 {
        eprintln!(
            "warning: dropped {} duplicate pin(s) in {}",
            duplicates_dropped,
            path.display()
        );
    }
    Ok(nets)
}

fn write_or_print(path: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, content)
            .map_err(|e| CliError::Input(format!("cannot write {}: {}", p.display(), e))),
        None => {
            print!("{}", content);
            Ok(())
        }
    }
}

fn write_report(report: &Report, out: &Option<PathBuf>, csv: &Option<PathBuf>) -> Result<(), CliError> {
    if let Some(path) = out {
        fs::write(path, to_json(report))
            .map_err(|e| CliError::Input(format!("cannot write {}: {}", path.display(), e)))?;
    }
    if let Some(path) = csv {
        fs::write(path, rows_to_csv(report))
            .map_err(|e| CliError::Input(format!("cannot write {}: {}", path.display(), e)))?;
    }
    Ok(())
}

fn cmd_solve(args: SolveArgs) -> Result<(), CliError> {
    let cfg = args.solver.config()?;
    args.solver.init_threads()?;
    args.solver.echo(
        "solve",
        &cfg,
        json!({"netfile": args.netfile.display().to_string()}),
    );
    let nets = load_nets(&args.netfile)?;
    let mut results_json = Vec::new();
    for net in &nets {
        let result = if args.trace {
            engine::run_with(net, &cfg, |info| {
                eprintln!(
                    "trace net={} iter={} mode={} w={:.4} c1={:.4} c2={:.4} gbest={:.6}",
                    net.name(),
                    info.iteration,
                    info.mode,
                    info.w,
                    info.c1,
                    info.c2,
                    info.gbest_length
                );
            })
        } else {
            engine::run(net, &cfg)
        }?;
        println!(
            "{} pins={} length={:.6} fitness={:.4}",
            net.name(),
            net.pin_count(),
            result.best_length,
            result.best_fitness()
        );
        println!("  particle {}", result.best.serialize());
        eprintln!(
            "solved {} in {:.2}s",
            net.name(),
            result.wall_time.as_secs_f64()
        );
        results_json.push(json!({
            "net": net.name(),
            "pins": net.pin_count(),
            "mode": cfg.mode.to_string(),
            "seed": cfg.seed,
            "length": result.best_length,
            "fitness": result.best_fitness(),
            "particle": result.best.serialize(),
            "history": result.history,
            "wall_time_ms": result.wall_time.as_secs_f64() * 1e3,
        }));
    }
    if let Some(out) = &args.out {
        let body = serde_json::to_string_pretty(&results_json).expect("results serialize");
        fs::write(out, body)
            .map_err(|e| CliError::Input(format!("cannot write {}: {}", out.display(), e)))?;
    }
    Ok(())
}

fn print_report(report: &Report) {
    for row in &report.rows {
        println!(
            "net={} pins={} config={} best={:.6} mean={:.6} stddev={:.6}",
            row.net, row.pins, row.config, row.best, row.mean, row.stddev
        );
    }
    for s in &report.summary {
        println!(
            "summary config={} mean={:.6} imp={:+.2}% vs {}",
            s.config, s.mean_length, s.improvement_pct, report.baseline
        );
    }
}

fn cmd_batch(args: BatchArgs) -> Result<(), CliError> {
    let cfg = args.solver.config()?;
    args.solver.init_threads()?;
    args.solver.echo(
        "batch",
        &cfg,
        json!({
            "netfile": args.netfile.display().to_string(),
            "repeats": args.repeats,
        }),
    );
    let nets = load_nets(&args.netfile)?;
    let configs = vec![("default".to_string(), cfg)];
    let report = ablation_table(&nets, &configs, "default", args.repeats)?;
    print_report(&report);
    write_report(&report, &args.out, &args.csv)
}

fn cmd_ablate(args: AblateArgs) -> Result<(), CliError> {
    let base = args.solver.config()?;
    args.solver.init_threads()?;
    let configs: Vec<(String, RunConfig)> = match args.vary {
        Vary::Stages => [
            ("PS", StagePlan::single(TransformMode::Ps)),
            ("E", StagePlan::single(TransformMode::E)),
            ("E,PS", parse_stage_plan("CM2@2").expect("valid alias")),
            ("E,PS,E,PS", StagePlan::four_stage_eps()),
        ]
        .into_iter()
        .map(|(name, plan)| {
            let mut cfg = base.clone();
            cfg.stage_plan = plan;
            (name.to_string(), cfg)
        })
        .collect(),
        Vary::K => (1..=4)
            .map(|k| {
                let mut cfg = base.clone();
                cfg.mutation_points = k;
                (format!("k{}", k), cfg)
            })
            .collect(),
        Vary::Encoding => {
            // encoding comparison is an X-architecture question
            let mut two = base.clone();
            two.mode = RoutingMode::XArch;
            two.choice_override = Some(ChoiceSet::X_TWO);
            let mut four = base.clone();
            four.mode = RoutingMode::XArch;
            four.choice_override = None;
            vec![
                ("two-choice".to_string(), two),
                ("four-choice".to_string(), four),
            ]
        }
    };
    let baseline = configs[0].0.clone();
    args.solver.echo(
        "ablate",
        &base,
        json!({
            "netfile": args.netfile.display().to_string(),
            "vary": format!("{:?}", args.vary).to_lowercase(),
            "repeats": args.repeats,
            "baseline": baseline,
        }),
    );
    let nets = load_nets(&args.netfile)?;
    let report = ablation_table(&nets, &configs, &baseline, args.repeats)?;
    print_report(&report);
    write_report(&report, &args.out, &args.csv)
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    if !(2..=4).contains(&args.depth) {
        return Err(CliError::Usage(format!(
            "--depth must be 2, 3, or 4, got {}",
            args.depth
        )));
    }
    let base = args.solver.config()?;
    args.solver.init_threads()?;
    let combos = 1usize << args.depth;
    let configs: Vec<(String, RunConfig)> = (1..=combos)
        .map(|n| {
            let plan = parse_stage_plan(&format!("CM{}@{}", n, args.depth))
                .expect("generated aliases are valid");
            let mut cfg = base.clone();
            cfg.stage_plan = plan;
            (format!("CM{}", n), cfg)
        })
        .collect();
    // the all-PS combination is the last row and serves as baseline
    let baseline = format!("CM{}", combos);
    args.solver.echo(
        "sweep",
        &base,
        json!({
            "netfile": args.netfile.display().to_string(),
            "depth": args.depth,
            "repeats": args.repeats,
            "baseline": baseline,
        }),
    );
    let nets = load_nets(&args.netfile)?;
    let report = ablation_table(&nets, &configs, &baseline, args.repeats)?;
    for ((name, cfg), s) in configs.iter().zip(&report.summary) {
        println!(
            "{} stages={} mean={:.6} imp={:+.2}%",
            name, cfg.stage_plan, s.mean_length, s.improvement_pct
        );
    }
    write_report(&report, &args.out, &args.csv)
}

fn cmd_oracle(args: OracleArgs) -> Result<(), CliError> {
    if !args.exact_rsmt && !args.best_in_space {
        return Err(CliError::Usage(
            "pass --exact-rsmt and/or --best-in-space".into(),
        ));
    }
    let mode: RoutingMode = args.mode.into();
    println!(
        "# config {}",
        json!({
            "cmd": "oracle",
            "netfile": args.netfile.display().to_string(),
            "exact_rsmt": args.exact_rsmt,
            "best_in_space": args.best_in_space,
            "mode": mode.to_string(),
        })
    );
    let nets = load_nets(&args.netfile)?;
    for net in &nets {
        if args.exact_rsmt {
            let v = xsmt_core::oracle::exact_rsmt(net)
                .map_err(|e| CliError::Input(format!("net {}: {}", net.name(), e)))?;
            println!("net={} exact_rsmt={:.6}", net.name(), v);
        }
        if args.best_in_space {
            let v = xsmt_core::oracle::best_in_space_xsmt(net, mode)
                .map_err(|e| CliError::Input(format!("net {}: {}", net.name(), e)))?;
            println!("net={} best_in_space={:.6} mode={}", net.name(), v, mode);
        }
    }
    Ok(())
}

fn cmd_render(args: RenderArgs) -> Result<(), CliError> {
    let cfg = args.solver.config()?;
    args.solver.init_threads()?;
    let nets = load_nets(&args.netfile)?;
    let net = match &args.net {
        Some(name) => nets
            .iter()
            .find(|n| n.name() == name)
            .ok_or_else(|| CliError::Input(format!("no net named '{}' in the file", name)))?,
        None => nets
            .first()
            .ok_or_else(|| CliError::Input("net file holds no nets".into()))?,
    };
    args.solver.echo(
        "render",
        &cfg,
        json!({
            "netfile": args.netfile.display().to_string(),
            "net": net.name(),
            "particle": args.particle,
        }),
    );
    let particle: Particle = match &args.particle {
        Some(text) => {
            let mut p = Particle::parse(text, net.pin_count())
                .map_err(|e| CliError::Input(format!("bad particle string: {}", e)))?;
            p.evaluate(net)
                .map_err(|e| CliError::Input(format!("bad particle string: {}", e)))?;
            p
        }
        None => engine::run(net, &cfg)?.best,
    };
    let svg = render_svg(net, &particle).map_err(|e| CliError::Input(e.to_string()))?;
    write_or_print(&args.out, &svg)
}

fn cmd_gen(args: GenArgs) -> Result<(), CliError> {
    let (lo, hi) = args
        .range
        .split_once(':')
        .and_then(|(a, b)| Some((a.parse::<i32>().ok()?, b.parse::<i32>().ok()?)))
        .ok_or_else(|| {
            CliError::Usage(format!("bad --range '{}', expected lo:hi", args.range))
        })?;
    println!(
        "# config {}",
        json!({
            "cmd": "gen",
            "sizes": args.sizes,
            "count": args.count,
            "range": format!("{}:{}", lo, hi),
            "seed": args.seed,
        })
    );
    let nets = generate_random_suite(&args.sizes, args.count, (lo, hi), args.seed)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    write_or_print(&args.out, &write_netfile(&nets))
}
