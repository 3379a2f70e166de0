//! The particle swarm main loop: population seeding, the discrete update
//! formula with linearly scheduled gate probabilities, and the multi-stage
//! PS/E transformation scheduler.
//!
//! Determinism contract: a run is a pure function of `(net, config)`. Every
//! particle owns an independent random substream derived from the run seed,
//! and each iteration updates particles against the previous iteration's
//! best snapshots, so results do not depend on evaluation order or worker
//! count.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "rayon")]
use rayon::prelude::*;

use crate::encoding::{
    mst_spanning_tree_with, random_spanning_tree, ChoiceSet, Net, Particle, RoutingMode,
};
use crate::geometry::Wirelength;
use crate::operators::{apply_velocity, TransformMode};

/// Particle fitness for a routed length: `1 / (length + 1)`.
///
/// Reported alongside raw length; selection inside the engine compares raw
/// lengths (a strictly monotone equivalent).
pub fn fitness(length: f64) -> f64 {
    1.0 / (length + 1.0)
}

/// Linear parameter schedule: `start - (start - end) * eval / evaluations`.
pub fn schedule(start: f64, end: f64, eval: usize, evaluations: usize) -> f64 {
    start - (start - end) * eval as f64 / evaluations as f64
}

/// Configuration error.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ConfigError {
    PopulationTooSmall,
    NoEvaluations,
    BadProbability(&'static str),
    BadStageCount(usize),
    NoMutationPoints,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::PopulationTooSmall => write!(f, "population must be at least 2"),
            ConfigError::NoEvaluations => write!(f, "evaluations must be at least 1"),
            ConfigError::BadProbability(which) => {
                write!(f, "schedule endpoint {} must lie in [0, 1]", which)
            }
            ConfigError::BadStageCount(n) => {
                write!(f, "stage plan must hold 1 to 6 stages, got {}", n)
            }
            ConfigError::NoMutationPoints => write!(f, "mutation points must be at least 1"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ConfigError {}

/// Ordered transformation modes; the iteration budget is split into equal
/// contiguous blocks, one per stage (the last block absorbs the remainder).
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StagePlan {
    stages: Vec<TransformMode>,
}

impl StagePlan {
    pub fn new(stages: Vec<TransformMode>) -> Result<StagePlan, ConfigError> {
        if stages.is_empty() || stages.len() > 6 {
            return Err(ConfigError::BadStageCount(stages.len()));
        }
        Ok(StagePlan { stages })
    }

    pub fn single(mode: TransformMode) -> StagePlan {
        StagePlan {
            stages: alloc::vec![mode],
        }
    }

    /// The four-stage E,PS,E,PS plan — the best-performing combination.
    pub fn four_stage_eps() -> StagePlan {
        StagePlan {
            stages: alloc::vec![
                TransformMode::E,
                TransformMode::Ps,
                TransformMode::E,
                TransformMode::Ps
            ],
        }
    }

    pub fn stages(&self) -> &[TransformMode] {
        &self.stages
    }

    /// Mode in force at iteration `eval` of `evaluations`.
    pub fn stage_mode(&self, eval: usize, evaluations: usize) -> TransformMode {
        let k = self.stages.len();
        let block = (eval * k / evaluations.max(1)).min(k - 1);
        self.stages[block]
    }
}

impl fmt::Display for StagePlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.stages.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", s)?;
        }
        Ok(())
    }
}

/// Swarm parameters and schedules for one run.
#[derive(Clone, PartialEq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RunConfig {
    pub population: usize,
    pub evaluations: usize,
    pub w_start: f64,
    pub w_end: f64,
    pub c1_start: f64,
    pub c1_end: f64,
    pub c2_start: f64,
    pub c2_end: f64,
    pub mutation_points: usize,
    pub mode: RoutingMode,
    pub seed: u64,
    pub stage_plan: StagePlan,
    /// Restricts the choice digits sampled by operators and seeding;
    /// `None` uses the routing mode's full domain.
    pub choice_override: Option<ChoiceSet>,
}

impl RunConfig {
    /// Defaults: population 50, 500 iterations, w 0.95→0.4, c1 0.82→0.5,
    /// c2 0.4→0.83, two-point mutation, four-stage E,PS,E,PS plan.
    pub fn new(mode: RoutingMode, seed: u64) -> RunConfig {
        RunConfig {
            population: 50,
            evaluations: 500,
            w_start: 0.95,
            w_end: 0.4,
            c1_start: 0.82,
            c1_end: 0.5,
            c2_start: 0.4,
            c2_end: 0.83,
            mutation_points: 2,
            mode,
            seed,
            stage_plan: StagePlan::four_stage_eps(),
            choice_override: None,
        }
    }

    /// Effective choice domain.
    pub fn choices(&self) -> ChoiceSet {
        self.choice_override.unwrap_or_else(|| self.mode.choices())
    }

    pub fn check(&self) -> Result<(), ConfigError> {
        if self.population < 2 {
            return Err(ConfigError::PopulationTooSmall);
        }
        if self.evaluations < 1 {
            return Err(ConfigError::NoEvaluations);
        }
        if self.mutation_points < 1 {
            return Err(ConfigError::NoMutationPoints);
        }
        for (name, v) in [
            ("w_start", self.w_start),
            ("w_end", self.w_end),
            ("c1_start", self.c1_start),
            ("c1_end", self.c1_end),
            ("c2_start", self.c2_start),
            ("c2_end", self.c2_end),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(ConfigError::BadProbability(name));
            }
        }
        StagePlan::new(self.stage_plan.stages().to_vec()).map(|_| ())
    }
}

/// Engine failure.
#[derive(Clone, PartialEq, Debug)]
pub enum EngineError {
    Config(ConfigError),
    /// An operator emitted a particle that no longer validates — a bug, not
    /// an input problem.
    Invariant(&'static str),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::Config(e) => write!(f, "bad configuration: {}", e),
            EngineError::Invariant(what) => write!(f, "internal invariant violated: {}", what),
        }
    }
}

impl From<ConfigError> for EngineError {
    fn from(e: ConfigError) -> Self {
        EngineError::Config(e)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for EngineError {}

/// Per-iteration data handed to a run observer.
#[derive(Clone, Copy, Debug)]
pub struct IterationInfo {
    pub iteration: usize,
    pub w: f64,
    pub c1: f64,
    pub c2: f64,
    pub mode: TransformMode,
    pub gbest_length: f64,
}

/// Outcome of one run.
#[derive(Clone, Debug)]
pub struct RunResult {
    /// Best particle found, evaluated.
    pub best: Particle,
    pub best_wirelength: Wirelength,
    pub best_length: f64,
    /// Global-best length after every iteration; non-increasing.
    pub history: Vec<f64>,
    pub seed: u64,
    pub wall_time: Duration,
}

impl RunResult {
    /// Fitness of the best particle per the reporting formula.
    pub fn best_fitness(&self) -> f64 {
        fitness(self.best_length)
    }
}

// Distinct substream seeds per particle, derived from the run seed with a
// splitmix-style mix so streams never collide with seed+i conventions.
fn substream_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Swarm {
    particles: Vec<Particle>,
    pbest: Vec<Particle>,
    gbest: Particle,
    rngs: Vec<ChaCha8Rng>,
}

fn evaluated_wirelength(p: &Particle) -> Result<Wirelength, EngineError> {
    p.wirelength()
        .ok_or(EngineError::Invariant("particle missing evaluation"))
}

/// Runs the optimizer; see [`run_with`] for the observed variant.
pub fn run(net: &Net, cfg: &RunConfig) -> Result<RunResult, EngineError> {
    run_with(net, cfg, |_| {})
}

/// Runs the optimizer, invoking `observer` once per iteration.
///
/// Population seeding uses `population - 1` random trees plus one
/// distance-MST elite. Personal and global bests update only on strict
/// length improvement, so the elite is never lost and the recorded history
/// is non-increasing. Identical `(net, config)` reproduce bit-identical
/// results regardless of worker count.
pub fn run_with(
    net: &Net,
    cfg: &RunConfig,
    mut observer: impl FnMut(&IterationInfo),
) -> Result<RunResult, EngineError> {
    cfg.check()?;
    #[cfg(feature = "std")]
    let started = std::time::Instant::now();
    let choices = cfg.choices();
    let mut init_rng = ChaCha8Rng::seed_from_u64(substream_seed(cfg.seed, 0));
    let mut particles = Vec::with_capacity(cfg.population);
    particles.push(mst_spanning_tree_with(net, cfg.mode, choices));
    for _ in 1..cfg.population {
        particles.push(random_spanning_tree(net, choices, &mut init_rng));
    }
    for p in particles.iter_mut() {
        p.evaluate(net)
            .map_err(|_| EngineError::Invariant("seed particle failed validation"))?;
    }
    let pbest = particles.clone();
    let mut gbest_idx = 0;
    for i in 1..pbest.len() {
        if evaluated_wirelength(&pbest[i])? < evaluated_wirelength(&pbest[gbest_idx])? {
            gbest_idx = i;
        }
    }
    let gbest = pbest[gbest_idx].clone();
    let rngs = (0..cfg.population)
        .map(|i| ChaCha8Rng::seed_from_u64(substream_seed(cfg.seed, i as u64 + 1)))
        .collect();
    let mut swarm = Swarm {
        particles,
        pbest,
        gbest,
        rngs,
    };

    let mut history = Vec::with_capacity(cfg.evaluations);
    for eval in 0..cfg.evaluations {
        let w = schedule(cfg.w_start, cfg.w_end, eval, cfg.evaluations);
        let c1 = schedule(cfg.c1_start, cfg.c1_end, eval, cfg.evaluations);
        let c2 = schedule(cfg.c2_start, cfg.c2_end, eval, cfg.evaluations);
        let mode = cfg.stage_plan.stage_mode(eval, cfg.evaluations);
        step(net, cfg, &mut swarm, w, c1, c2, mode)?;
        // gbest scan is sequential and index-ordered for determinism
        let mut best_w = evaluated_wirelength(&swarm.gbest)?;
        for i in 0..swarm.pbest.len() {
            let cand = evaluated_wirelength(&swarm.pbest[i])?;
            if cand < best_w {
                best_w = cand;
                swarm.gbest = swarm.pbest[i].clone();
            }
        }
        let gbest_length = best_w.as_f64();
        history.push(gbest_length);
        observer(&IterationInfo {
            iteration: eval,
            w,
            c1,
            c2,
            mode,
            gbest_length,
        });
    }

    let best_wirelength = evaluated_wirelength(&swarm.gbest)?;
    Ok(RunResult {
        best_length: best_wirelength.as_f64(),
        best_wirelength,
        best: swarm.gbest,
        history,
        seed: cfg.seed,
        #[cfg(feature = "std")]
        wall_time: started.elapsed(),
        #[cfg(not(feature = "std"))]
        wall_time: Duration::ZERO,
    })
}

fn step(
    net: &Net,
    cfg: &RunConfig,
    swarm: &mut Swarm,
    w: f64,
    c1: f64,
    c2: f64,
    mode: TransformMode,
) -> Result<(), EngineError> {
    let gbest = swarm.gbest.clone();
    let choices = cfg.choices();
    let k = cfg.mutation_points;
    let update = |((particle, pbest), rng): (
        (&mut Particle, &mut Particle),
        &mut ChaCha8Rng,
    )|
     -> Result<(), EngineError> {
        let mut cand = apply_velocity(
            particle, pbest, &gbest, w, c1, c2, mode, k, net, choices, rng,
        );
        let cand_w = cand
            .evaluate(net)
            .map_err(|_| EngineError::Invariant("operator output failed validation"))?;
        if cand_w < evaluated_wirelength(pbest)? {
            *pbest = cand.clone();
        }
        *particle = cand;
        Ok(())
    };
    #[cfg(feature = "rayon")]
    {
        swarm
            .particles
            .par_iter_mut()
            .zip(swarm.pbest.par_iter_mut())
            .zip(swarm.rngs.par_iter_mut())
            .try_for_each(update)
    }
    #[cfg(not(feature = "rayon"))]
    {
        swarm
            .particles
            .iter_mut()
            .zip(swarm.pbest.iter_mut())
            .zip(swarm.rngs.iter_mut())
            .try_for_each(update)
    }
}

/// Aggregate statistics over repeated runs.
#[derive(Clone, PartialEq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Stats {
    pub best: f64,
    pub mean: f64,
    pub stddev: f64,
    /// The raw per-run best lengths the summary was computed from.
    pub lengths: Vec<f64>,
}

impl Stats {
    /// Population standard deviation over the given lengths.
    pub fn from_lengths(lengths: Vec<f64>) -> Stats {
        assert!(!lengths.is_empty());
        let n = lengths.len() as f64;
        let best = lengths.iter().copied().fold(f64::INFINITY, f64::min);
        let mean = lengths.iter().sum::<f64>() / n;
        let var = lengths.iter().map(|l| (l - mean) * (l - mean)).sum::<f64>() / n;
        Stats {
            best,
            mean,
            stddev: crate::sqrt(var),
            lengths,
        }
    }
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "best {:.4} mean {:.4} stddev {:.4} over {} runs",
            self.best,
            self.mean,
            self.stddev,
            self.lengths.len()
        )
    }
}

/// Runs `repeats` independent runs with seeds `seed, seed+1, ...` and
/// returns every result.
pub fn run_repeats(
    net: &Net,
    cfg: &RunConfig,
    repeats: usize,
) -> Result<Vec<RunResult>, EngineError> {
    assert!(repeats >= 1);
    let mut out = Vec::with_capacity(repeats);
    for i in 0..repeats {
        let mut c = cfg.clone();
        c.seed = cfg.seed.wrapping_add(i as u64);
        out.push(run(net, &c)?);
    }
    Ok(out)
}

/// Best/mean/standard deviation of best lengths over repeated runs.
pub fn run_many(net: &Net, cfg: &RunConfig, repeats: usize) -> Result<Stats, EngineError> {
    let results = run_repeats(net, cfg, repeats)?;
    Ok(Stats::from_lengths(
        results.iter().map(|r| r.best_length).collect(),
    ))
}

// Used by CLI help/echo and the benchmark harness.
pub fn parse_stage_plan(text: &str) -> Result<StagePlan, String> {
    let trimmed = text.trim();
    let upper = trimmed.to_uppercase();
    if let Some(rest) = upper.strip_prefix("CM") {
        // CM<n> addresses the four-stage table; CM<n>@<d> the d-stage one.
        let (num, depth) = match rest.split_once('@') {
            Some((n, d)) => (n, d.parse::<u32>().map_err(|_| bad_plan(trimmed))?),
            None => (rest, 4),
        };
        if !(2..=4).contains(&depth) {
            return Err(bad_plan(trimmed));
        }
        let n: usize = num.parse().map_err(|_| bad_plan(trimmed))?;
        let combos = 1usize << depth;
        if n < 1 || n > combos {
            return Err(bad_plan(trimmed));
        }
        // combination index counts in binary with E = 0, PS = 1
        let bits = n - 1;
        let stages = (0..depth)
            .map(|i| {
                if bits >> (depth - 1 - i) & 1 == 1 {
                    TransformMode::Ps
                } else {
                    TransformMode::E
                }
            })
            .collect();
        return StagePlan::new(stages).map_err(|e| alloc::format!("{}", e));
    }
    let stages: Result<Vec<TransformMode>, String> = upper
        .split(',')
        .map(|s| match s.trim() {
            "PS" => Ok(TransformMode::Ps),
            "E" => Ok(TransformMode::E),
            other => Err(alloc::format!("unknown stage mode '{}'", other)),
        })
        .collect();
    StagePlan::new(stages?).map_err(|e| alloc::format!("{}", e))
}

fn bad_plan(text: &str) -> String {
    alloc::format!(
        "bad stage plan '{}': expected modes like E,PS,E,PS or an alias like CM6 / CM2@3",
        text
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    fn net(pins: &[(i32, i32)]) -> Net {
        Net::new("t", pins.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn fitness_matches_reporting_formula() {
        assert_eq!(fitness(0.0), 1.0);
        assert!((fitness(9.0) - 0.1).abs() < 1e-15);
        let f = fitness(19.140);
        assert!((f - 1.0 / 20.140).abs() < 1e-15);
        assert!((f - 0.04965).abs() < 1e-5);
    }

    #[test]
    fn schedule_hits_both_endpoints_and_midpoint() {
        assert_eq!(schedule(0.95, 0.4, 0, 100), 0.95);
        assert_eq!(schedule(0.95, 0.4, 100, 100), 0.4);
        assert!((schedule(0.82, 0.5, 50, 100) - 0.66).abs() < 1e-12);
        // increasing schedules work the same way
        assert!((schedule(0.4, 0.83, 100, 100) - 0.83).abs() < 1e-12);
    }

    #[test]
    fn stage_mode_partitions_the_budget() {
        let plan = StagePlan::four_stage_eps();
        assert_eq!(plan.stage_mode(10, 100), TransformMode::E);
        assert_eq!(plan.stage_mode(30, 100), TransformMode::Ps);
        assert_eq!(plan.stage_mode(55, 100), TransformMode::E);
        assert_eq!(plan.stage_mode(99, 100), TransformMode::Ps);
        let single = StagePlan::single(TransformMode::Ps);
        assert_eq!(single.stage_mode(0, 100), TransformMode::Ps);
        assert_eq!(single.stage_mode(99, 100), TransformMode::Ps);
    }

    #[test]
    fn stage_plan_rejects_empty_and_oversized() {
        assert!(StagePlan::new(alloc::vec![]).is_err());
        assert!(StagePlan::new(alloc::vec![TransformMode::E; 7]).is_err());
        assert!(StagePlan::new(alloc::vec![TransformMode::E; 6]).is_ok());
    }

    #[test]
    fn parse_stage_plan_accepts_lists_and_cm_aliases() {
        let cm6 = parse_stage_plan("E,PS,E,PS").unwrap();
        assert_eq!(cm6, StagePlan::four_stage_eps());
        assert_eq!(parse_stage_plan("CM6").unwrap(), cm6);
        assert_eq!(parse_stage_plan("cm6@4").unwrap(), cm6);
        assert_eq!(
            parse_stage_plan("CM2@2").unwrap().stages(),
            &[TransformMode::E, TransformMode::Ps]
        );
        assert_eq!(
            parse_stage_plan("CM16").unwrap().stages(),
            &[TransformMode::Ps; 4]
        );
        assert_eq!(
            parse_stage_plan("CM1@3").unwrap().stages(),
            &[TransformMode::E; 3]
        );
        assert!(parse_stage_plan("CM17").is_err());
        assert!(parse_stage_plan("CM0").is_err());
        assert!(parse_stage_plan("PS,Q").is_err());
        assert!(parse_stage_plan("CM3@7").is_err());
    }

    #[test]
    fn two_pin_run_returns_pin_distance() {
        let n = net(&[(0, 0), (5, 0)]);
        let mut cfg = RunConfig::new(RoutingMode::Rectilinear, 1);
        cfg.population = 4;
        cfg.evaluations = 5;
        let r = run(&n, &cfg).unwrap();
        assert_eq!(r.best_length, 5.0);
        assert!((r.best_fitness() - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn history_is_monotone_and_runs_reproduce() {
        let n = net(&[(0, 0), (7, 3), (2, 9), (11, 5), (4, 4), (9, 9)]);
        let mut cfg = RunConfig::new(RoutingMode::XArch, 99);
        cfg.population = 12;
        cfg.evaluations = 60;
        let a = run(&n, &cfg).unwrap();
        for pair in a.history.windows(2) {
            assert!(pair[1] <= pair[0]);
        }
        let b = run(&n, &cfg).unwrap();
        assert_eq!(a.best.edges(), b.best.edges());
        assert_eq!(a.history, b.history);
        assert_eq!(a.best_length.to_bits(), b.best_length.to_bits());
    }

    #[test]
    fn unit_square_rectilinear_reaches_exact_optimum() {
        let n = net(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        let cfg = RunConfig::new(RoutingMode::Rectilinear, 5);
        let r = run(&n, &cfg).unwrap();
        assert_eq!(r.best_length, crate::oracle::exact_rsmt(&n).unwrap());
    }

    #[test]
    fn final_length_never_exceeds_mst_elite() {
        let n = net(&[(33, 33), (2, 9), (42, 35), (47, 2), (34, 1), (38, 2), (37, 5), (20, 4)]);
        for seed in 0..5 {
            let mut cfg = RunConfig::new(RoutingMode::XArch, seed);
            cfg.population = 20;
            cfg.evaluations = 80;
            let mut elite = mst_spanning_tree_with(&n, cfg.mode, cfg.choices());
            let elite_w = elite.evaluate(&n).unwrap();
            let r = run(&n, &cfg).unwrap();
            assert!(r.best_wirelength <= elite_w);
        }
    }

    #[test]
    fn observer_reports_schedule_and_mode() {
        let n = net(&[(0, 0), (4, 1), (2, 6)]);
        let mut cfg = RunConfig::new(RoutingMode::XArch, 3);
        cfg.population = 6;
        cfg.evaluations = 8;
        let mut seen = Vec::new();
        run_with(&n, &cfg, |info| {
            seen.push((info.iteration, info.mode, info.w));
        })
        .unwrap();
        assert_eq!(seen.len(), 8);
        assert_eq!(seen[0].1, TransformMode::E);
        assert_eq!(seen[2].1, TransformMode::Ps);
        assert!((seen[0].2 - 0.95).abs() < 1e-12);
        assert!(seen[7].2 > 0.4);
    }

    #[test]
    fn coordinate_scaling_scales_length_and_keeps_the_tree() {
        let pins = [(0, 0), (7, 3), (2, 9), (11, 5), (4, 4)];
        let n1 = net(&pins);
        let n3 = net(&pins.map(|(x, y)| (3 * x, 3 * y)));
        let mut cfg = RunConfig::new(RoutingMode::XArch, 21);
        cfg.population = 10;
        cfg.evaluations = 40;
        let r1 = run(&n1, &cfg).unwrap();
        let r3 = run(&n3, &cfg).unwrap();
        assert_eq!(r1.best.edges(), r3.best.edges());
        assert_eq!(r3.best_wirelength.hv, 3 * r1.best_wirelength.hv);
        assert_eq!(r3.best_wirelength.diag, 3 * r1.best_wirelength.diag);
    }

    #[test]
    fn run_many_aggregates_and_is_reproducible() {
        let n = net(&[(0, 0), (7, 3), (2, 9), (11, 5), (4, 4), (9, 9), (1, 7)]);
        let mut cfg = RunConfig::new(RoutingMode::XArch, 7);
        cfg.population = 8;
        cfg.evaluations = 30;
        let one = run_many(&n, &cfg, 1).unwrap();
        assert_eq!(one.stddev, 0.0);
        assert_eq!(one.best, one.mean);
        let a = run_many(&n, &cfg, 5).unwrap();
        let b = run_many(&n, &cfg, 5).unwrap();
        assert_eq!(a, b);
        assert!(a.best <= a.mean);
        assert_eq!(a.lengths.len(), 5);
    }

    #[test]
    fn eq4_consistency_of_reported_fitness() {
        let n = net(&[(0, 0), (5, 2), (3, 8)]);
        let cfg = RunConfig::new(RoutingMode::XArch, 11);
        let r = run(&n, &cfg).unwrap();
        assert!((r.best_fitness() - 1.0 / (r.best_length + 1.0)).abs() < 1e-12);
        assert!((r.best.fitness().unwrap() - r.best_fitness()).abs() < 1e-12);
    }

    #[test]
    fn config_check_rejects_bad_values() {
        let mut cfg = RunConfig::new(RoutingMode::XArch, 0);
        cfg.population = 1;
        assert!(matches!(cfg.check(), Err(ConfigError::PopulationTooSmall)));
        let mut cfg = RunConfig::new(RoutingMode::XArch, 0);
        cfg.evaluations = 0;
        assert!(matches!(cfg.check(), Err(ConfigError::NoEvaluations)));
        let mut cfg = RunConfig::new(RoutingMode::XArch, 0);
        cfg.w_start = 1.5;
        assert!(matches!(cfg.check(), Err(ConfigError::BadProbability(_))));
        let mut cfg = RunConfig::new(RoutingMode::XArch, 0);
        cfg.mutation_points = 0;
        assert!(matches!(cfg.check(), Err(ConfigError::NoMutationPoints)));
    }
}
