//! Batch-run reports and ablation tables.
//!
//! A report carries, for every (net, config) pair, the best/mean/stddev of
//! the per-run best lengths plus the raw lengths themselves, and a summary
//! of percent improvement against a named baseline config averaged across
//! nets. Identical inputs and seed reproduce the report exactly, except for
//! the wall-clock `runtime_ms` fields.

use serde::{Deserialize, Serialize};
use thiserror::Error;
use xsmt_core::engine::{self, EngineError, RunConfig};
use xsmt_core::Net;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("no configs given")]
    NoConfigs,
    #[error("baseline config '{0}' is not among the given configs")]
    UnknownBaseline(String),
    #[error("duplicate config name '{0}'")]
    DuplicateConfig(String),
    #[error("engine failure: {0}")]
    Engine(#[from] EngineError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub name: String,
    pub config: RunConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportRow {
    pub net: String,
    pub pins: usize,
    pub config: String,
    pub best: f64,
    pub mean: f64,
    pub stddev: f64,
    /// Raw per-run best lengths; every summary number recomputes from these.
    pub lengths: Vec<f64>,
    pub runtime_ms: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SummaryRow {
    pub config: String,
    pub mean_length: f64,
    /// Percent improvement over the baseline config, averaged across nets:
    /// mean of (baseline_mean - mean) / baseline_mean * 100.
    pub improvement_pct: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub seed: u64,
    pub repeats: usize,
    pub baseline: String,
    pub configs: Vec<ConfigEcho>,
    pub rows: Vec<ReportRow>,
    pub summary: Vec<SummaryRow>,
}

/// Runs every config on every net (`repeats` runs each, seeds derived from
/// the config seed) and tabulates improvement against `baseline`.
pub fn ablation_table(
    nets: &[Net],
    configs: &[(String, RunConfig)],
    baseline: &str,
    repeats: usize,
) -> Result<Report, ReportError> {
    if configs.is_empty() {
        return Err(ReportError::NoConfigs);
    }
    for (i, (name, _)) in configs.iter().enumerate() {
        if configs[..i].iter().any(|(other, _)| other == name) {
            return Err(ReportError::DuplicateConfig(name.clone()));
        }
    }
    if !configs.iter().any(|(name, _)| name == baseline) {
        return Err(ReportError::UnknownBaseline(baseline.to_string()));
    }
    let seed = configs[0].1.seed;
    let mut rows = Vec::with_capacity(nets.len() * configs.len());
    for net in nets {
        for (name, cfg) in configs {
            let started = std::time::Instant::now();
            let stats = engine::run_many(net, cfg, repeats)?;
            rows.push(ReportRow {
                net: net.name().to_string(),
                pins: net.pin_count(),
                config: name.clone(),
                best: stats.best,
                mean: stats.mean,
                stddev: stats.stddev,
                lengths: stats.lengths,
                runtime_ms: started.elapsed().as_secs_f64() * 1e3,
            });
        }
    }
    let mut summary = Vec::new();
    if !nets.is_empty() {
        for (name, _) in configs {
            let mut imps = Vec::with_capacity(nets.len());
            let mut means = Vec::with_capacity(nets.len());
            for net in nets {
                let mean_of = |cfg_name: &str| {
                    rows.iter()
                        .find(|r| r.net == net.name() && r.config == cfg_name)
                        .map(|r| r.mean)
                        .expect("row exists for every (net, config) pair")
                };
                let base = mean_of(baseline);
                let mean = mean_of(name);
                means.push(mean);
                imps.push((base - mean) / base * 100.0);
            }
            summary.push(SummaryRow {
                config: name.clone(),
                mean_length: means.iter().sum::<f64>() / means.len() as f64,
                improvement_pct: imps.iter().sum::<f64>() / imps.len() as f64,
            });
        }
    }
    Ok(Report {
        seed,
        repeats,
        baseline: baseline.to_string(),
        configs: configs
            .iter()
            .map(|(name, config)| ConfigEcho {
                name: name.clone(),
                config: config.clone(),
            })
            .collect(),
        rows,
        summary,
    })
}

/// Per-net rows as CSV (summary lines excluded; raw lengths live in JSON).
pub fn rows_to_csv(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["net", "pins", "config", "best", "mean", "stddev", "runtime_ms"])
        .expect("csv write to memory");
    for r in &report.rows {
        w.write_record(&[
            r.net.clone(),
            r.pins.to_string(),
            r.config.clone(),
            format!("{:.6}", r.best),
            format!("{:.6}", r.mean),
            format!("{:.6}", r.stddev),
            format!("{:.3}", r.runtime_ms),
        ])
        .expect("csv write to memory");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv output is utf-8")
}

/// The full report as pretty JSON.
pub fn to_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}
