use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, OutputPaths};
use super::run::TrialResult;
use crate::analysis::slope::{fit_loglog_slope, SlopeFit};
use crate::error::Result;
use crate::rankers::AlgorithmId;

pub const RESULTS_HEADER: &str =
    "algo,n,m,trial,seed,inversions,footrule,est_cost,assign_cost,overflows,wall_ms";

/// Summary statistics of one cost over the trials of a size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    pub stddev: f64,
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub max: f64,
    /// Normal 95% interval for the mean.
    pub ci_low: f64,
    pub ci_high: f64,
}

impl Stat {
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let k = values.len() as f64;
        let mean = values.iter().sum::<f64>() / k;
        let var = if values.len() > 1 {
            values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1.0)
        } else {
            0.0
        };
        let stddev = var.sqrt();
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let quantile = |q: f64| sorted[((q * (k - 1.0)).round() as usize).min(sorted.len() - 1)];
        let half = 1.96 * stddev / k.sqrt();
        Some(Self {
            mean,
            stddev,
            min: sorted[0],
            q25: quantile(0.25),
            median: quantile(0.5),
            q75: quantile(0.75),
            max: sorted[sorted.len() - 1],
            ci_low: mean - half,
            ci_high: mean + half,
        })
    }

    fn of<F: Fn(&TrialResult) -> Option<u64>>(trials: &[&TrialResult], get: F) -> Option<Self> {
        let values: Vec<f64> = trials.iter().filter_map(|t| get(t)).map(|v| v as f64).collect();
        if values.len() != trials.len() {
            return None;
        }
        Self::from_values(&values)
    }
}

/// Aggregates for one `(algorithm, n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub algorithm: AlgorithmId,
    pub n: usize,
    pub m: u64,
    pub trials: u64,
    pub inversions: Stat,
    pub footrule: Option<Stat>,
    pub est_cost: Option<Stat>,
    pub assign_cost: Option<Stat>,
    pub overflows: Stat,
    /// Fraction of trials with no inversion and no overflow.
    pub clean_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub groups: Vec<GroupSummary>,
    /// Log–log fit of mean inversions against `n`; absent with fewer than
    /// three sizes or a zero mean.
    pub slope: Option<SlopeFit>,
    pub trials: Vec<TrialResult>,
}

/// The JSON summary: everything but the per-trial rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportSummary {
    pub config: ExperimentConfig,
    pub groups: Vec<GroupSummary>,
    pub slope: Option<SlopeFit>,
}

impl ExperimentReport {
    /// Groups `trials` by size (in config order) and fits the slope.
    pub fn aggregate(config: ExperimentConfig, trials: Vec<TrialResult>) -> Self {
        let mut groups = Vec::new();
        for &n in &config.sizes {
            let rows: Vec<&TrialResult> = trials.iter().filter(|t| t.n == n).collect();
            let Some(first) = rows.first() else { continue };
            let clean = rows.iter().filter(|t| t.inversions == 0 && t.overflows == 0).count();
            groups.push(GroupSummary {
                algorithm: first.algo,
                n,
                m: first.m,
                trials: rows.len() as u64,
                inversions: Stat::of(&rows, |t| Some(t.inversions)).expect("non-empty"),
                footrule: Stat::of(&rows, |t| t.footrule),
                est_cost: Stat::of(&rows, |t| t.est_cost),
                assign_cost: Stat::of(&rows, |t| t.assign_cost),
                overflows: Stat::of(&rows, |t| Some(t.overflows)).expect("non-empty"),
                clean_fraction: clean as f64 / rows.len() as f64,
            });
        }
        let points: Vec<(f64, f64)> = groups.iter().map(|g| (g.n as f64, g.inversions.mean)).collect();
        let slope = fit_loglog_slope(&points).ok();
        Self {
            config,
            groups,
            slope,
            trials,
        }
    }

    pub fn summary(&self) -> ReportSummary {
        ReportSummary {
            config: self.config.clone(),
            groups: self.groups.clone(),
            slope: self.slope.clone(),
        }
    }

    pub fn group(&self, n: usize) -> Option<&GroupSummary> {
        self.groups.iter().find(|g| g.n == n)
    }
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Per-trial rows under [`RESULTS_HEADER`]; undefined costs stay empty.
pub fn write_results_csv<W: Write>(mut out: W, trials: &[TrialResult]) -> std::io::Result<()> {
    writeln!(out, "{RESULTS_HEADER}")?;
    for t in trials {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            t.algo,
            t.n,
            t.m,
            t.trial,
            t.seed,
            t.inversions,
            opt(t.footrule),
            opt(t.est_cost),
            opt(t.assign_cost),
            t.overflows,
            t.wall_ms.map(|w| format!("{w:.3}")).unwrap_or_default(),
        )?;
    }
    Ok(())
}

/// `n mean_cost ci_low ci_high` per size, under a comment naming the
/// algorithm.
pub fn write_plot_data<W: Write>(mut out: W, groups: &[GroupSummary]) -> std::io::Result<()> {
    let mut current = None;
    for g in groups {
        if current != Some(g.algorithm) {
            writeln!(out, "# algorithm: {}", g.algorithm)?;
            writeln!(out, "n mean_cost ci_low ci_high")?;
            current = Some(g.algorithm);
        }
        writeln!(out, "{} {} {} {}", g.n, g.inversions.mean, g.inversions.ci_low, g.inversions.ci_high)?;
    }
    Ok(())
}

/// Writes every configured output and returns the paths written.
pub fn emit_report(report: &ExperimentReport, paths: &OutputPaths) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    if let Some(path) = &paths.results_csv {
        let mut w = BufWriter::new(File::create(path)?);
        write_results_csv(&mut w, &report.trials)?;
        w.flush()?;
        written.push(path.clone());
    }
    if let Some(path) = &paths.summary_json {
        let mut w = BufWriter::new(File::create(path)?);
        serde_json::to_writer_pretty(&mut w, &report.summary())?;
        writeln!(w)?;
        w.flush()?;
        written.push(path.clone());
    }
    if let Some(path) = &paths.plot_data {
        let mut w = BufWriter::new(File::create(path)?);
        write_plot_data(&mut w, &report.groups)?;
        w.flush()?;
        written.push(path.clone());
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::run_experiment_with_threads;

    #[test]
    fn empty_report_is_header_only() {
        let mut buf = Vec::new();
        write_results_csv(&mut buf, &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{RESULTS_HEADER}\n"));
    }

    #[test]
    fn stat_basics() {
        let s = Stat::from_values(&[1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!((s.mean, s.median, s.min, s.max), (3.0, 3.0, 1.0, 5.0));
        assert!((s.stddev - 2.5f64.sqrt()).abs() < 1e-12);
        assert!(Stat::from_values(&[]).is_none());
    }

    #[test]
    fn summary_round_trips() {
        let cfg = ExperimentConfig::new(AlgorithmId::Dense, vec![8, 16, 32], 4, 3);
        let report = run_experiment_with_threads(&cfg, 1).unwrap();
        let json = serde_json::to_string(&report.summary()).unwrap();
        let back: ReportSummary = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report.summary());
        assert!(report.slope.is_some());
    }

    #[test]
    fn plot_data_layout() {
        let cfg = ExperimentConfig::new(AlgorithmId::Random, vec![4, 8], 2, 3);
        let report = run_experiment_with_threads(&cfg, 1).unwrap();
        let mut buf = Vec::new();
        write_plot_data(&mut buf, &report.groups).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# algorithm: random");
        assert_eq!(lines[1], "n mean_cost ci_low ci_high");
        assert_eq!(lines.len(), 4);
        assert!(lines[2].starts_with("4 "));
    }
}
