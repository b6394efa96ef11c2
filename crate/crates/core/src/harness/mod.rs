//! Seeded trial runs, parameter sweeps and machine-readable reports.
//!
//! Trial `k` of a run with seed `s` draws from stream `(s, k)`, so a report
//! depends only on its inputs, not on thread scheduling.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergrid::{parse_rational, FunctionOracle, HypergridFunction, RandomSource, Rational};
use crate::instances::InstanceDescriptor;
use crate::testers::{query_budget, unateness_tester};

/// Two-sided 95% normal quantile.
pub const WILSON_Z: f64 = 1.959963984540054;

/// 95% Wilson score interval for `successes` out of `trials`, clamped to
/// `[0, 1]` and pinned to the endpoints at rate 0 and rate 1.
pub fn wilson_interval(successes: u64, trials: u64) -> (f64, f64) {
    assert!(trials > 0 && successes <= trials);
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = WILSON_Z * WILSON_Z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = WILSON_Z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    let low = if successes == 0 { 0.0 } else { (center - half).clamp(0.0, p) };
    let high = if successes == trials { 1.0 } else { (center + half).clamp(p, 1.0) };
    (low, high)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialReport {
    pub instance: InstanceDescriptor,
    pub d: usize,
    pub n: u32,
    pub epsilon: Rational,
    pub trials: u64,
    pub rejections: u64,
    pub rejection_rate: Rational,
    pub ci_low: f64,
    pub ci_high: f64,
    pub query_mean: u64,
    pub query_max: u64,
    pub seed: u64,
}

impl TrialReport {
    /// `query_max · ε / (d · log₂ max(d, n))`: the smallest constant that
    /// would have covered every trial of this run.
    pub fn budget_ratio(&self) -> f64 {
        let eps = *self.epsilon.numer() as f64 / *self.epsilon.denom() as f64;
        let scale = self.d as f64 * (self.d.max(self.n as usize) as f64).log2();
        self.query_max as f64 * eps / scale
    }

    fn row(&self) -> ReportRow {
        ReportRow {
            family: self.instance.family().to_string(),
            params: self.instance.params(),
            d: self.d,
            n: self.n,
            epsilon: self.epsilon.to_string(),
            trials: self.trials,
            rejections: self.rejections,
            rate: self.rejection_rate.to_string(),
            ci_low: self.ci_low,
            ci_high: self.ci_high,
            query_mean: self.query_mean,
            query_max: self.query_max,
            seed: self.seed,
        }
    }
}

/// One output line; field order is the CSV column order.
#[derive(Serialize)]
struct ReportRow {
    family: String,
    params: String,
    d: usize,
    n: u32,
    epsilon: String,
    trials: u64,
    rejections: u64,
    rate: String,
    ci_low: f64,
    ci_high: f64,
    query_mean: u64,
    query_max: u64,
    seed: u64,
}

fn check_epsilon(epsilon: Rational) -> Result<()> {
    if epsilon <= Rational::from_integer(0) || epsilon >= Rational::new(1, 2) {
        return Err(Error::arg(format!("epsilon {epsilon} outside (0, 1/2)")));
    }
    Ok(())
}

/// Runs the unateness tester `trials` times on streams `(seed, 0..trials)`.
///
/// Fails with [`Error::BudgetExceeded`] if any single trial uses more than
/// [`query_budget`] queries.
pub fn run_trials(desc: &InstanceDescriptor, epsilon: Rational, trials: u64, seed: u64) -> Result<TrialReport> {
    check_epsilon(epsilon)?;
    if trials == 0 {
        return Err(Error::arg("trials must be at least 1"));
    }
    let f = desc.materialize()?;
    let dom = f.domain();
    let budget = query_budget(dom.d(), dom.n(), epsilon);

    let outcomes: Vec<(bool, u64)> = (0..trials)
        .into_par_iter()
        .map(|stream| run_one(&*f, epsilon, seed, stream))
        .collect::<Result<_>>()?;

    if let Some(&(_, worst)) = outcomes.iter().max_by_key(|(_, q)| *q) {
        if worst as f64 > budget {
            return Err(Error::BudgetExceeded {
                queries: worst,
                budget,
                d: dom.d(),
                n: dom.n(),
                epsilon: epsilon.to_string(),
            });
        }
    }

    let rejections = outcomes.iter().filter(|(rejected, _)| *rejected).count() as u64;
    let total: u64 = outcomes.iter().map(|(_, q)| q).sum();
    let query_max = outcomes.iter().map(|(_, q)| *q).max().unwrap_or(0);
    let (ci_low, ci_high) = wilson_interval(rejections, trials);
    Ok(TrialReport {
        instance: desc.clone(),
        d: dom.d(),
        n: dom.n(),
        epsilon,
        trials,
        rejections,
        rejection_rate: Rational::new(rejections as i64, trials as i64),
        ci_low,
        ci_high,
        query_mean: (total + trials / 2) / trials,
        query_max,
        seed,
    })
}

fn run_one(f: &dyn HypergridFunction, epsilon: Rational, seed: u64, stream: u64) -> Result<(bool, u64)> {
    let oracle = FunctionOracle::new(f);
    let mut rng = RandomSource::new(seed, stream);
    let verdict = unateness_tester(&oracle, epsilon, &mut rng)?;
    Ok((verdict.is_reject(), verdict.queries_used))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::arg(format!("unknown format {other:?} (expected csv or json)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Writes reports as CSV (header plus one row each) or as a JSON array of
/// objects with the same fields.
pub fn emit<W: Write>(reports: &[TrialReport], format: Format, mut out: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut writer = csv::Writer::from_writer(out);
            if reports.is_empty() {
                writer.write_record(CSV_COLUMNS)?;
            }
            for report in reports {
                writer.serialize(report.row())?;
            }
            writer.flush()?;
        }
        Format::Json => {
            let rows: Vec<ReportRow> = reports.iter().map(TrialReport::row).collect();
            serde_json::to_writer_pretty(&mut out, &rows)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

pub const CSV_COLUMNS: [&str; 13] = [
    "family",
    "params",
    "d",
    "n",
    "epsilon",
    "trials",
    "rejections",
    "rate",
    "ci_low",
    "ci_high",
    "query_mean",
    "query_max",
    "seed",
];

pub fn emit_to_path(reports: &[TrialReport], format: Format, path: impl AsRef<Path>) -> Result<()> {
    let mut buf = Vec::new();
    emit(reports, format, &mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

/// A sweep: every instance template crossed with the `d`, `n` and `ε` lists.
///
/// Omitting `d` or `n` keeps the template's own value. TOML form:
///
/// ```toml
/// instances = ["anti_unate n=2 d=2", "random_unate n=2 d=2 r=4 seed=1"]
/// d = [8, 16]
/// n = [2, 4]
/// epsilon = ["1/8", "1/4"]
/// trials = 100
/// seed = 0
/// output = "sweep.csv"
/// format = "csv"
/// ```
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub instances: Vec<InstanceDescriptor>,
    pub d: Option<Vec<usize>>,
    pub n: Option<Vec<u32>>,
    pub epsilon: Vec<Rational>,
    pub trials: u64,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
    pub format: Format,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    instances: Vec<String>,
    d: Option<Vec<usize>>,
    n: Option<Vec<u32>>,
    epsilon: Vec<String>,
    trials: u64,
    seed: Option<u64>,
    output: Option<PathBuf>,
    format: Option<String>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text)?;
        let config = ExperimentConfig {
            instances: raw.instances.iter().map(|s| s.parse()).collect::<Result<_>>()?,
            d: raw.d,
            n: raw.n,
            epsilon: raw.epsilon.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?,
            trials: raw.trials,
            seed: raw.seed,
            output: raw.output,
            format: raw.format.as_deref().map(str::parse).transpose()?.unwrap_or_default(),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::arg("trials must be at least 1"));
        }
        self.epsilon.iter().try_for_each(|&e| check_epsilon(e))
    }

    /// Cell descriptors in sweep order: instance, then `d`, then `n`, then `ε`.
    pub fn cells(&self) -> Vec<SweepCell> {
        let mut cells = Vec::new();
        for template in &self.instances {
            let ds: Vec<Option<usize>> = self.d.as_ref().map_or(vec![None], |v| v.iter().copied().map(Some).collect());
            let ns: Vec<Option<u32>> = self.n.as_ref().map_or(vec![None], |v| v.iter().copied().map(Some).collect());
            for &d in &ds {
                for &n in &ns {
                    for &epsilon in &self.epsilon {
                        cells.push(SweepCell { template: template.clone(), d, n, epsilon });
                    }
                }
            }
        }
        cells
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepCell {
    pub template: InstanceDescriptor,
    pub d: Option<usize>,
    pub n: Option<u32>,
    pub epsilon: Rational,
}

impl SweepCell {
    pub fn instance(&self) -> Result<InstanceDescriptor> {
        if self.d.is_none() && self.n.is_none() {
            return Ok(self.template.clone());
        }
        let own = self.template.materialize()?.domain();
        self.template.with_shape(self.d.unwrap_or(own.d()), self.n.unwrap_or(own.n()))
    }
}

impl fmt::Display for SweepCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.template)?;
        if let Some(d) = self.d {
            write!(f, " d={d}")?;
        }
        if let Some(n) = self.n {
            write!(f, " n={n}")?;
        }
        write!(f, " epsilon={}", self.epsilon)
    }
}

/// Outcome of one sweep cell; a failing cell does not stop the sweep.
#[derive(Debug)]
pub struct SweepRow {
    pub cell: SweepCell,
    pub outcome: Result<TrialReport>,
}

/// Runs every cell with the config's trials and `seed` in cell order.
pub fn sweep(config: &ExperimentConfig, seed: u64) -> Vec<SweepRow> {
    config
        .cells()
        .into_iter()
        .map(|cell| {
            let outcome = cell
                .instance()
                .and_then(|desc| run_trials(&desc, cell.epsilon, config.trials, seed));
            SweepRow { cell, outcome }
        })
        .collect()
}

/// The successful reports of a sweep, in cell order.
pub fn successful(rows: &[SweepRow]) -> Vec<TrialReport> {
    rows.iter().filter_map(|r| r.outcome.as_ref().ok().cloned()).collect()
}
