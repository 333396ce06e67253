//! Seeded multi-run experiments, summary statistics and table output.

use std::fmt::Write as _;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithm::Algorithm;
use crate::benchmarks;
use crate::chaining::{iterated_chain, ChainConfig};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::flight::FlightTable;
use crate::objective::{Objective, ObjectiveProbe};
use crate::result::RunResult;
use crate::rng::RngStream;

/// What a single run executes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Strategy {
    Single { algorithm: Algorithm },
    Chain { initial: Algorithm, chained: Algorithm, chain: ChainConfig },
}

impl Strategy {
    pub fn run(&self, probe: &mut ObjectiveProbe<'_>, domain: &Domain, rng: &mut RngStream) -> Result<RunResult> {
        match self {
            Strategy::Single { algorithm } => algorithm.run(probe, domain, rng, None),
            Strategy::Chain { initial, chained, chain } => {
                iterated_chain(initial, chained, probe, domain, chain, rng)
            }
        }
    }
}

impl From<Algorithm> for Strategy {
    fn from(algorithm: Algorithm) -> Self {
        Strategy::Single { algorithm }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ProblemSource {
    Benchmark { name: String },
    Flight { schedule: PathBuf, config: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub problem: ProblemSource,
    pub strategy: Strategy,
    pub runs: usize,
    pub master_seed: u64,
    pub parallelism: usize,
}

/// Aggregate over a batch of runs. `std_cost` is the population standard
/// deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatsSummary {
    pub mean_cost: f64,
    pub std_cost: f64,
    pub min_cost: f64,
    pub max_cost: f64,
    pub mean_nfe: f64,
    pub mean_wall_ms: f64,
}

impl StatsSummary {
    pub fn from_runs(runs: &[RunResult]) -> Result<Self> {
        if runs.is_empty() {
            return Err(Error::Usage("cannot summarize an empty batch".into()));
        }
        let n = runs.len() as f64;
        let costs: Vec<f64> = runs.iter().map(|r| r.best_cost).collect();
        let min_cost = costs.iter().copied().fold(f64::INFINITY, f64::min);
        let max_cost = costs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mean = costs.iter().sum::<f64>() / n;
        let var = costs.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / n;
        Ok(Self {
            // summation rounding must not push the mean outside the range
            mean_cost: mean.clamp(min_cost, max_cost),
            std_cost: var.sqrt(),
            min_cost,
            max_cost,
            mean_nfe: runs.iter().map(|r| r.nfe as f64).sum::<f64>() / n,
            mean_wall_ms: runs.iter().map(|r| r.wall_ms).sum::<f64>() / n,
        })
    }

    /// Copy with the wall-clock column zeroed, for byte-stable output.
    pub fn without_timing(self) -> Self {
        Self { mean_wall_ms: 0.0, ..self }
    }
}

/// Runs `runs` independent seeded runs on `workers` threads. Run `i` uses
/// the stream derived from `(master_seed, i)`, so results do not depend on
/// the worker count.
pub fn run_batch_on(
    objective: &dyn Objective,
    domain: &Domain,
    strategy: &Strategy,
    runs: usize,
    master_seed: u64,
    workers: usize,
) -> Result<(StatsSummary, Vec<RunResult>)> {
    if runs < 1 {
        return Err(Error::config("runs must be >= 1"));
    }
    if objective.dim() != domain.dim() {
        return Err(Error::Dimension { expected: objective.dim(), got: domain.dim() });
    }
    let one = |i: usize| -> Result<RunResult> {
        let mut probe = ObjectiveProbe::new(objective);
        let mut rng = RngStream::derive(master_seed, i as u64);
        strategy.run(&mut probe, domain, &mut rng)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::config(format!("thread pool: {e}")))?;
    let results: Vec<RunResult> =
        pool.install(|| (0..runs).into_par_iter().map(one).collect::<Result<Vec<_>>>())?;
    Ok((StatsSummary::from_runs(&results)?, results))
}

pub fn run_batch(spec: &ExperimentSpec) -> Result<(StatsSummary, Vec<RunResult>)> {
    match &spec.problem {
        ProblemSource::Benchmark { name } => {
            let b = benchmarks::find(name)?;
            run_batch_on(&b, &b.domain, &spec.strategy, spec.runs, spec.master_seed, spec.parallelism)
        }
        ProblemSource::Flight { schedule, config } => {
            let table = FlightTable::load(schedule, config)?;
            let domain = table.domain();
            run_batch_on(&table, &domain, &spec.strategy, spec.runs, spec.master_seed, spec.parallelism)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Csv,
    Json,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::Usage(format!("unknown format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableColumn {
    pub label: String,
    pub summary: StatsSummary,
}

const ROWS: [&str; 6] = ["mean", "std", "min", "max", "nfe", "runtime_ms"];

fn row_values(s: &StatsSummary) -> [f64; 6] {
    [s.mean_cost, s.std_cost, s.min_cost, s.max_cost, s.mean_nfe, s.mean_wall_ms]
}

/// One column per label, one row per statistic. CSV values carry two
/// decimals; JSON keeps full precision.
pub fn emit_table(summaries: &[(String, StatsSummary)], format: TableFormat) -> Result<String> {
    if summaries.is_empty() {
        return Err(Error::Usage("no summaries to emit".into()));
    }
    match format {
        TableFormat::Csv => {
            let mut out = String::from("metric");
            for (label, _) in summaries {
                out.push(',');
                out.push_str(label);
            }
            out.push('\n');
            for (r, name) in ROWS.iter().enumerate() {
                out.push_str(name);
                for (_, s) in summaries {
                    write!(out, ",{:.2}", row_values(s)[r]).unwrap();
                }
                out.push('\n');
            }
            Ok(out)
        }
        TableFormat::Json => {
            let cols: Vec<TableColumn> = summaries
                .iter()
                .map(|(label, summary)| TableColumn { label: label.clone(), summary: *summary })
                .collect();
            Ok(serde_json::to_string_pretty(&cols)? + "\n")
        }
    }
}

pub fn parse_table_json(text: &str) -> Result<Vec<(String, StatsSummary)>> {
    let cols: Vec<TableColumn> = serde_json::from_str(text)?;
    Ok(cols.into_iter().map(|c| (c.label, c.summary)).collect())
}

/// `iteration,cost` CSV of a run's history.
pub fn emit_history(result: &RunResult) -> Result<String> {
    if result.history.is_empty() {
        return Err(Error::Usage("run has no history".into()));
    }
    let mut out = String::from("iteration,cost\n");
    for (i, c) in &result.history {
        writeln!(out, "{i},{c}").unwrap();
    }
    Ok(out)
}
