//! Python bindings: benchmarks, the flight cost model, single runs, seeded
//! batches and the chaining stop rule.

use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;

use switchopt::benchmarks;
use switchopt::harness::{emit_table, run_batch_on, StatsSummary, Strategy, TableFormat};
use switchopt::{
    AlgorithmKind, ChainConfig, Domain, Error, Objective, ObjectiveProbe, Params, RngStream,
    Solution,
};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io(io) => PyOSError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn params(json: Option<&str>) -> PyResult<Params> {
    match json {
        Some(text) => serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string())),
        None => Ok(Params::default()),
    }
}

fn strategy(algo: &str, params: &Params, chain: Option<(&str, &str, ChainConfig)>) -> PyResult<Strategy> {
    if algo.eq_ignore_ascii_case("ic") {
        let (initial, chained, cfg) = chain.unwrap_or(("rs", "hc", ChainConfig::default()));
        let initial: AlgorithmKind = initial.parse().map_err(to_py)?;
        let chained: AlgorithmKind = chained.parse().map_err(to_py)?;
        return Ok(Strategy::Chain {
            initial: initial.configure(params),
            chained: chained.configure(params),
            chain: cfg,
        });
    }
    let kind: AlgorithmKind = algo.parse().map_err(to_py)?;
    Ok(kind.configure(params).into())
}

/// Outcome of one run.
#[pyclass(name = "RunResult", get_all)]
struct PyRunResult {
    best: Vec<i64>,
    best_cost: f64,
    history: Vec<(usize, f64)>,
    nfe: u64,
    wall_ms: f64,
}

#[pymethods]
impl PyRunResult {
    fn __repr__(&self) -> String {
        format!("RunResult(best_cost={}, nfe={})", self.best_cost, self.nfe)
    }
}

impl From<switchopt::RunResult> for PyRunResult {
    fn from(r: switchopt::RunResult) -> Self {
        Self {
            best: r.best.into_genes(),
            best_cost: r.best_cost,
            history: r.history,
            nfe: r.nfe,
            wall_ms: r.wall_ms,
        }
    }
}

/// Mean, population standard deviation and range of a batch.
#[pyclass(name = "Stats", get_all)]
struct PyStats {
    mean_cost: f64,
    std_cost: f64,
    min_cost: f64,
    max_cost: f64,
    mean_nfe: f64,
    mean_wall_ms: f64,
}

#[pymethods]
impl PyStats {
    fn __repr__(&self) -> String {
        format!(
            "Stats(mean_cost={}, std_cost={}, min_cost={}, max_cost={})",
            self.mean_cost, self.std_cost, self.min_cost, self.max_cost
        )
    }
}

impl From<StatsSummary> for PyStats {
    fn from(s: StatsSummary) -> Self {
        Self {
            mean_cost: s.mean_cost,
            std_cost: s.std_cost,
            min_cost: s.min_cost,
            max_cost: s.max_cost,
            mean_nfe: s.mean_nfe,
            mean_wall_ms: s.mean_wall_ms,
        }
    }
}

#[pyclass(name = "FlightTable", frozen)]
struct PyFlightTable {
    inner: switchopt::FlightTable,
}

#[pymethods]
impl PyFlightTable {
    #[staticmethod]
    fn load(schedule: &str, config: &str) -> PyResult<Self> {
        let inner = switchopt::FlightTable::load(schedule, config).map_err(to_py)?;
        Ok(Self { inner })
    }

    /// Builds a table from schedule text and the problem config as JSON.
    #[staticmethod]
    fn parse(schedule_text: &str, config_json: &str) -> PyResult<Self> {
        let config = switchopt::ProblemConfig::from_json(config_json).map_err(to_py)?;
        let inner = switchopt::FlightTable::parse(schedule_text, &config).map_err(to_py)?;
        Ok(Self { inner })
    }

    #[getter]
    fn bounds(&self) -> Vec<(i64, i64)> {
        self.inner.domain().bounds().to_vec()
    }

    #[getter]
    fn people(&self) -> Vec<(String, String)> {
        self.inner.people().to_vec()
    }

    fn cost(&self, genes: Vec<i64>) -> PyResult<f64> {
        self.inner.schedule_cost(&Solution::from_genes(genes)).map_err(to_py)
    }

    #[pyo3(signature = (algo, seed=0, params_json=None))]
    fn run(&self, algo: &str, seed: u64, params_json: Option<&str>) -> PyResult<PyRunResult> {
        run_on(&self.inner, &self.inner.domain(), algo, seed, params_json)
    }

    #[pyo3(signature = (algo, runs=20, seed=0, threads=1, params_json=None))]
    fn batch(
        &self,
        py: Python<'_>,
        algo: &str,
        runs: usize,
        seed: u64,
        threads: usize,
        params_json: Option<&str>,
    ) -> PyResult<PyStats> {
        batch_on(py, &self.inner, &self.inner.domain(), algo, runs, seed, threads, params_json)
    }
}

fn run_on(
    objective: &dyn Objective,
    domain: &Domain,
    algo: &str,
    seed: u64,
    params_json: Option<&str>,
) -> PyResult<PyRunResult> {
    let s = strategy(algo, &params(params_json)?, None)?;
    let mut probe = ObjectiveProbe::new(objective);
    let r = s.run(&mut probe, domain, &mut RngStream::new(seed)).map_err(to_py)?;
    Ok(r.into())
}

#[allow(clippy::too_many_arguments)]
fn batch_on(
    py: Python<'_>,
    objective: &(dyn Objective + Sync),
    domain: &Domain,
    algo: &str,
    runs: usize,
    seed: u64,
    threads: usize,
    params_json: Option<&str>,
) -> PyResult<PyStats> {
    let s = strategy(algo, &params(params_json)?, None)?;
    let (summary, _) = py
        .detach(|| run_batch_on(objective, domain, &s, runs, seed, threads))
        .map_err(to_py)?;
    Ok(summary.into())
}

#[pyfunction]
fn benchmark_names() -> Vec<&'static str> {
    benchmarks::catalog().iter().map(|b| b.name).collect()
}

type Info = (usize, Vec<(i64, i64)>, f64);

/// `(dim, bounds, known optimum cost)` of a benchmark.
#[pyfunction]
fn benchmark_info(name: &str) -> PyResult<Info> {
    let b = benchmarks::find(name).map_err(to_py)?;
    Ok((b.dim, b.domain.bounds().to_vec(), b.known_optimum_cost))
}

#[pyfunction]
fn evaluate(name: &str, genes: Vec<i64>) -> PyResult<f64> {
    let b = benchmarks::find(name).map_err(to_py)?;
    benchmarks::evaluate_benchmark(&b, &Solution::from_genes(genes)).map_err(to_py)
}

/// Single seeded run of `algo` (a name, letter or `ic`) on a benchmark.
#[pyfunction]
#[pyo3(signature = (function, algo, seed=0, params_json=None))]
fn run_benchmark(function: &str, algo: &str, seed: u64, params_json: Option<&str>) -> PyResult<PyRunResult> {
    let b = benchmarks::find(function).map_err(to_py)?;
    run_on(&b, &b.domain, algo, seed, params_json)
}

#[pyfunction]
#[pyo3(signature = (function, algo, runs=20, seed=0, threads=1, params_json=None))]
fn batch_benchmark(
    py: Python<'_>,
    function: &str,
    algo: &str,
    runs: usize,
    seed: u64,
    threads: usize,
    params_json: Option<&str>,
) -> PyResult<PyStats> {
    let b = benchmarks::find(function).map_err(to_py)?;
    batch_on(py, &b, &b.domain, algo, runs, seed, threads, params_json)
}

/// CSV table, one column per algorithm, wall time zeroed.
#[pyfunction]
#[pyo3(signature = (function, algos, runs=20, seed=0, threads=1))]
fn benchmark_table(
    py: Python<'_>,
    function: &str,
    algos: Vec<String>,
    runs: usize,
    seed: u64,
    threads: usize,
) -> PyResult<String> {
    let b = benchmarks::find(function).map_err(to_py)?;
    let p = Params::default();
    let mut columns = Vec::new();
    for algo in &algos {
        let s = strategy(algo, &p, None)?;
        let (summary, _) = py
            .detach(|| run_batch_on(&b, &b.domain, &s, runs, seed, threads))
            .map_err(to_py)?;
        columns.push((algo.clone(), summary.without_timing()));
    }
    emit_table(&columns, TableFormat::Csv).map_err(to_py)
}

/// Default tunables as JSON, to edit and pass back as `params_json`.
#[pyfunction]
fn default_params() -> String {
    serde_json::to_string_pretty(&Params::default()).expect("plain data serializes")
}

#[pyfunction]
fn compute_num_reversals(generations: usize, n_k: usize) -> PyResult<usize> {
    switchopt::compute_num_reversals(generations, n_k).map_err(to_py)
}

/// The chaining stop rule with its slack drawn from a stream seeded by `seed`.
#[pyfunction]
#[pyo3(signature = (cost, scores, tolerance=90, n_obs=2, seed=0))]
fn should_stop(cost: f64, scores: Vec<f64>, tolerance: u32, n_obs: usize, seed: u64) -> PyResult<bool> {
    if scores.is_empty() {
        return Err(PyValueError::new_err("scores must not be empty"));
    }
    let cfg = ChainConfig { tolerance, n_obs, ..ChainConfig::default() };
    cfg.validate().map_err(to_py)?;
    Ok(switchopt::should_stop(cost, &scores, &cfg, &mut RngStream::new(seed)))
}

#[pyfunction]
fn get_minutes(t: &str) -> PyResult<u32> {
    switchopt::flight::get_minutes(t).map_err(to_py)
}

#[pymodule]
pub fn pyswitchopt(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRunResult>()?;
    m.add_class::<PyStats>()?;
    m.add_class::<PyFlightTable>()?;
    m.add_function(wrap_pyfunction!(benchmark_names, m)?)?;
    m.add_function(wrap_pyfunction!(benchmark_info, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(run_benchmark, m)?)?;
    m.add_function(wrap_pyfunction!(batch_benchmark, m)?)?;
    m.add_function(wrap_pyfunction!(benchmark_table, m)?)?;
    m.add_function(wrap_pyfunction!(default_params, m)?)?;
    m.add_function(wrap_pyfunction!(compute_num_reversals, m)?)?;
    m.add_function(wrap_pyfunction!(should_stop, m)?)?;
    m.add_function(wrap_pyfunction!(get_minutes, m)?)?;
    Ok(())
}
