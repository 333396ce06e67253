//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use switchopt::benchmarks::{self, BenchmarkSpec};
use switchopt::chaining::exceeds_recent_mean;
use switchopt::genetic::{GaEngine, Member};
use switchopt::harness::{emit_history, emit_table, run_batch_on, StatsSummary, Strategy, TableFormat};
use switchopt::local_search::simulated_annealing;
use switchopt::operators::{crossover_at, one_point_mutation, single_point_crossover};
use switchopt::{
    compute_num_reversals, random_search, should_stop, Algorithm, AlgorithmKind, ChainConfig,
    Domain, FlightTable, LocalSearchConfig, Objective, ObjectiveProbe, OperatorConfig, Params,
    RngStream, RunResult, SaConfig, Sense, Solution,
};

const SEED: u64 = 0;
const RUNS: usize = 20;
const TOL: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn workers() -> usize {
    std::thread::available_parallelism().map_or(4, |n| n.get())
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn batch(obj: &dyn Objective, domain: &Domain, kind: AlgorithmKind) -> (StatsSummary, Vec<RunResult>) {
    let strategy = Strategy::from(kind.configure(&Params::default()));
    run_batch_on(obj, domain, &strategy, RUNS, SEED, workers()).expect("batch runs")
}

fn bench(name: &str) -> BenchmarkSpec {
    benchmarks::find(name).expect("catalog entry")
}

fn load_table(schedule: &Path, config: &Path) -> FlightTable {
    FlightTable::load(schedule, config).expect("fixture loads")
}

fn synthetic_table() -> FlightTable {
    let dir = fixtures();
    load_table(&dir.join("synthetic_schedule.txt"), &dir.join("problem.json"))
}

fn canonical_table() -> Option<FlightTable> {
    let dir = std::env::var_os("SWITCHOPT_CANONICAL_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| fixtures().join("canonical"));
    let (schedule, config) = (dir.join("schedule.txt"), dir.join("problem.json"));
    (schedule.is_file() && config.is_file()).then(|| load_table(&schedule, &config))
}

fn criterion_1() -> Outcome {
    let started = Instant::now();
    let m = bench("matyas");
    let mut ok = true;
    let mut parts = Vec::new();
    for kind in AlgorithmKind::GA_VARIANTS {
        let (s, _) = batch(&m, &m.domain, kind);
        let hit = s.mean_cost.abs() <= TOL && s.std_cost <= TOL;
        ok &= hit;
        parts.push(format!("{} mean={} std={:.4}", kind.letter(), s.mean_cost, s.std_cost));
    }
    let secs = started.elapsed().as_secs_f64();
    ok &= secs < 30.0;
    parts.push(format!("{secs:.1}s"));
    Outcome::new(ok, parts.join(", "))
}

fn criterion_2() -> Outcome {
    let mut ok = true;
    let mut misses = Vec::new();
    for (name, target) in [
        ("sphere13", 0.0),
        ("booth", 0.0),
        ("brown13", 0.0),
        ("three_hump_camel", 0.0),
        ("ackley_n2", -200.0),
        ("schwefel13", schwefel_lattice_optimum()),
    ] {
        let b = bench(name);
        for kind in AlgorithmKind::GA_VARIANTS {
            let (_, runs) = batch(&b, &b.domain, kind);
            let bad = runs.iter().filter(|r| (r.best_cost - target).abs() > TOL).count();
            if bad > 0 {
                ok = false;
                misses.push(format!("{name}/{}: {bad} runs off", kind.letter()));
            }
        }
    }
    let detail = if misses.is_empty() { "all runs at optimum".to_string() } else { misses.join("; ") };
    Outcome::new(ok, detail)
}

/// Exhaustive per-coordinate scan; the function is separable with
/// identical terms, so the lattice optimum is 13 times the 1-D minimum.
fn schwefel_lattice_optimum() -> f64 {
    let b = bench("schwefel13");
    let (lo, hi) = b.domain.bounds()[0];
    let best_1d = (lo..=hi)
        .map(|v| (v as f64).powi(10))
        .fold(f64::INFINITY, f64::min);
    let mut rng = RngStream::new(99);
    for _ in 0..100 {
        let x = b.domain.random_solution(&mut rng);
        let direct: f64 = x.genes().iter().map(|&v| (v as f64).powi(10)).sum();
        assert_eq!(direct, b.cost(x.genes()), "oracle and formula disagree");
    }
    best_1d * b.dim as f64
}

fn reversal_benefit(name: &str, with_baselines: bool) -> Outcome {
    let b = bench(name);
    let (a, _) = batch(&b, &b.domain, AlgorithmKind::Ga);
    let (c, _) = batch(&b, &b.domain, AlgorithmKind::GaReversals);
    let mut ok = c.mean_cost < a.mean_cost;
    let mut detail = format!("C={:.2} < A={:.2}", c.mean_cost, a.mean_cost);
    if with_baselines {
        ok &= a.mean_cost < 1e3 && c.mean_cost < 1e3;
        for kind in [AlgorithmKind::HillClimbing, AlgorithmKind::RandomSearch, AlgorithmKind::SimulatedAnnealing] {
            let (s, _) = batch(&b, &b.domain, kind);
            let above = s.mean_cost > 1e4;
            ok &= above;
            detail.push_str(&format!(
                ", {}={:.1} {} 1e4",
                kind.letter(),
                s.mean_cost,
                if above { ">" } else { "<=" }
            ));
        }
    }
    Outcome::new(ok, detail)
}

fn flight_pattern(table: &FlightTable) -> (bool, String, StatsSummary) {
    let domain = table.domain();
    let mut worst_ga = f64::NEG_INFINITY;
    let mut best_local = f64::INFINITY;
    let mut parts = Vec::new();
    let mut reversals = None;
    for kind in AlgorithmKind::ALL {
        let (s, _) = batch(table, &domain, kind);
        parts.push(format!("{}={:.1}", kind.letter(), s.mean_cost));
        if AlgorithmKind::GA_VARIANTS.contains(&kind) {
            worst_ga = worst_ga.max(s.mean_cost);
        } else {
            best_local = best_local.min(s.mean_cost);
        }
        if kind == AlgorithmKind::GaReversals {
            reversals = Some(s);
        }
    }
    (worst_ga < best_local, parts.join(" "), reversals.expect("GA with reversals ran"))
}

fn criterion_5() -> Outcome {
    let (ok, detail, _) = flight_pattern(&synthetic_table());
    let mut detail = format!("synthetic six-city: {detail}");
    let mut ok = ok;
    match canonical_table() {
        Some(table) => {
            let (pattern, canon, c) = flight_pattern(&table);
            ok &= pattern && c.min_cost <= 2356.0 * 1.1;
            detail.push_str(&format!(
                "; canonical: {canon}, C min={} (2356 hit exactly: {})",
                c.min_cost,
                c.min_cost == 2356.0
            ));
        }
        None => detail.push_str("; canonical dataset absent, 2356 optimum not checked"),
    }
    Outcome::new(ok, detail)
}

fn criterion_6() -> Outcome {
    let mut tables = vec![("synthetic", synthetic_table())];
    if let Some(t) = canonical_table() {
        tables.push(("canonical", t));
    }
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, table) in &tables {
        let domain = table.domain();
        let params = Params::default();
        let ic = Strategy::Chain {
            initial: AlgorithmKind::RandomSearch.configure(&params),
            chained: AlgorithmKind::HillClimbing.configure(&params),
            chain: ChainConfig::default(),
        };
        let (s, _) = run_batch_on(table, &domain, &ic, RUNS, SEED, workers()).expect("chain batch");
        let (rs, _) = batch(table, &domain, AlgorithmKind::RandomSearch);
        let (hc, _) = batch(table, &domain, AlgorithmKind::HillClimbing);
        ok &= s.mean_cost < rs.mean_cost && s.mean_cost < hc.mean_cost;
        parts.push(format!(
            "{label}: IC={:.1} RS={:.1} HC={:.1}",
            s.mean_cost, rs.mean_cost, hc.mean_cost
        ));
    }
    Outcome::new(ok, parts.join("; "))
}

fn criterion_7() -> Outcome {
    let mut ok = exceeds_recent_mean(250.0, &[100.0, 100.0], 2, 100);
    ok &= (90..=100).all(|r| !exceeds_recent_mean(100.0, &[100.0, 100.0], 2, r));
    ok &= exceeds_recent_mean(191.0, &[100.0, 100.0], 2, 90);
    ok &= !exceeds_recent_mean(191.0, &[100.0, 100.0], 2, 100);

    // tolerance 100 pins R at 100
    let cfg = ChainConfig { tolerance: 100, ..ChainConfig::default() };
    let mut rng = RngStream::new(7);
    let mut degenerate = true;
    for _ in 0..10_000 {
        let scores: Vec<f64> = (0..1 + rng.index(4)).map(|_| rng.uniform() * 1000.0).collect();
        let cost = rng.uniform() * 1300.0;
        let window = &scores[scores.len().saturating_sub(cfg.n_obs)..];
        let mean = window.iter().sum::<f64>() / window.len() as f64;
        degenerate &= should_stop(cost, &scores, &cfg, &mut rng) == (cost > mean + 100.0);
    }
    ok &= degenerate;

    // a chain can only stop after recording at least two rounds
    let m = bench("matyas");
    let rs = Algorithm::RandomSearch(LocalSearchConfig { max_iter: 5 });
    let chain = ChainConfig { rounds: 6, tolerance: 0, ..ChainConfig::default() };
    let strategy = Strategy::Chain { initial: rs, chained: rs, chain };
    let (_, runs) = run_batch_on(&m, &m.domain, &strategy, 200, SEED, workers()).expect("chains");
    let round_zero_safe = runs.iter().all(|r| r.history.len() >= 2);
    ok &= round_zero_safe;
    Outcome::new(
        ok,
        format!("examples, R=100 degeneracy over 1e4 draws, no round-0 stop in 200 chains: {round_zero_safe}"),
    )
}

fn criterion_8() -> Outcome {
    let oracle = |g: usize, n: usize| g / n;
    let mut rng = RngStream::new(8);
    let mut bad = 0;
    for _ in 0..50 {
        let g = 1 + rng.index(10_000);
        let n = 1 + rng.index(g);
        if compute_num_reversals(g, n).ok() != Some(oracle(g, n)) {
            bad += 1;
        }
    }
    Outcome::new(bad == 0, format!("{bad}/50 mismatches"))
}

fn criterion_9() -> Outcome {
    let b = bench("rosenbrock13");
    let mut rng = RngStream::new(SEED);
    let mut probe = ObjectiveProbe::new(&b);
    let rs = random_search(&mut probe, &b.domain, &LocalSearchConfig { max_iter: 100 }, &mut rng, None)
        .expect("random search");
    let sa_cfg = SaConfig::default();
    let mut probe = ObjectiveProbe::new(&b);
    let sa = simulated_annealing(&mut probe, &b.domain, &sa_cfg, &mut rng, None).expect("annealing");
    let ok = rs.nfe == 100 && sa_cfg.iterations() == 256 && sa.nfe == 512 && probe.eval_count() == 512;
    Outcome::new(ok, format!("RS nfe={}, SA iterations={} nfe={}", rs.nfe, sa_cfg.iterations(), sa.nfe))
}

fn criterion_10() -> Outcome {
    let dir = fixtures();
    let table = load_table(&dir.join("micro_schedule.txt"), &dir.join("micro_problem.json"));
    let domain = table.domain();
    let space = domain.cardinality();
    let mut optimum = f64::INFINITY;
    for idx in 0..space as u64 {
        let mut rest = idx;
        let genes: Vec<i64> = domain
            .bounds()
            .iter()
            .map(|&(lo, hi)| {
                let width = (hi - lo + 1) as u64;
                let g = lo + (rest % width) as i64;
                rest /= width;
                g
            })
            .collect();
        optimum = optimum.min(table.schedule_cost(&Solution::from_genes(genes)).expect("in range"));
    }
    let (_, runs) = batch(&table, &domain, AlgorithmKind::GaReversals);
    let hits = runs.iter().filter(|r| r.best_cost == optimum).count();
    let never_below = runs.iter().all(|r| r.best_cost >= optimum);
    let misses: Vec<String> =
        runs.iter().filter(|r| r.best_cost != optimum).map(|r| r.best_cost.to_string()).collect();
    Outcome::new(
        space <= 10_000 && hits >= 18 && never_below,
        format!("{space} combinations, optimum {optimum}, GA hit {hits}/20, misses at [{}]", misses.join(" ")),
    )
}

fn summary_csv(workers: usize) -> String {
    let params = Params::default();
    let m = bench("matyas");
    let r = bench("rosenbrock13");
    let table = synthetic_table();
    let flight_domain = table.domain();
    let ic = Strategy::Chain {
        initial: AlgorithmKind::RandomSearch.configure(&params),
        chained: AlgorithmKind::HillClimbing.configure(&params),
        chain: ChainConfig { rounds: 3, ..ChainConfig::default() },
    };
    let mut rows = Vec::new();
    let mut histories = String::new();
    let mut push = |label: String, obj: &dyn Objective, domain: &Domain, strategy: &Strategy| {
        let (s, runs) = run_batch_on(obj, domain, strategy, RUNS, SEED, workers).expect("batch");
        rows.push((label, s.without_timing()));
        for run in &runs {
            histories.push_str(&emit_history(run).expect("history"));
        }
    };
    for kind in AlgorithmKind::ALL {
        push(format!("matyas {}", kind.letter()), &m, &m.domain, &Strategy::from(kind.configure(&params)));
    }
    push("rosenbrock C".into(), &r, &r.domain, &Strategy::from(AlgorithmKind::GaReversals.configure(&params)));
    push("flight G".into(), &table, &flight_domain, &Strategy::from(AlgorithmKind::GaStochasticReversals.configure(&params)));
    push("flight IC".into(), &table, &flight_domain, &ic);
    emit_table(&rows, TableFormat::Csv).expect("table") + &histories
}

fn cli_csv(threads: usize, out: &Path) -> Vec<u8> {
    let status = Command::new(env!("CARGO_BIN_EXE_switchopt"))
        .args(["bench", "--function", "zakharov13", "--algo", "all", "--runs", "20", "--seed", "11"])
        .args(["--threads", &threads.to_string(), "--omit-runtime", "--out"])
        .arg(out)
        .status()
        .expect("cli runs");
    assert!(status.success());
    std::fs::read(out).expect("cli output")
}

fn criterion_11() -> Outcome {
    let lib = summary_csv(1) == summary_csv(8);
    let dir = tempfile::tempdir().expect("temp dir");
    let cli = cli_csv(1, &dir.path().join("one.csv")) == cli_csv(8, &dir.path().join("eight.csv"));
    Outcome::new(lib && cli, format!("library tables+histories identical: {lib}, CLI CSV identical: {cli}"))
}

fn criterion_12() -> Outcome {
    let mut rng = RngStream::new(12);

    // operators keep every gene inside its bounds
    let mut bound_violations = 0usize;
    let ops = OperatorConfig::default();
    for _ in 0..100_000 {
        let dim = 2 + rng.index(12);
        let bounds: Vec<(i64, i64)> = (0..dim)
            .map(|_| {
                let lo = rng.int_inclusive(-50, 50);
                (lo, lo + rng.int_inclusive(0, 20))
            })
            .collect();
        let domain = Domain::new(bounds).expect("valid bounds");
        let a = domain.random_solution(&mut rng);
        let b = domain.random_solution(&mut rng);
        let mutated = one_point_mutation(&a, &domain, &ops, &mut rng);
        let crossed = single_point_crossover(&a, &b, &mut rng).expect("dim >= 2");
        let edge = crossover_at(&a, &b, dim - 1);
        for s in [&mutated, &crossed, &edge] {
            if !domain.contains(s) {
                bound_violations += 1;
            }
        }
        if mutated.hamming(&a) > 1 {
            bound_violations += 1;
        }
    }

    // elitism under minimization, duality under maximization
    let mut elitism_violations = 0usize;
    let mut duality_violations = 0usize;
    let mut generations = 0usize;
    for name in ["rosenbrock13", "zakharov13", "matyas", "griewank13", "schaffer_n1"] {
        let b = bench(name);
        for seed in 0..4 {
            let mut rng = RngStream::derive(1200, seed);
            let mut probe = ObjectiveProbe::new(&b);
            let cfg = Params::default().ga;
            let mut engine = GaEngine::new(&mut probe, &b.domain, cfg, &mut rng, None).expect("engine");
            for phase in 0..6 {
                let reversed = phase % 2 == 1;
                if reversed {
                    engine.flip_sense(&mut probe);
                }
                let mut previous = best_true(&engine);
                for _ in 0..40 {
                    if reversed {
                        engine.rank();
                        let head = engine.true_cost(&engine.members()[0]);
                        let max = engine.members().iter().map(|m| engine.true_cost(m)).fold(f64::NEG_INFINITY, f64::max);
                        if head != max || engine.sense() != Sense::MaximizeReversed {
                            duality_violations += 1;
                        }
                    }
                    engine.generation(&mut probe, &mut rng).expect("generation");
                    generations += 1;
                    let now = best_true(&engine);
                    if !reversed && now > previous {
                        elitism_violations += 1;
                    }
                    previous = now;
                }
                if reversed {
                    engine.flip_sense(&mut probe);
                }
            }
        }
    }

    // hand-built population: argmin and argmax swap places under a flip
    let d = Domain::uniform(-3, 3, 2).expect("domain");
    let members: Vec<Member> = [[0, 0], [3, -3], [1, 1], [-2, 2]]
        .iter()
        .map(|g| {
            let s = Solution::from_genes(g.to_vec());
            Member { value: benchmarks::matyas(s.genes()), solution: s }
        })
        .collect();
    let cfg = switchopt::GaConfig { pop_size: 4, elite_rate: 0.5, ..Default::default() };
    let mut engine = GaEngine::from_members(&d, cfg, Sense::Minimize, members).expect("engine");
    engine.rank();
    let argmin = engine.members()[0].solution.clone();
    let m = bench("matyas");
    let mut probe = ObjectiveProbe::new(&m);
    engine.flip_sense(&mut probe);
    engine.rank();
    let argmax = engine.members()[0].solution.clone();
    if argmin.genes() != [0, 0] || argmax.genes() != [3, -3] {
        duality_violations += 1;
    }

    let total = bound_violations + elitism_violations + duality_violations;
    Outcome::new(
        total == 0,
        format!(
            "bounds {bound_violations}/300000 checks, elitism {elitism_violations} and duality {duality_violations} over {generations} generations"
        ),
    )
}

fn best_true(engine: &GaEngine<'_>) -> f64 {
    engine.true_cost(engine.population_best())
}

fn main() {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check); 12] = [
        ("Matyas optimum for GA variants A B C G", criterion_1),
        ("complete convergence set", criterion_2),
        ("reversal benefit on Rosenbrock(13) with baselines", || reversal_benefit("rosenbrock13", true)),
        ("reversal benefit on Zakharov(13)", || reversal_benefit("zakharov13", false)),
        ("flight problem, GA variants beat local searches", criterion_5),
        ("IC(RS, HC) below both constituents", criterion_6),
        ("early stopping rule", criterion_7),
        ("number of reversals", criterion_8),
        ("evaluation accounting", criterion_9),
        ("brute-force equivalence on micro flight data", criterion_10),
        ("determinism across worker counts", criterion_11),
        ("operator, elitism and sign-flip properties", criterion_12),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let n = i + 1;
        if !filter.is_empty() && !filter.iter().any(|f| f == &n.to_string()) {
            continue;
        }
        let started = Instant::now();
        let outcome = check();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        if !outcome.pass {
            failed += 1;
        }
        println!(
            "criterion {n:>2} {verdict}  {name} [{}] ({:.1}s)",
            outcome.detail,
            started.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
