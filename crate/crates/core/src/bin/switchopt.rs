use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use switchopt::benchmarks;
use switchopt::chaining::ChainConfig;
use switchopt::flight::FlightTable;
use switchopt::genetic::{GaConfig, ReversalConfig, ReversalMode};
use switchopt::harness::{emit_history, emit_table, run_batch_on, Strategy, TableFormat};
use switchopt::local_search::{LocalSearchConfig, SaConfig};
use switchopt::objective::{Objective, ObjectiveProbe};
use switchopt::operators::OperatorConfig;
use switchopt::{AlgorithmKind, Domain, Error, Params, Result, RngStream};

#[derive(Parser)]
#[command(name = "switchopt", version, about = "Switching-based discrete optimization experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multi-seed statistics on a benchmark function.
    Bench {
        #[arg(long)]
        function: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Multi-seed statistics on the flight-scheduling problem.
    Flight {
        #[arg(long)]
        schedule: PathBuf,
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Per-iteration cost series of a single run.
    History {
        #[arg(long, required_unless_present = "schedule")]
        function: Option<String>,
        #[arg(long, requires = "config")]
        schedule: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value = "ga-reversals")]
        algo: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        chain: ChainArgs,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Comma-separated algorithms (ga, ga-reverse-ops, ga-reversals, hc, rs,
    /// sa, ga-stochastic-reversals, ic) or `all`.
    #[arg(long, default_value = "all")]
    algo: String,
    #[arg(long, default_value_t = 20)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "SWITCHOPT_THREADS")]
    threads: Option<usize>,
    #[arg(long, default_value = "csv")]
    format: String,
    /// Zero the runtime row so repeated runs produce identical bytes.
    #[arg(long)]
    omit_runtime: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    chain: ChainArgs,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Args)]
struct ChainArgs {
    /// Initial algorithm of an `ic` chain.
    #[arg(long, default_value = "rs")]
    initial: String,
    /// Chained algorithm of an `ic` chain.
    #[arg(long, default_value = "hc")]
    chained: String,
    #[arg(long, default_value_t = 1)]
    rounds: usize,
    #[arg(long, default_value_t = 90)]
    tolerance: u32,
    #[arg(long, default_value_t = 2)]
    n_obs: usize,
    #[arg(long, default_value_t = 0.5)]
    random_mutation_probability: f64,
    /// Disable the hand-off mutations.
    #[arg(long)]
    no_chain_mutation: bool,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, default_value_t = 100)]
    pop_size: usize,
    #[arg(long, default_value_t = 500)]
    generations: usize,
    #[arg(long, default_value_t = 0.2)]
    elite_rate: f64,
    #[arg(long, default_value_t = 0.2)]
    p_mutation: f64,
    #[arg(long, default_value_t = 1)]
    mutation_step: i64,
    /// Reversal period; defaults to generations / 2.
    #[arg(long)]
    n_k: Option<usize>,
    #[arg(long, default_value_t = 100)]
    step_length: usize,
    #[arg(long, default_value_t = 100)]
    max_iter: usize,
    #[arg(long, default_value_t = 50_000.0)]
    t0: f64,
    #[arg(long, default_value_t = 0.95)]
    cooling: f64,
    #[arg(long, default_value_t = 0.1)]
    t_stop: f64,
    #[arg(long, default_value_t = 1)]
    sa_step: i64,
}

impl ParamArgs {
    fn params(&self) -> Params {
        let operators = OperatorConfig { mutation_step: self.mutation_step, ..Default::default() };
        let ga = GaConfig {
            pop_size: self.pop_size,
            generations: self.generations,
            elite_rate: self.elite_rate,
            p_mutation: self.p_mutation,
            reverse_ops: false,
            operators,
        };
        let mut reversal = ReversalConfig::for_generations(self.generations, ReversalMode::GaReversal);
        reversal.step_length = self.step_length;
        if let Some(n_k) = self.n_k {
            reversal.n_k = n_k;
        }
        Params {
            ga,
            reversal,
            local: LocalSearchConfig { max_iter: self.max_iter },
            sa: SaConfig { t0: self.t0, cooling: self.cooling, t_stop: self.t_stop, step: self.sa_step },
        }
    }
}

impl ChainArgs {
    fn config(&self, params: &ParamArgs) -> ChainConfig {
        ChainConfig {
            rounds: self.rounds,
            tolerance: self.tolerance,
            n_obs: self.n_obs,
            random_mutation_probability: self.random_mutation_probability,
            mutations: !self.no_chain_mutation,
            operators: OperatorConfig { mutation_step: params.mutation_step, ..Default::default() },
        }
    }
}

fn strategy(name: &str, chain: &ChainArgs, params: &ParamArgs) -> Result<(String, Strategy)> {
    let p = params.params();
    if name.trim().eq_ignore_ascii_case("ic") {
        let initial: AlgorithmKind = chain.initial.parse()?;
        let chained: AlgorithmKind = chain.chained.parse()?;
        let label = format!("IC({},{})", initial.name(), chained.name());
        return Ok((
            label,
            Strategy::Chain {
                initial: initial.configure(&p),
                chained: chained.configure(&p),
                chain: chain.config(params),
            },
        ));
    }
    let kind: AlgorithmKind = name.parse()?;
    Ok((kind.letter().to_string(), kind.configure(&p).into()))
}

fn strategies(list: &str, chain: &ChainArgs, params: &ParamArgs) -> Result<Vec<(String, Strategy)>> {
    if list.trim().eq_ignore_ascii_case("all") {
        return AlgorithmKind::ALL
            .iter()
            .map(|k| strategy(k.name(), chain, params))
            .collect();
    }
    list.split(',').map(|a| strategy(a, chain, params)).collect()
}

fn write_out(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn batch(objective: &dyn Objective, domain: &Domain, run: &RunArgs) -> Result<()> {
    let format: TableFormat = run.format.parse()?;
    let threads = run
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let mut columns = Vec::new();
    for (label, strategy) in strategies(&run.algo, &run.chain, &run.params)? {
        let (summary, _) = run_batch_on(objective, domain, &strategy, run.runs, run.seed, threads)?;
        let summary = if run.omit_runtime { summary.without_timing() } else { summary };
        columns.push((label, summary));
    }
    write_out(&emit_table(&columns, format)?, run.out.as_ref())
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Bench { function, run } => {
            let b = benchmarks::find(&function)?;
            batch(&b, &b.domain, &run)
        }
        Command::Flight { schedule, config, run } => {
            let table = FlightTable::load(&schedule, &config)?;
            batch(&table, &table.domain(), &run)
        }
        Command::History { function, schedule, config, algo, seed, out, chain, params } => {
            let (_, strategy) = strategy(&algo, &chain, &params)?;
            let mut rng = RngStream::new(seed);
            let result = match (schedule, config) {
                (Some(schedule), Some(config)) => {
                    let table = FlightTable::load(&schedule, &config)?;
                    strategy.run(&mut ObjectiveProbe::new(&table), &table.domain(), &mut rng)?
                }
                _ => {
                    let name = function.ok_or_else(|| Error::Usage("--function is required".into()))?;
                    let b = benchmarks::find(&name)?;
                    strategy.run(&mut ObjectiveProbe::new(&b), &b.domain, &mut rng)?
                }
            };
            write_out(&emit_history(&result)?, out.as_ref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("switchopt: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
