//! Elitist genetic algorithm and its switching variants.
//!
//! The same generation update drives all four variants:
//!
//! * standard GA: a child is a mutation of one elite with probability
//!   `p_mutation`, otherwise a crossover of two elites;
//! * reverse operations: the roles swap, so `p_mutation` becomes the
//!   crossover probability;
//! * reversals: at scheduled generations the probe is flipped to
//!   maximize the cost for `step_length` generations, then flipped back;
//! * stochastic reversals: the window is a random search on the flipped
//!   probe whose result is injected into the population.

use std::cmp::Ordering;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::domain::{Domain, Solution};
use crate::error::{Error, Result};
use crate::local_search::random_search_n;
use crate::objective::{ObjectiveProbe, Sense};
use crate::operators::{one_point_mutation, single_point_crossover, OperatorConfig};
use crate::result::{Incumbent, RunResult};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaConfig {
    pub pop_size: usize,
    pub generations: usize,
    pub elite_rate: f64,
    pub p_mutation: f64,
    pub reverse_ops: bool,
    #[serde(default)]
    pub operators: OperatorConfig,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            pop_size: 100,
            generations: 500,
            elite_rate: 0.2,
            p_mutation: 0.2,
            reverse_ops: false,
            operators: OperatorConfig::default(),
        }
    }
}

impl GaConfig {
    pub fn elite_count(&self) -> usize {
        // 100 * 0.2 is 20.000000000000004 in binary floating point.
        (self.pop_size as f64 * self.elite_rate + 1e-9).floor() as usize
    }

    pub fn validate(&self) -> Result<()> {
        if self.pop_size == 0 || self.generations == 0 {
            return Err(Error::config("pop_size and generations must be positive"));
        }
        if !(self.elite_rate > 0.0 && self.elite_rate <= 1.0) {
            return Err(Error::config("elite_rate must lie in (0, 1]"));
        }
        if !(0.0..=1.0).contains(&self.p_mutation) {
            return Err(Error::config("p_mutation must lie in [0, 1]"));
        }
        if self.elite_count() < 2 {
            return Err(Error::config(format!(
                "floor(pop_size * elite_rate) = {} but crossover needs two elites",
                self.elite_count()
            )));
        }
        self.operators.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReversalMode {
    GaReversal,
    StochasticReversal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReversalConfig {
    /// Reversal windows open at outer generations divisible by `n_k`.
    pub n_k: usize,
    /// Generations (or random-search evaluations) per window.
    pub step_length: usize,
    pub mode: ReversalMode,
}

impl ReversalConfig {
    /// `n_k = generations / 2`, which yields exactly one window.
    pub fn for_generations(generations: usize, mode: ReversalMode) -> Self {
        Self {
            n_k: (generations / 2).max(1),
            step_length: 100,
            mode,
        }
    }

    pub fn validate(&self, generations: usize) -> Result<()> {
        compute_num_reversals(generations, self.n_k)?;
        if self.step_length < 1 {
            return Err(Error::config("step_length must be >= 1"));
        }
        Ok(())
    }
}

impl Default for ReversalConfig {
    fn default() -> Self {
        Self::for_generations(GaConfig::default().generations, ReversalMode::GaReversal)
    }
}

/// `floor(generations / n_k)`, the number of reversals a run may perform.
pub fn compute_num_reversals(generations: usize, n_k: usize) -> Result<usize> {
    if n_k < 1 || n_k > generations {
        return Err(Error::config(format!(
            "n_k must lie in [1, generations = {generations}], got {n_k}"
        )));
    }
    Ok(generations / n_k)
}

/// Outer generations at which a reversal window opens: every `i > 0` with
/// `i % n_k == 0`, capped at the reversal budget.
pub fn reversal_schedule(generations: usize, n_k: usize) -> Result<Vec<usize>> {
    let budget = compute_num_reversals(generations, n_k)?;
    Ok((1..generations)
        .filter(|i| i % n_k == 0)
        .take(budget)
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub solution: Solution,
    /// Probe value under the sense in force when the member was evaluated
    /// (kept in sync across flips).
    pub value: f64,
}

/// Population state plus the per-generation update, exposed so callers can
/// drive or inspect individual generations.
pub struct GaEngine<'d> {
    domain: &'d Domain,
    cfg: GaConfig,
    elite_count: usize,
    members: Vec<Member>,
    sense: Sense,
    incumbent: Incumbent,
    history: Vec<(usize, f64)>,
}

impl<'d> GaEngine<'d> {
    /// Draws and evaluates the initial population. `init`, when given,
    /// replaces one uniformly chosen member.
    pub fn new(
        probe: &mut ObjectiveProbe<'_>,
        domain: &'d Domain,
        cfg: GaConfig,
        rng: &mut RngStream,
        init: Option<&Solution>,
    ) -> Result<Self> {
        cfg.validate()?;
        if domain.dim() < 2 {
            return Err(Error::CrossoverInfeasible(domain.dim()));
        }
        if let Some(s) = init {
            domain.check(s)?;
        }
        let mut solutions: Vec<Solution> =
            (0..cfg.pop_size).map(|_| domain.random_solution(rng)).collect();
        if let Some(s) = init {
            let slot = rng.index(cfg.pop_size);
            solutions[slot] = s.clone();
        }
        let mut engine = Self {
            domain,
            cfg,
            elite_count: cfg.elite_count(),
            members: Vec::with_capacity(cfg.pop_size),
            sense: probe.sense(),
            incumbent: Incumbent::new(),
            history: Vec::new(),
        };
        for s in solutions {
            engine.admit(probe, s)?;
        }
        Ok(engine)
    }

    pub fn from_members(domain: &'d Domain, cfg: GaConfig, sense: Sense, members: Vec<Member>) -> Result<Self> {
        cfg.validate()?;
        if members.len() != cfg.pop_size {
            return Err(Error::config("member count must equal pop_size"));
        }
        let mut incumbent = Incumbent::new();
        for m in &members {
            domain.check(&m.solution)?;
            incumbent.offer(&m.solution, sense.apply(m.value));
        }
        Ok(Self {
            domain,
            cfg,
            elite_count: cfg.elite_count(),
            members,
            sense,
            incumbent,
            history: Vec::new(),
        })
    }

    fn admit(&mut self, probe: &mut ObjectiveProbe<'_>, s: Solution) -> Result<()> {
        let value = probe.evaluate(&s)?;
        self.incumbent.offer(&s, self.sense.apply(value));
        self.members.push(Member { solution: s, value });
        Ok(())
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn elite_count(&self) -> usize {
        self.elite_count
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn history(&self) -> &[(usize, f64)] {
        &self.history
    }

    pub fn best_cost(&self) -> f64 {
        self.incumbent.cost
    }

    pub fn true_cost(&self, m: &Member) -> f64 {
        self.sense.apply(m.value)
    }

    /// Lowest true cost currently in the population.
    pub fn population_best(&self) -> &Member {
        self.members
            .iter()
            .min_by(|a, b| self.true_cost(a).total_cmp(&self.true_cost(b)))
            .expect("non-empty population")
    }

    /// Stable ascending sort by probe value.
    pub fn rank(&mut self) {
        self.members
            .sort_by(|a, b| a.value.partial_cmp(&b.value).unwrap_or(Ordering::Equal));
    }

    /// Flips the probe and keeps cached member values consistent with it.
    pub fn flip_sense(&mut self, probe: &mut ObjectiveProbe<'_>) {
        probe.flip();
        self.sense = probe.sense();
        for m in &mut self.members {
            m.value = -m.value;
        }
    }

    fn record(&mut self, cost: f64) {
        let step = self.history.len();
        self.history.push((step, cost));
    }

    /// Ranks, records the true cost of the top-ranked member, keeps the
    /// elites and refills the population with evaluated offspring.
    pub fn generation(&mut self, probe: &mut ObjectiveProbe<'_>, rng: &mut RngStream) -> Result<()> {
        debug_assert_eq!(probe.sense(), self.sense);
        self.rank();
        let head = self.true_cost(&self.members[0]);
        self.record(head);
        self.members.truncate(self.elite_count);
        while self.members.len() < self.cfg.pop_size {
            let child = self.offspring(rng)?;
            self.admit(probe, child)?;
        }
        Ok(())
    }

    fn offspring(&self, rng: &mut RngStream) -> Result<Solution> {
        let single_parent_op = rng.chance(self.cfg.p_mutation) != self.cfg.reverse_ops;
        if single_parent_op {
            let parent = &self.members[rng.index(self.elite_count)].solution;
            Ok(one_point_mutation(parent, self.domain, &self.cfg.operators, rng))
        } else {
            let a = &self.members[rng.index(self.elite_count)].solution;
            let b = &self.members[rng.index(self.elite_count)].solution;
            single_point_crossover(a, b, rng)
        }
    }

    /// Random search on the flipped probe starting from the population's
    /// best; the worst-case solution it finds replaces a random non-elite.
    fn stochastic_window(
        &mut self,
        probe: &mut ObjectiveProbe<'_>,
        rng: &mut RngStream,
        step_length: usize,
    ) -> Result<()> {
        let start = self.population_best().solution.clone();
        self.flip_sense(probe);
        let found = random_search_n(probe, self.domain, step_length - 1, rng, Some(&start))?;
        for &(_, v) in &found.history {
            self.record(self.sense.apply(v));
        }
        self.flip_sense(probe);
        let true_cost = -found.best_cost;
        self.incumbent.offer(&found.best, true_cost);
        let non_elite = self.cfg.pop_size - self.elite_count;
        let slot = if non_elite > 0 {
            self.elite_count + rng.index(non_elite)
        } else {
            self.cfg.pop_size - 1
        };
        self.members[slot] = Member {
            solution: found.best,
            value: self.sense.apply(true_cost),
        };
        Ok(())
    }

    fn into_result(mut self, probe: &ObjectiveProbe<'_>, start_count: u64, started: Instant) -> RunResult {
        self.rank();
        let head = self.true_cost(&self.members[0]);
        self.record(head);
        RunResult {
            best: self.incumbent.best.expect("evaluated population"),
            best_cost: self.incumbent.cost,
            history: self.history,
            nfe: probe.eval_count() - start_count,
            wall_ms: started.elapsed().as_secs_f64() * 1e3,
        }
    }
}

fn run(
    probe: &mut ObjectiveProbe<'_>,
    domain: &Domain,
    cfg: &GaConfig,
    reversal: Option<&ReversalConfig>,
    rng: &mut RngStream,
    init: Option<&Solution>,
) -> Result<RunResult> {
    if probe.sense() != Sense::Minimize {
        return Err(Error::config("genetic algorithms start from a minimizing probe"));
    }
    cfg.validate()?;
    let schedule = match reversal {
        Some(r) => {
            r.validate(cfg.generations)?;
            reversal_schedule(cfg.generations, r.n_k)?
        }
        None => Vec::new(),
    };
    let started = Instant::now();
    let start_count = probe.eval_count();
    let mut engine = GaEngine::new(probe, domain, *cfg, rng, init)?;
    let mut windows = schedule.into_iter().peekable();

    for i in 0..cfg.generations {
        if windows.next_if_eq(&i).is_some() {
            let r = reversal.expect("schedule implies a reversal config");
            match r.mode {
                ReversalMode::GaReversal => {
                    engine.flip_sense(probe);
                    for _ in 0..r.step_length {
                        engine.generation(probe, rng)?;
                    }
                    engine.flip_sense(probe);
                }
                ReversalMode::StochasticReversal => {
                    engine.stochastic_window(probe, rng, r.step_length)?;
                }
            }
        }
        engine.generation(probe, rng)?;
    }
    Ok(engine.into_result(probe, start_count, started))
}

/// Standard GA, or the reverse-operations variant when `cfg.reverse_ops`.
pub fn ga(
    probe: &mut ObjectiveProbe<'_>,
    domain: &Domain,
    cfg: &GaConfig,
    rng: &mut RngStream,
    init: Option<&Solution>,
) -> Result<RunResult> {
    run(probe, domain, cfg, None, rng, init)
}

pub fn ga_with_reversals(
    probe: &mut ObjectiveProbe<'_>,
    domain: &Domain,
    cfg: &GaConfig,
    rcfg: &ReversalConfig,
    rng: &mut RngStream,
    init: Option<&Solution>,
) -> Result<RunResult> {
    if rcfg.mode != ReversalMode::GaReversal {
        return Err(Error::config("ga_with_reversals needs GaReversal mode"));
    }
    run(probe, domain, cfg, Some(rcfg), rng, init)
}

pub fn ga_with_stochastic_reversals(
    probe: &mut ObjectiveProbe<'_>,
    domain: &Domain,
    cfg: &GaConfig,
    rcfg: &ReversalConfig,
    rng: &mut RngStream,
    init: Option<&Solution>,
) -> Result<RunResult> {
    if rcfg.mode != ReversalMode::StochasticReversal {
        return Err(Error::config("ga_with_stochastic_reversals needs StochasticReversal mode"));
    }
    run(probe, domain, cfg, Some(rcfg), rng, init)
}
