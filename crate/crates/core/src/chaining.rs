//! Iterated chaining: two optimizers hand their best solution back and
//! forth for a number of rounds, with mutations between hand-offs and a
//! randomized early-stopping rule on the per-round global cost.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algorithm::Algorithm;
use crate::domain::{Domain, Solution};
use crate::error::{Error, Result};
use crate::objective::{ObjectiveProbe, Sense};
use crate::operators::{one_point_mutation, OperatorConfig};
use crate::result::{Incumbent, RunResult};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainConfig {
    pub rounds: usize,
    /// Lower end of the slack `R`, drawn uniformly from `[tolerance, 100]`.
    pub tolerance: u32,
    pub n_obs: usize,
    /// Probability of mutating the Initial algorithm's output.
    pub random_mutation_probability: f64,
    /// Mutation operators can be switched off to observe stagnation.
    #[serde(default = "enabled")]
    pub mutations: bool,
    #[serde(default)]
    pub operators: OperatorConfig,
}

fn enabled() -> bool {
    true
}

impl Default for ChainConfig {
    fn default() -> Self {
        Self {
            rounds: 1,
            tolerance: 90,
            n_obs: 2,
            random_mutation_probability: 0.5,
            mutations: true,
            operators: OperatorConfig::default(),
        }
    }
}

impl ChainConfig {
    pub fn validate(&self) -> Result<()> {
        if self.rounds < 1 {
            return Err(Error::config("rounds must be >= 1"));
        }
        if self.tolerance > 100 {
            return Err(Error::config("tolerance must lie in [0, 100]"));
        }
        if self.n_obs < 1 {
            return Err(Error::config("n_obs must be >= 1"));
        }
        if !(0.0..=1.0).contains(&self.random_mutation_probability) {
            return Err(Error::config("random_mutation_probability must lie in [0, 1]"));
        }
        self.operators.validate()
    }
}

/// Running state of a chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainState {
    pub weights: Option<Solution>,
    pub scores: Vec<f64>,
    pub best: Option<Solution>,
    pub best_cost: f64,
}

/// The stopping rule with the slack `R` already drawn: stop when
/// `cost - R` exceeds the mean of the last `n_obs` scores (or of all
/// scores, when fewer are recorded).
pub fn exceeds_recent_mean(cost: f64, scores: &[f64], n_obs: usize, r: u32) -> bool {
    let window = &scores[scores.len().saturating_sub(n_obs.max(1))..];
    let mean = window.iter().sum::<f64>() / window.len() as f64;
    cost - f64::from(r) > mean
}

/// Draws `R` uniformly from the integers `[tolerance, 100]` and applies the
/// stopping rule.
pub fn should_stop(cost: f64, scores: &[f64], cfg: &ChainConfig, rng: &mut RngStream) -> bool {
    debug_assert!(!scores.is_empty(), "never checked before the first score");
    let r = rng.int_inclusive(i64::from(cfg.tolerance.min(100)), 100) as u32;
    !scores.is_empty() && exceeds_recent_mean(cost, scores, cfg.n_obs, r)
}

/// Runs the chain. The returned history holds one `(round, global cost)`
/// entry per completed round.
pub fn iterated_chain(
    initial: &Algorithm,
    chained: &Algorithm,
    probe: &mut ObjectiveProbe<'_>,
    domain: &Domain,
    cfg: &ChainConfig,
    rng: &mut RngStream,
) -> Result<RunResult> {
    cfg.validate()?;
    if probe.sense() != Sense::Minimize {
        return Err(Error::config("chaining starts from a minimizing probe"));
    }
    let started = Instant::now();
    let start_count = probe.eval_count();
    let mut state = ChainState {
        weights: None,
        scores: Vec::new(),
        best: None,
        best_cost: f64::INFINITY,
    };
    let mut incumbent = Incumbent::new();

    for round in 0..cfg.rounds {
        let last = round + 1 == cfg.rounds;
        let first = initial.run(probe, domain, rng, state.weights.as_ref())?;
        incumbent.offer(&first.best, first.best_cost);
        let mut handoff = first.best.clone();
        if cfg.mutations && rng.chance(cfg.random_mutation_probability) {
            handoff = one_point_mutation(&handoff, domain, &cfg.operators, rng);
        }

        let second = chained.run(probe, domain, rng, Some(&handoff))?;
        incumbent.offer(&second.best, second.best_cost);
        let mut weights = second.best.clone();
        if cfg.mutations && !last {
            weights = one_point_mutation(&weights, domain, &cfg.operators, rng);
        }
        state.weights = Some(weights);

        let global = first.best_cost.min(second.best_cost);
        let stop = round >= 1 && should_stop(global, &state.scores, cfg, rng);
        state.scores.push(global);
        if stop {
            break;
        }
    }

    state.best = incumbent.best;
    state.best_cost = incumbent.cost;
    Ok(RunResult {
        best: state.best.expect("at least one round"),
        best_cost: state.best_cost,
        history: state.scores.iter().copied().enumerate().collect(),
        nfe: probe.eval_count() - start_count,
        wall_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}
