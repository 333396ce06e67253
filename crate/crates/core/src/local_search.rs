//! Random search, hill climbing and simulated annealing.
//!
//! All three minimize the probe value, so a probe in reversed mode turns
//! them into maximizers of the underlying cost. Costs in the returned
//! [`RunResult`] are probe values.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::domain::{Domain, Solution};
use crate::error::{Error, Result};
use crate::objective::ObjectiveProbe;
use crate::operators::{shift_gene, Direction};
use crate::result::{Incumbent, RunResult};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalSearchConfig {
    pub max_iter: usize,
}

impl Default for LocalSearchConfig {
    fn default() -> Self {
        Self { max_iter: 100 }
    }
}

impl LocalSearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iter < 1 {
            return Err(Error::config("max_iter must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaConfig {
    pub t0: f64,
    pub cooling: f64,
    pub t_stop: f64,
    pub step: i64,
}

impl Default for SaConfig {
    fn default() -> Self {
        Self {
            t0: 50_000.0,
            cooling: 0.95,
            t_stop: 0.1,
            step: 1,
        }
    }
}

impl SaConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_stop > 0.0 && self.t0 > self.t_stop) {
            return Err(Error::config("simulated annealing needs t0 > t_stop > 0"));
        }
        if !(self.cooling > 0.0 && self.cooling < 1.0) {
            return Err(Error::config("cooling rate must lie in (0, 1)"));
        }
        if self.step < 1 {
            return Err(Error::config("annealing step must be >= 1"));
        }
        Ok(())
    }

    /// Number of cooling steps before the temperature reaches `t_stop`.
    pub fn iterations(&self) -> usize {
        let mut t = self.t0;
        let mut n = 0;
        while t > self.t_stop {
            t *= self.cooling;
            n += 1;
        }
        n
    }
}

/// Metropolis acceptance probability for moving from `current` to a worse
/// `candidate` at temperature `t`.
pub fn acceptance_probability(current: f64, candidate: f64, t: f64) -> f64 {
    if candidate < current {
        1.0
    } else {
        ((current - candidate) / t).exp()
    }
}

fn checked_init(domain: &Domain, init: Option<&Solution>) -> Result<Option<Solution>> {
    match init {
        Some(s) => {
            domain.check(s)?;
            Ok(Some(s.clone()))
        }
        None => Ok(None),
    }
}

fn finish(probe: &ObjectiveProbe<'_>, start_count: u64, started: Instant, inc: Incumbent,
          history: Vec<(usize, f64)>) -> RunResult {
    RunResult {
        best: inc.best.expect("at least one evaluation"),
        best_cost: inc.cost,
        history,
        nfe: probe.eval_count() - start_count,
        wall_ms: started.elapsed().as_secs_f64() * 1e3,
    }
}

pub fn random_search(
    probe: &mut ObjectiveProbe<'_>,
    domain: &Domain,
    cfg: &LocalSearchConfig,
    rng: &mut RngStream,
    init: Option<&Solution>,
) -> Result<RunResult> {
    cfg.validate()?;
    random_search_n(probe, domain, cfg.max_iter, rng, init)
}

/// Random search with an explicit draw count; `draws` may be zero when an
/// initial solution is supplied.
pub(crate) fn random_search_n(
    probe: &mut ObjectiveProbe<'_>,
    domain: &Domain,
    draws: usize,
    rng: &mut RngStream,
    init: Option<&Solution>,
) -> Result<RunResult> {
    let init = checked_init(domain, init)?;
    if init.is_none() && draws == 0 {
        return Err(Error::config("random search needs at least one evaluation"));
    }
    let started = Instant::now();
    let start_count = probe.eval_count();
    let mut inc = Incumbent::new();
    let mut history = Vec::with_capacity(draws + 1);
    if let Some(s) = init {
        let c = probe.evaluate(&s)?;
        inc.offer(&s, c);
        history.push((0, inc.cost));
    }
    for _ in 0..draws {
        let s = domain.random_solution(rng);
        let c = probe.evaluate(&s)?;
        inc.offer(&s, c);
        history.push((history.len(), inc.cost));
    }
    Ok(finish(probe, start_count, started, inc, history))
}

/// Steepest-descent hill climbing over the `±1` neighbourhood.
pub fn hill_climbing(
    probe: &mut ObjectiveProbe<'_>,
    domain: &Domain,
    cfg: &LocalSearchConfig,
    rng: &mut RngStream,
    init: Option<&Solution>,
) -> Result<RunResult> {
    cfg.validate()?;
    let init = checked_init(domain, init)?;
    let started = Instant::now();
    let start_count = probe.eval_count();
    let mut current = init.unwrap_or_else(|| domain.random_solution(rng));
    let mut current_cost = probe.evaluate(&current)?;
    let mut history = vec![(0, current_cost)];

    for iter in 1..=cfg.max_iter {
        let mut best_move: Option<(Solution, f64)> = None;
        for (i, &(lo, hi)) in domain.bounds().iter().enumerate() {
            let g = current.genes()[i];
            for (dir, ok) in [(Direction::Down, g > lo), (Direction::Up, g < hi)] {
                if !ok {
                    continue;
                }
                let n = shift_gene(&current, domain, i, dir, 1);
                let c = probe.evaluate(&n)?;
                if best_move.as_ref().is_none_or(|(_, bc)| c < *bc) {
                    best_move = Some((n, c));
                }
            }
        }
        match best_move {
            Some((n, c)) if c < current_cost => {
                current = n;
                current_cost = c;
                history.push((iter, current_cost));
            }
            _ => break,
        }
    }

    let mut inc = Incumbent::new();
    inc.offer(&current, current_cost);
    Ok(finish(probe, start_count, started, inc, history))
}

/// Simulated annealing with a geometric cooling schedule.
///
/// Each iteration evaluates the current point and one single-gene
/// neighbour, so a run costs `2 * cfg.iterations()` evaluations.
pub fn simulated_annealing(
    probe: &mut ObjectiveProbe<'_>,
    domain: &Domain,
    cfg: &SaConfig,
    rng: &mut RngStream,
    init: Option<&Solution>,
) -> Result<RunResult> {
    cfg.validate()?;
    let init = checked_init(domain, init)?;
    let started = Instant::now();
    let start_count = probe.eval_count();
    let mut current = init.unwrap_or_else(|| domain.random_solution(rng));
    let mut inc = Incumbent::new();
    let mut history = Vec::new();
    let mut t = cfg.t0;
    let mut iter = 0;
    let mut current_cost = f64::NAN;

    while t > cfg.t_stop {
        current_cost = probe.evaluate(&current)?;
        inc.offer(&current, current_cost);
        history.push((iter, current_cost));

        let index = rng.index(domain.dim());
        let dir = if rng.chance(0.5) { Direction::Down } else { Direction::Up };
        let candidate = shift_gene(&current, domain, index, dir, cfg.step);
        let candidate_cost = probe.evaluate(&candidate)?;
        inc.offer(&candidate, candidate_cost);

        let accept = candidate_cost < current_cost
            || rng.uniform() < acceptance_probability(current_cost, candidate_cost, t);
        if accept {
            current = candidate;
            current_cost = candidate_cost;
        }
        t *= cfg.cooling;
        iter += 1;
    }
    if iter > 0 {
        history.push((iter, current_cost));
    }
    Ok(finish(probe, start_count, started, inc, history))
}
