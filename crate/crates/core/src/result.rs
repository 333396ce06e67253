use serde::{Deserialize, Serialize};

use crate::domain::Solution;

/// Outcome of one seeded run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub best: Solution,
    pub best_cost: f64,
    /// `(iteration, true cost)` pairs, in the order they were recorded.
    pub history: Vec<(usize, f64)>,
    pub nfe: u64,
    pub wall_ms: f64,
}

impl RunResult {
    /// Running minimum of the history, i.e. the best-so-far curve.
    pub fn best_so_far(&self) -> Vec<(usize, f64)> {
        let mut best = f64::INFINITY;
        self.history
            .iter()
            .map(|&(i, c)| {
                best = best.min(c);
                (i, best)
            })
            .collect()
    }

    pub fn history_min(&self) -> f64 {
        self.history
            .iter()
            .map(|&(_, c)| c)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Best-ever bookkeeping under the true (minimizing) cost.
#[derive(Debug, Clone)]
pub(crate) struct Incumbent {
    pub best: Option<Solution>,
    pub cost: f64,
}

impl Incumbent {
    pub fn new() -> Self {
        Self {
            best: None,
            cost: f64::INFINITY,
        }
    }

    /// Returns `true` when `candidate` strictly improves the incumbent.
    pub fn offer(&mut self, candidate: &Solution, cost: f64) -> bool {
        if self.best.is_none() || cost < self.cost {
            self.best = Some(candidate.clone());
            self.cost = cost;
            true
        } else {
            false
        }
    }
}
