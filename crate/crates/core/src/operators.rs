//! Mutation and crossover on integer genomes.

use serde::{Deserialize, Serialize};

use crate::domain::{Domain, Solution};
use crate::error::{Error, Result};
use crate::rng::RngStream;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorConfig {
    pub mutation_step: i64,
    pub down_probability: f64,
}

impl Default for OperatorConfig {
    fn default() -> Self {
        Self {
            mutation_step: 1,
            down_probability: 0.5,
        }
    }
}

impl OperatorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.mutation_step < 1 {
            return Err(Error::config("mutation_step must be >= 1"));
        }
        if !(0.0..=1.0).contains(&self.down_probability) {
            return Err(Error::config("down_probability must lie in [0, 1]"));
        }
        Ok(())
    }
}

/// Direction of a single-gene move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Down,
    Up,
}

/// Moves gene `index` by `step` in `direction`. If that leaves the bounds the
/// opposite direction is tried; if both do, the gene stays put.
pub fn shift_gene(
    s: &Solution,
    domain: &Domain,
    index: usize,
    direction: Direction,
    step: i64,
) -> Solution {
    let (lo, hi) = domain.bounds()[index];
    let g = s.genes()[index];
    let down = g - step;
    let up = g + step;
    let moved = match direction {
        Direction::Down if down >= lo => down,
        Direction::Down if up <= hi => up,
        Direction::Up if up <= hi => up,
        Direction::Up if down >= lo => down,
        _ => g,
    };
    let mut out = s.clone();
    out.genes_mut()[index] = moved;
    out
}

/// Perturbs one uniformly chosen gene by `±mutation_step`.
pub fn one_point_mutation(
    s: &Solution,
    domain: &Domain,
    cfg: &OperatorConfig,
    rng: &mut RngStream,
) -> Solution {
    let index = rng.index(s.len());
    let direction = if rng.chance(cfg.down_probability) {
        Direction::Down
    } else {
        Direction::Up
    };
    shift_gene(s, domain, index, direction, cfg.mutation_step)
}

/// `a[..k] ++ b[k..]` with `k` uniform in `1..=L-1`.
pub fn single_point_crossover(a: &Solution, b: &Solution, rng: &mut RngStream) -> Result<Solution> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            expected: a.len(),
            got: b.len(),
        });
    }
    if a.len() < 2 {
        return Err(Error::CrossoverInfeasible(a.len()));
    }
    let k = 1 + rng.index(a.len() - 1);
    Ok(crossover_at(a, b, k))
}

pub fn crossover_at(a: &Solution, b: &Solution, k: usize) -> Solution {
    let mut genes = Vec::with_capacity(a.len());
    genes.extend_from_slice(&a.genes()[..k]);
    genes.extend_from_slice(&b.genes()[k..]);
    Solution::from_genes(genes)
}
