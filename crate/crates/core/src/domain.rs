//! Search spaces and the integer genomes that live in them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Inclusive integer bounds for every position of a genome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Domain {
    bounds: Vec<(i64, i64)>,
}

impl Domain {
    pub fn new(bounds: Vec<(i64, i64)>) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::config("domain must have at least one dimension"));
        }
        if let Some((i, (lo, hi))) = bounds.iter().enumerate().find(|(_, (lo, hi))| lo > hi) {
            return Err(Error::config(format!(
                "bound {i} is empty: lo {lo} > hi {hi}"
            )));
        }
        Ok(Self { bounds })
    }

    /// The same `[lo, hi]` repeated `dim` times.
    pub fn uniform(lo: i64, hi: i64, dim: usize) -> Result<Self> {
        Self::new(vec![(lo, hi); dim])
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[(i64, i64)] {
        &self.bounds
    }

    pub fn contains(&self, s: &Solution) -> bool {
        self.check(s).is_ok()
    }

    pub fn check(&self, s: &Solution) -> Result<()> {
        if s.len() != self.dim() {
            return Err(Error::Dimension {
                expected: self.dim(),
                got: s.len(),
            });
        }
        for (index, (&value, &(lo, hi))) in s.genes().iter().zip(&self.bounds).enumerate() {
            if value < lo || value > hi {
                return Err(Error::OutOfBounds { index, value, lo, hi });
            }
        }
        Ok(())
    }

    /// Number of lattice points, saturating at `u128::MAX`.
    pub fn cardinality(&self) -> u128 {
        self.bounds.iter().fold(1u128, |acc, &(lo, hi)| {
            acc.saturating_mul((hi - lo) as u128 + 1)
        })
    }

    /// Draws every gene uniformly and independently from its bounds.
    pub fn random_solution(&self, rng: &mut RngStream) -> Solution {
        Solution(
            self.bounds
                .iter()
                .map(|&(lo, hi)| rng.int_inclusive(lo, hi))
                .collect(),
        )
    }
}

/// An integer genome.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Solution(Vec<i64>);

impl Solution {
    /// Builds a genome and validates it against `domain`.
    pub fn new(genes: Vec<i64>, domain: &Domain) -> Result<Self> {
        let s = Self(genes);
        domain.check(&s)?;
        Ok(s)
    }

    /// Wraps genes without a bounds check.
    pub fn from_genes(genes: Vec<i64>) -> Self {
        Self(genes)
    }

    pub fn genes(&self) -> &[i64] {
        &self.0
    }

    pub fn genes_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }

    pub fn into_genes(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn hamming(&self, other: &Solution) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
            + self.0.len().abs_diff(other.0.len())
    }
}

impl From<Vec<i64>> for Solution {
    fn from(genes: Vec<i64>) -> Self {
        Self(genes)
    }
}

/// Uniform random genome; see [`Domain::random_solution`].
pub fn random_solution(domain: &Domain, rng: &mut RngStream) -> Solution {
    domain.random_solution(rng)
}
