//! Cost functions and the evaluation-counting probe every algorithm uses.

use crate::domain::Solution;
use crate::error::{Error, Result};

/// A cost function over integer genomes. Lower is better.
pub trait Objective: Send + Sync {
    fn dim(&self) -> usize;

    fn cost(&self, genes: &[i64]) -> f64;
}

impl<T: Objective + ?Sized> Objective for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn cost(&self, genes: &[i64]) -> f64 {
        (**self).cost(genes)
    }
}

/// Adapts a closure of fixed dimensionality into an [`Objective`].
pub struct FnObjective<F> {
    dim: usize,
    f: F,
}

impl<F> FnObjective<F>
where
    F: Fn(&[i64]) -> f64 + Send + Sync,
{
    pub fn new(dim: usize, f: F) -> Self {
        Self { dim, f }
    }
}

impl<F> Objective for FnObjective<F>
where
    F: Fn(&[i64]) -> f64 + Send + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn cost(&self, genes: &[i64]) -> f64 {
        (self.f)(genes)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    /// Probe values are the negated cost, so minimizing them maximizes cost.
    MaximizeReversed,
}

impl Sense {
    pub fn flipped(self) -> Self {
        match self {
            Sense::Minimize => Sense::MaximizeReversed,
            Sense::MaximizeReversed => Sense::Minimize,
        }
    }

    /// Maps a true cost to a probe value, and a probe value back to a true
    /// cost (the map is its own inverse).
    pub fn apply(self, value: f64) -> f64 {
        match self {
            Sense::Minimize => value,
            Sense::MaximizeReversed => -value,
        }
    }
}

/// Counts evaluations and optionally reverses the optimization sense.
pub struct ObjectiveProbe<'a> {
    target: &'a dyn Objective,
    eval_count: u64,
    sense: Sense,
}

impl<'a> ObjectiveProbe<'a> {
    pub fn new(target: &'a dyn Objective) -> Self {
        Self {
            target,
            eval_count: 0,
            sense: Sense::Minimize,
        }
    }

    pub fn evaluate(&mut self, s: &Solution) -> Result<f64> {
        if s.len() != self.target.dim() {
            return Err(Error::Dimension {
                expected: self.target.dim(),
                got: s.len(),
            });
        }
        self.eval_count += 1;
        Ok(self.sense.apply(self.target.cost(s.genes())))
    }

    /// Cost without sign adjustment or counting; for reporting only.
    pub fn true_cost(&self, s: &Solution) -> f64 {
        self.target.cost(s.genes())
    }

    pub fn eval_count(&self) -> u64 {
        self.eval_count
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn set_sense(&mut self, sense: Sense) {
        self.sense = sense;
    }

    pub fn flip(&mut self) {
        self.sense = self.sense.flipped();
    }

    pub fn target(&self) -> &'a dyn Objective {
        self.target
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sphere(dim: usize) -> FnObjective<impl Fn(&[i64]) -> f64 + Send + Sync> {
        FnObjective::new(dim, |g: &[i64]| g.iter().map(|&x| (x * x) as f64).sum())
    }

    #[test]
    fn counts_and_negates() {
        let f = sphere(13);
        let mut p = ObjectiveProbe::new(&f);
        let zero = Solution::from_genes(vec![0; 13]);
        assert_eq!(p.evaluate(&zero).unwrap(), 0.0);
        assert_eq!(p.eval_count(), 1);
        p.flip();
        let v = p.evaluate(&zero).unwrap();
        assert_eq!(v, 0.0);
        assert!(v.is_sign_negative());
        assert_eq!(p.eval_count(), 2);
        let one = Solution::from_genes(vec![1; 13]);
        p.evaluate(&one).unwrap();
        p.evaluate(&one).unwrap();
        assert_eq!(p.eval_count(), 4);
    }

    #[test]
    fn dimension_mismatch_is_not_counted() {
        let f = sphere(3);
        let mut p = ObjectiveProbe::new(&f);
        assert!(matches!(
            p.evaluate(&Solution::from_genes(vec![0; 2])),
            Err(Error::Dimension { expected: 3, got: 2 })
        ));
        assert_eq!(p.eval_count(), 0);
    }

    proptest! {
        #[test]
        fn reversed_probe_inverts_ordering(a in prop::collection::vec(-50i64..50, 4),
                                           b in prop::collection::vec(-50i64..50, 4)) {
            let f = FnObjective::new(4, |g: &[i64]| {
                g.iter().enumerate().map(|(i, &x)| (i as f64 + 1.0) * (x as f64).powi(2) - x as f64).sum()
            });
            let (a, b) = (Solution::from_genes(a), Solution::from_genes(b));
            let mut p = ObjectiveProbe::new(&f);
            let (fa, fb) = (p.evaluate(&a).unwrap(), p.evaluate(&b).unwrap());
            p.flip();
            let (ra, rb) = (p.evaluate(&a).unwrap(), p.evaluate(&b).unwrap());
            prop_assert_eq!(ra < rb, fa > fb);
            p.flip();
            let (ga, gb) = (p.evaluate(&a).unwrap(), p.evaluate(&b).unwrap());
            prop_assert_eq!(ga < gb, fa < fb);
            prop_assert_eq!(p.eval_count(), 6);
        }
    }
}
