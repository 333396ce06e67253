use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::domain::{Domain, Solution};
use crate::error::{Error, Result};
use crate::genetic::{
    ga, ga_with_reversals, ga_with_stochastic_reversals, GaConfig, ReversalConfig, ReversalMode,
};
use crate::local_search::{
    hill_climbing, random_search, simulated_annealing, LocalSearchConfig, SaConfig,
};
use crate::objective::ObjectiveProbe;
use crate::result::RunResult;
use crate::rng::RngStream;

/// A configured optimizer that accepts an optional starting solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Algorithm {
    Ga(GaConfig),
    GaReversals { ga: GaConfig, reversal: ReversalConfig },
    GaStochasticReversals { ga: GaConfig, reversal: ReversalConfig },
    HillClimbing(LocalSearchConfig),
    RandomSearch(LocalSearchConfig),
    SimulatedAnnealing(SaConfig),
}

impl Algorithm {
    pub fn run(
        &self,
        probe: &mut ObjectiveProbe<'_>,
        domain: &Domain,
        rng: &mut RngStream,
        init: Option<&Solution>,
    ) -> Result<RunResult> {
        match self {
            Algorithm::Ga(cfg) => ga(probe, domain, cfg, rng, init),
            Algorithm::GaReversals { ga, reversal } => {
                ga_with_reversals(probe, domain, ga, reversal, rng, init)
            }
            Algorithm::GaStochasticReversals { ga, reversal } => {
                ga_with_stochastic_reversals(probe, domain, ga, reversal, rng, init)
            }
            Algorithm::HillClimbing(cfg) => hill_climbing(probe, domain, cfg, rng, init),
            Algorithm::RandomSearch(cfg) => random_search(probe, domain, cfg, rng, init),
            Algorithm::SimulatedAnnealing(cfg) => simulated_annealing(probe, domain, cfg, rng, init),
        }
    }

    pub fn kind(&self) -> AlgorithmKind {
        match self {
            Algorithm::Ga(cfg) if cfg.reverse_ops => AlgorithmKind::GaReverseOps,
            Algorithm::Ga(_) => AlgorithmKind::Ga,
            Algorithm::GaReversals { .. } => AlgorithmKind::GaReversals,
            Algorithm::GaStochasticReversals { .. } => AlgorithmKind::GaStochasticReversals,
            Algorithm::HillClimbing(_) => AlgorithmKind::HillClimbing,
            Algorithm::RandomSearch(_) => AlgorithmKind::RandomSearch,
            Algorithm::SimulatedAnnealing(_) => AlgorithmKind::SimulatedAnnealing,
        }
    }
}

/// The seven single-algorithm conditions, labelled A to G in results tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgorithmKind {
    Ga,
    GaReverseOps,
    GaReversals,
    HillClimbing,
    RandomSearch,
    SimulatedAnnealing,
    GaStochasticReversals,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 7] = [
        AlgorithmKind::Ga,
        AlgorithmKind::GaReverseOps,
        AlgorithmKind::GaReversals,
        AlgorithmKind::HillClimbing,
        AlgorithmKind::RandomSearch,
        AlgorithmKind::SimulatedAnnealing,
        AlgorithmKind::GaStochasticReversals,
    ];

    pub const GA_VARIANTS: [AlgorithmKind; 4] = [
        AlgorithmKind::Ga,
        AlgorithmKind::GaReverseOps,
        AlgorithmKind::GaReversals,
        AlgorithmKind::GaStochasticReversals,
    ];

    pub fn letter(self) -> char {
        match self {
            AlgorithmKind::Ga => 'A',
            AlgorithmKind::GaReverseOps => 'B',
            AlgorithmKind::GaReversals => 'C',
            AlgorithmKind::HillClimbing => 'D',
            AlgorithmKind::RandomSearch => 'E',
            AlgorithmKind::SimulatedAnnealing => 'F',
            AlgorithmKind::GaStochasticReversals => 'G',
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::Ga => "ga",
            AlgorithmKind::GaReverseOps => "ga-reverse-ops",
            AlgorithmKind::GaReversals => "ga-reversals",
            AlgorithmKind::HillClimbing => "hc",
            AlgorithmKind::RandomSearch => "rs",
            AlgorithmKind::SimulatedAnnealing => "sa",
            AlgorithmKind::GaStochasticReversals => "ga-stochastic-reversals",
        }
    }

    /// Builds the algorithm from a parameter set.
    pub fn configure(self, params: &Params) -> Algorithm {
        let ga_cfg = params.ga;
        match self {
            AlgorithmKind::Ga => Algorithm::Ga(GaConfig { reverse_ops: false, ..ga_cfg }),
            AlgorithmKind::GaReverseOps => Algorithm::Ga(GaConfig { reverse_ops: true, ..ga_cfg }),
            AlgorithmKind::GaReversals => Algorithm::GaReversals {
                ga: ga_cfg,
                reversal: ReversalConfig { mode: ReversalMode::GaReversal, ..params.reversal },
            },
            AlgorithmKind::GaStochasticReversals => Algorithm::GaStochasticReversals {
                ga: ga_cfg,
                reversal: ReversalConfig { mode: ReversalMode::StochasticReversal, ..params.reversal },
            },
            AlgorithmKind::HillClimbing => Algorithm::HillClimbing(params.local),
            AlgorithmKind::RandomSearch => Algorithm::RandomSearch(params.local),
            AlgorithmKind::SimulatedAnnealing => Algorithm::SimulatedAnnealing(params.sa),
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        let kind = match key.as_str() {
            "a" | "ga" => AlgorithmKind::Ga,
            "b" | "ga-reverse-ops" | "reverse-ga" => AlgorithmKind::GaReverseOps,
            "c" | "ga-reversals" => AlgorithmKind::GaReversals,
            "d" | "hc" | "hill-climbing" => AlgorithmKind::HillClimbing,
            "e" | "rs" | "random-search" => AlgorithmKind::RandomSearch,
            "f" | "sa" | "simulated-annealing" => AlgorithmKind::SimulatedAnnealing,
            "g" | "ga-stochastic-reversals" | "ga-rs-reversals" => AlgorithmKind::GaStochasticReversals,
            _ => return Err(Error::Usage(format!("unknown algorithm '{s}'"))),
        };
        Ok(kind)
    }
}

/// Every tunable of every algorithm, with the reference defaults.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Params {
    pub ga: GaConfig,
    pub reversal: ReversalConfig,
    pub local: LocalSearchConfig,
    pub sa: SaConfig,
}
