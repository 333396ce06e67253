//! Gradient-free discrete optimization with switching.
//!
//! The crate provides elitist genetic algorithms with objective reversals,
//! three classic local searches, an iterated chaining meta-algorithm, a
//! flight-scheduling cost function, a benchmark catalog and a seeded
//! multi-run experiment harness. Every run is a pure function of its seed
//! and configuration.

pub mod algorithm;
pub mod benchmarks;
pub mod chaining;
pub mod domain;
pub mod error;
pub mod flight;
pub mod genetic;
pub mod harness;
pub mod local_search;
pub mod objective;
pub mod operators;
pub mod result;
pub mod rng;

pub use algorithm::{Algorithm, AlgorithmKind, Params};
pub use chaining::{iterated_chain, should_stop, ChainConfig};
pub use domain::{random_solution, Domain, Solution};
pub use error::{Error, Result};
pub use flight::{FlightTable, ProblemConfig};
pub use genetic::{
    compute_num_reversals, ga, ga_with_reversals, ga_with_stochastic_reversals, GaConfig,
    ReversalConfig, ReversalMode,
};
pub use local_search::{
    hill_climbing, random_search, simulated_annealing, LocalSearchConfig, SaConfig,
};
pub use objective::{FnObjective, Objective, ObjectiveProbe, Sense};
pub use operators::{one_point_mutation, single_point_crossover, OperatorConfig};
pub use result::RunResult;
pub use rng::RngStream;
