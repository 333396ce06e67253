//! Benchmark cost functions on integer box domains.

use std::fmt;

use crate::domain::{Domain, Solution};
use crate::error::{Error, Result};
use crate::objective::Objective;

#[derive(Clone)]
pub struct BenchmarkSpec {
    pub name: &'static str,
    pub dim: usize,
    pub domain: Domain,
    pub known_optimum_cost: f64,
    pub known_optimizer: Solution,
    pub formula: fn(&[i64]) -> f64,
    /// Where the formula is defined.
    pub source: &'static str,
}

impl fmt::Debug for BenchmarkSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BenchmarkSpec")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("known_optimum_cost", &self.known_optimum_cost)
            .finish_non_exhaustive()
    }
}

impl Objective for BenchmarkSpec {
    fn dim(&self) -> usize {
        self.dim
    }

    fn cost(&self, genes: &[i64]) -> f64 {
        (self.formula)(genes)
    }
}

fn f(x: i64) -> f64 {
    x as f64
}

pub fn rosenbrock(x: &[i64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let (a, b) = (f(w[0]), f(w[1]));
            100.0 * (b - a * a).powi(2) + (1.0 - a).powi(2)
        })
        .sum()
}

pub fn zakharov(x: &[i64]) -> f64 {
    let sq: f64 = x.iter().map(|&v| f(v).powi(2)).sum();
    let lin: f64 = x.iter().enumerate().map(|(i, &v)| 0.5 * (i + 1) as f64 * f(v)).sum();
    sq + lin.powi(2) + lin.powi(4)
}

pub fn griewank(x: &[i64]) -> f64 {
    let sum: f64 = x.iter().map(|&v| f(v).powi(2)).sum::<f64>() / 4000.0;
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, &v)| (f(v) / ((i + 1) as f64).sqrt()).cos())
        .product();
    sum - prod + 1.0
}

pub fn brown(x: &[i64]) -> f64 {
    x.windows(2)
        .map(|w| {
            let (a2, b2) = (f(w[0]).powi(2), f(w[1]).powi(2));
            a2.powf(b2 + 1.0) + b2.powf(a2 + 1.0)
        })
        .sum()
}

pub fn sphere(x: &[i64]) -> f64 {
    x.iter().map(|&v| f(v).powi(2)).sum()
}

/// Schwefel 2.23, sum of x^10.
pub fn schwefel(x: &[i64]) -> f64 {
    x.iter().map(|&v| f(v).powi(10)).sum()
}

pub fn booth(x: &[i64]) -> f64 {
    let (a, b) = (f(x[0]), f(x[1]));
    (a + 2.0 * b - 7.0).powi(2) + (2.0 * a + b - 5.0).powi(2)
}

pub fn ackley_n2(x: &[i64]) -> f64 {
    let (a, b) = (f(x[0]), f(x[1]));
    -200.0 * (-0.02 * (a * a + b * b).sqrt()).exp()
}

pub fn three_hump_camel(x: &[i64]) -> f64 {
    let (a, b) = (f(x[0]), f(x[1]));
    2.0 * a.powi(2) - 1.05 * a.powi(4) + a.powi(6) / 6.0 + a * b + b.powi(2)
}

pub fn schaffer_n1(x: &[i64]) -> f64 {
    let r2 = f(x[0]).powi(2) + f(x[1]).powi(2);
    0.5 + (r2.powi(2).sin().powi(2) - 0.5) / (1.0 + 0.001 * r2).powi(2)
}

pub fn matyas(x: &[i64]) -> f64 {
    let (a, b) = (f(x[0]), f(x[1]));
    0.26 * (a * a + b * b) - 0.48 * a * b
}

fn spec(
    name: &'static str,
    domain: Domain,
    optimizer: Vec<i64>,
    formula: fn(&[i64]) -> f64,
    source: &'static str,
) -> BenchmarkSpec {
    let known_optimizer = Solution::from_genes(optimizer);
    BenchmarkSpec {
        name,
        dim: domain.dim(),
        known_optimum_cost: formula(known_optimizer.genes()),
        known_optimizer,
        domain,
        formula,
        source,
    }
}

/// All eleven benchmark functions.
pub fn catalog() -> Vec<BenchmarkSpec> {
    let box_ = |lo, hi, d| Domain::uniform(lo, hi, d).expect("static bounds");
    vec![
        spec("rosenbrock13", box_(-5, 10, 13), vec![1; 13], rosenbrock,
             "generalized Rosenbrock, sum of 100(x[i+1] - x[i]^2)^2 + (1 - x[i])^2"),
        spec("zakharov13", box_(-10, 10, 13), vec![0; 13], zakharov,
             "Zakharov, sfu.ca/~ssurjano/zakharov.html"),
        spec("griewank13", box_(-10, 10, 13), vec![0; 13], griewank,
             "Griewank, sfu.ca/~ssurjano/griewank.html"),
        spec("brown13", box_(-10, 10, 13), vec![0; 13], brown,
             "Brown, Jamil & Yang (2013) benchmark survey"),
        spec("sphere13", box_(-10, 10, 13), vec![0; 13], sphere,
             "Sphere, sfu.ca/~ssurjano/spheref.html"),
        spec("schwefel13", box_(-10, 10, 13), vec![0; 13], schwefel,
             "Schwefel 2.23, Jamil & Yang (2013) benchmark survey"),
        spec("booth", box_(-10, 10, 2), vec![1, 3], booth,
             "Booth, sfu.ca/~ssurjano/booth.html"),
        spec("ackley_n2", box_(-10, 10, 2), vec![0, 0], ackley_n2,
             "Ackley N.2, -200 exp(-0.02 sqrt(x^2 + y^2))"),
        spec("three_hump_camel", box_(-10, 10, 2), vec![0, 0], three_hump_camel,
             "Three-hump camel, sfu.ca/~ssurjano/camel3.html"),
        spec("schaffer_n1", box_(-10, 10, 2), vec![0, 0], schaffer_n1,
             "Schaffer N.1, Mishra (2006)"),
        spec("matyas", box_(-10, 10, 2), vec![0, 0], matyas,
             "Matyas, sfu.ca/~ssurjano/matya.html"),
    ]
}

/// Looks a benchmark up by name. Case-insensitive; `-` and `_` are
/// interchangeable and the 13-dimensional functions also answer to their
/// bare names (`rosenbrock` for `rosenbrock13`).
pub fn find(name: &str) -> Result<BenchmarkSpec> {
    let key = name.trim().to_ascii_lowercase().replace('-', "_");
    catalog()
        .into_iter()
        .find(|s| s.name == key || s.name.strip_suffix("13") == Some(key.as_str()))
        .ok_or_else(|| Error::Usage(format!("unknown benchmark function '{name}'")))
}

pub fn evaluate_benchmark(spec: &BenchmarkSpec, s: &Solution) -> Result<f64> {
    if s.len() != spec.dim {
        return Err(Error::Dimension { expected: spec.dim, got: s.len() });
    }
    Ok((spec.formula)(s.genes()))
}
