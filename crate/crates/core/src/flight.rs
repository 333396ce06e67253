//! Group-travel flight scheduling.
//!
//! Every person flies from their home airport to a shared destination and
//! back. Gene `2i` picks person `i`'s outbound flight and gene `2i + 1`
//! their return flight, as indices into the per-leg lists in file order.
//! The cost is the total ticket price plus the total time people spend
//! waiting for the whole group, plus a penalty when the last arrival is
//! later than the first departure (an extra day of car rental).

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::domain::{Domain, Solution};
use crate::error::{Error, Result};
use crate::objective::Objective;

pub const DEFAULT_PENALTY: f64 = 50.0;
pub const DEFAULT_GENE_HI: i64 = 9;

/// Converts a `H:MM` / `HH:MM` clock time to minutes since midnight.
pub fn get_minutes(t: &str) -> Result<u32> {
    let bad = |why: &str| Error::Parse {
        line: 0,
        message: format!("bad clock time '{t}': {why}"),
    };
    let (h, m) = t.trim().split_once(':').ok_or_else(|| bad("missing ':'"))?;
    let digits = |s: &str, max_len: usize| {
        !s.is_empty() && s.len() <= max_len && s.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(h, 2) || !(m.len() == 2 && digits(m, 2)) {
        return Err(bad("expected H:MM or HH:MM"));
    }
    let (h, m): (u32, u32) = (h.parse().unwrap(), m.parse().unwrap());
    if h > 23 || m > 59 {
        return Err(bad("field out of range"));
    }
    Ok(h * 60 + m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flight {
    pub origin: String,
    pub dest: String,
    pub depart: u32,
    pub arrive: u32,
    pub price: u32,
}

fn airport_code(s: &str) -> Option<String> {
    let s = s.trim();
    (s.len() == 3 && s.bytes().all(|b| b.is_ascii_uppercase())).then(|| s.to_string())
}

impl Flight {
    /// Parses one `ORG,DST,H:MM,H:MM,PRICE` record.
    pub fn parse_line(line: &str) -> std::result::Result<Self, String> {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(format!("expected 5 comma-separated fields, got {}", fields.len()));
        }
        let origin = airport_code(fields[0]).ok_or_else(|| format!("bad origin code '{}'", fields[0]))?;
        let dest = airport_code(fields[1]).ok_or_else(|| format!("bad destination code '{}'", fields[1]))?;
        let depart = get_minutes(fields[2]).map_err(|e| e.to_string())?;
        let arrive = get_minutes(fields[3]).map_err(|e| e.to_string())?;
        let price = fields[4]
            .trim()
            .parse::<u32>()
            .map_err(|_| format!("bad price '{}'", fields[4].trim()))?;
        Ok(Flight { origin, dest, depart, arrive, price })
    }
}

/// Header describing who travels and where: the problem config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemConfig {
    pub destination: String,
    /// `(name, home airport)` pairs; gene pairs follow this order.
    pub people: Vec<(String, String)>,
    #[serde(default = "default_penalty")]
    pub penalty: f64,
}

fn default_penalty() -> f64 {
    DEFAULT_PENALTY
}

impl ProblemConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Parsed schedule, validated against a [`ProblemConfig`].
#[derive(Debug, Clone, PartialEq)]
pub struct FlightTable {
    flights: HashMap<(String, String), Vec<Flight>>,
    people: Vec<(String, String)>,
    destination: String,
    penalty: f64,
    gene_hi: i64,
}

/// One person's chosen legs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leg<'a> {
    pub person: &'a str,
    pub outbound: &'a Flight,
    pub outbound_index: usize,
    pub inbound: &'a Flight,
    pub inbound_index: usize,
}

pub type Itinerary<'a> = Vec<Leg<'a>>;

/// Parses schedule text into per-leg flight lists, preserving file order.
/// Blank lines and `#` comments are skipped.
pub fn parse_flights(text: &str) -> Result<HashMap<(String, String), Vec<Flight>>> {
    let mut flights: HashMap<(String, String), Vec<Flight>> = HashMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f = Flight::parse_line(line).map_err(|message| Error::Parse { line: n + 1, message })?;
        flights
            .entry((f.origin.clone(), f.dest.clone()))
            .or_default()
            .push(f);
    }
    Ok(flights)
}

impl FlightTable {
    /// Parses and validates a schedule with the default gene bound of 9.
    pub fn parse(text: &str, config: &ProblemConfig) -> Result<Self> {
        Self::parse_with_bound(text, config, DEFAULT_GENE_HI)
    }

    pub fn parse_with_bound(text: &str, config: &ProblemConfig, gene_hi: i64) -> Result<Self> {
        Self::new(parse_flights(text)?, config, gene_hi)
    }

    pub fn load(schedule: impl AsRef<Path>, config: impl AsRef<Path>) -> Result<Self> {
        let config = ProblemConfig::load(config)?;
        Self::parse(&std::fs::read_to_string(schedule)?, &config)
    }

    pub fn new(
        flights: HashMap<(String, String), Vec<Flight>>,
        config: &ProblemConfig,
        gene_hi: i64,
    ) -> Result<Self> {
        if config.people.is_empty() {
            return Err(Error::Validation("no travellers configured".into()));
        }
        if gene_hi < 0 {
            return Err(Error::Validation("gene bound must be non-negative".into()));
        }
        if !config.penalty.is_finite() || config.penalty < 0.0 {
            return Err(Error::Validation("penalty must be a non-negative number".into()));
        }
        let dest = airport_code(&config.destination)
            .ok_or_else(|| Error::Validation(format!("bad destination '{}'", config.destination)))?;
        let need = gene_hi as usize + 1;
        for (name, origin) in &config.people {
            for leg in [(origin.clone(), dest.clone()), (dest.clone(), origin.clone())] {
                let have = flights.get(&leg).map_or(0, Vec::len);
                if have == 0 {
                    return Err(Error::Validation(format!(
                        "no {}->{} flights for {name}",
                        leg.0, leg.1
                    )));
                }
                if have < need {
                    return Err(Error::Validation(format!(
                        "{}->{} has {have} flights but genes range over 0..={gene_hi}",
                        leg.0, leg.1
                    )));
                }
            }
        }
        Ok(Self {
            flights,
            people: config.people.clone(),
            destination: dest,
            penalty: config.penalty,
            gene_hi,
        })
    }

    pub fn people(&self) -> &[(String, String)] {
        &self.people
    }

    pub fn destination(&self) -> &str {
        &self.destination
    }

    pub fn penalty(&self) -> f64 {
        self.penalty
    }

    pub fn leg(&self, origin: &str, dest: &str) -> Option<&[Flight]> {
        self.flights
            .get(&(origin.to_string(), dest.to_string()))
            .map(Vec::as_slice)
    }

    /// `[0, gene_hi]` for each of the `2 * people` genes.
    pub fn domain(&self) -> Domain {
        Domain::uniform(0, self.gene_hi, 2 * self.people.len()).expect("at least one person")
    }

    fn pick<'a>(&'a self, origin: &str, dest: &str, index: i64) -> Result<(&'a Flight, usize)> {
        let list = self.leg(origin, dest).expect("validated on construction");
        usize::try_from(index)
            .ok()
            .and_then(|i| list.get(i).map(|f| (f, i)))
            .ok_or_else(|| {
                Error::Validation(format!(
                    "flight index {index} out of range for {origin}->{dest} ({} flights)",
                    list.len()
                ))
            })
    }

    pub fn decode(&self, s: &Solution) -> Result<Itinerary<'_>> {
        let genes = s.genes();
        if genes.len() != 2 * self.people.len() {
            return Err(Error::Dimension {
                expected: 2 * self.people.len(),
                got: genes.len(),
            });
        }
        self.people
            .iter()
            .enumerate()
            .map(|(i, (name, origin))| {
                let (outbound, outbound_index) = self.pick(origin, &self.destination, genes[2 * i])?;
                let (inbound, inbound_index) = self.pick(&self.destination, origin, genes[2 * i + 1])?;
                Ok(Leg { person: name, outbound, outbound_index, inbound, inbound_index })
            })
            .collect()
    }

    pub fn encode(itinerary: &Itinerary<'_>) -> Solution {
        Solution::from_genes(
            itinerary
                .iter()
                .flat_map(|l| [l.outbound_index as i64, l.inbound_index as i64])
                .collect(),
        )
    }

    /// Price plus group waiting time plus the overnight penalty.
    pub fn schedule_cost(&self, s: &Solution) -> Result<f64> {
        let legs = self.decode(s)?;
        let mut price = 0u64;
        let mut latest_arrival = 0u32;
        let mut earliest_departure = u32::MAX;
        for l in &legs {
            price += u64::from(l.outbound.price) + u64::from(l.inbound.price);
            latest_arrival = latest_arrival.max(l.outbound.arrive);
            earliest_departure = earliest_departure.min(l.inbound.depart);
        }
        // Waits are relative to the group extremes, so a second pass is needed
        // once those are known; the genome is still read in O(L).
        let wait: u64 = legs
            .iter()
            .map(|l| {
                u64::from(latest_arrival - l.outbound.arrive)
                    + u64::from(l.inbound.depart - earliest_departure)
            })
            .sum();
        let penalty = if latest_arrival > earliest_departure { self.penalty } else { 0.0 };
        Ok(price as f64 + wait as f64 + penalty)
    }
}

/// A [`FlightTable`] viewed as an objective. Out-of-range genes cost `+inf`;
/// the search domain from [`FlightTable::domain`] never produces them.
impl Objective for FlightTable {
    fn dim(&self) -> usize {
        2 * self.people.len()
    }

    fn cost(&self, genes: &[i64]) -> f64 {
        self.schedule_cost(&Solution::from_genes(genes.to_vec()))
            .unwrap_or(f64::INFINITY)
    }
}
