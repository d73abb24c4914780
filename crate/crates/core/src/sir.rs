//! Network SIR rumor model (ignorant / spreader / stifler).
//!
//! Each cycle every current spreader, in a freshly shuffled order, contacts
//! one uniformly random neighbor. An ignorant contact becomes a spreader with
//! probability `lambda`; a spreader or stifler contact turns the initiator
//! into a stifler with probability `alpha`.

use std::io::Write;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::netgen::Graph;
use crate::seed::rng_from_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Compartment {
    Ignorant,
    Spreader,
    Stifler,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SirParams {
    pub alpha: f64,
    pub lambda: f64,
    pub initial_spreaders: usize,
}

impl Default for SirParams {
    fn default() -> Self {
        SirParams {
            alpha: 0.05,
            lambda: 0.27,
            initial_spreaders: 1,
        }
    }
}

impl SirParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.alpha) || !(0.0..=1.0).contains(&self.lambda) {
            return Err(Error::InvalidParameter(format!(
                "alpha and lambda must lie in [0, 1], got {} and {}",
                self.alpha, self.lambda
            )));
        }
        if self.initial_spreaders < 1 {
            return Err(Error::InvalidParameter(
                "at least one initial spreader is required".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SirState {
    pub compartments: Vec<Compartment>,
    pub cycle: u32,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SirCounts {
    pub ignorant: usize,
    pub spreaders: usize,
    pub stiflers: usize,
}

impl SirState {
    pub fn new(n: usize, spreaders: &[usize]) -> Self {
        let mut compartments = vec![Compartment::Ignorant; n];
        for &s in spreaders {
            compartments[s] = Compartment::Spreader;
        }
        SirState {
            compartments,
            cycle: 0,
        }
    }

    pub fn counts(&self) -> SirCounts {
        let mut c = SirCounts::default();
        for x in &self.compartments {
            match x {
                Compartment::Ignorant => c.ignorant += 1,
                Compartment::Spreader => c.spreaders += 1,
                Compartment::Stifler => c.stiflers += 1,
            }
        }
        c
    }

    pub fn has_spreaders(&self) -> bool {
        self.compartments.contains(&Compartment::Spreader)
    }
}

/// One synchronous sweep over the spreaders present at the start of the cycle.
pub fn sir_step(state: &mut SirState, g: &Graph, params: &SirParams, rng: &mut impl Rng) {
    let mut order: Vec<usize> = state
        .compartments
        .iter()
        .enumerate()
        .filter(|(_, &c)| c == Compartment::Spreader)
        .map(|(i, _)| i)
        .collect();
    order.shuffle(rng);
    for i in order {
        let degree = g.degree(i);
        if degree == 0 || state.compartments[i] != Compartment::Spreader {
            continue;
        }
        let j = g.neighbors(i).nth(rng.random_range(0..degree)).expect("index below degree");
        let p: f64 = rng.random();
        match state.compartments[j] {
            Compartment::Ignorant => {
                if p < params.lambda {
                    state.compartments[j] = Compartment::Spreader;
                }
            }
            Compartment::Spreader | Compartment::Stifler => {
                if p < params.alpha {
                    state.compartments[i] = Compartment::Stifler;
                }
            }
        }
    }
    state.cycle += 1;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SirRecord {
    pub cycle: u32,
    pub counts: SirCounts,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SirTrace {
    pub seed: u64,
    pub n_nodes: usize,
    pub params: SirParams,
    /// State after each cycle.
    pub records: Vec<SirRecord>,
}

pub const SIR_CSV_HEADER: &str = "cycle,n_I,n_S,n_R";

impl SirTrace {
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{SIR_CSV_HEADER}")?;
        for r in &self.records {
            writeln!(
                w,
                "{},{},{},{}",
                r.cycle, r.counts.ignorant, r.counts.spreaders, r.counts.stiflers
            )?;
        }
        Ok(())
    }
}

/// Runs until no spreader is left or `max_cycles` sweeps have been made.
pub fn run_sir(g: &Graph, params: &SirParams, max_cycles: u32, seed: u64) -> Result<SirTrace> {
    params.validate()?;
    if max_cycles < 1 {
        return Err(Error::InvalidParameter("max_cycles must be at least 1".into()));
    }
    if params.initial_spreaders > g.node_count() {
        return Err(Error::InvalidParameter(format!(
            "{} initial spreaders for {} nodes",
            params.initial_spreaders,
            g.node_count()
        )));
    }
    let mut rng = rng_from_seed(seed);
    let seeds = sample(&mut rng, g.node_count(), params.initial_spreaders).into_vec();
    let mut state = SirState::new(g.node_count(), &seeds);
    let mut records = Vec::new();
    for _ in 0..max_cycles {
        let cycle = state.cycle;
        sir_step(&mut state, g, params, &mut rng);
        records.push(SirRecord {
            cycle,
            counts: state.counts(),
        });
        if !state.has_spreaders() {
            break;
        }
    }
    Ok(SirTrace {
        seed,
        n_nodes: g.node_count(),
        params: params.clone(),
        records,
    })
}
