//! Synchronous cycle engine.
//!
//! One cycle runs, in order: spontaneous spreading, collective influence,
//! communication persuasion, debunking (when enabled) and deactivation. Each
//! phase decides from the state as left by the previous phase, so agents
//! activated inside a phase only start acting in the next one.
//!
//! The spontaneous phase is the only consumer of randomness: it draws one
//! uniform `f64` per undeployed agent, in ascending agent order.

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::trace::{AgentSnapshot, ColorCounts, CycleRecord, SimulationTrace};
use super::{init_population, AgentColor, AgentState, ModelParams, NewsSchedule};
use crate::error::{Error, Result};
use crate::netgen::Graph;
use crate::seed::{rng_from_seed, stream_seed, SimRng, Stream};

/// Slack for the non-strict comparisons (`<=`, `>=`) of the rules, so that
/// decimal boundary cases such as `0.8 - 0.6 >= 0.2` hold as written.
pub const COMPARE_TOL: f64 = 1e-9;

pub(crate) fn similar(a: f64, b: f64, epsilon: f64) -> bool {
    (a - b).abs() <= epsilon + COMPARE_TOL
}

pub(crate) fn believes(reliability: f64, threshold: f64) -> bool {
    reliability > threshold
}

pub(crate) fn rejects(reliability: f64, threshold: f64, margin: f64) -> bool {
    threshold - reliability >= margin - COMPARE_TOL
}

/// Transition counts of one cycle.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub cycle: u32,
    pub spontaneous: usize,
    pub influenced: usize,
    pub persuaded: usize,
    /// Debunkers created by direct visualization.
    pub debunkers: usize,
    /// Spreaders converted to debunkers by a correction.
    pub converted: usize,
    pub deactivated: usize,
}

impl StepReport {
    pub fn total(&self) -> usize {
        self.spontaneous + self.influenced + self.persuaded + self.debunkers + self.converted + self.deactivated
    }
}

/// Degree at or above which a node counts as a hub: the degree of the
/// `ceil(quantile * n)`-th best connected node. `None` when hubs are disabled.
pub fn hub_degree_cutoff(g: &Graph, quantile: f64) -> Option<usize> {
    if quantile <= 0.0 || g.node_count() == 0 {
        return None;
    }
    let mut degrees = g.degrees();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let rank = ((quantile * degrees.len() as f64).ceil() as usize).clamp(1, degrees.len());
    Some(degrees[rank - 1].max(1))
}

/// Agent population bound to its graph.
#[derive(Debug, Clone)]
pub struct Simulation<'g> {
    graph: &'g Graph,
    agents: Vec<AgentState>,
    params: ModelParams,
    hub: Vec<bool>,
    ever_spread: Vec<bool>,
    ever_debunked: Vec<bool>,
}

impl<'g> Simulation<'g> {
    pub fn new(graph: &'g Graph, agents: Vec<AgentState>, params: ModelParams) -> Result<Self> {
        params.validate()?;
        if agents.len() != graph.node_count() {
            return Err(Error::InvalidParameter(format!(
                "{} agents for a graph of {} nodes",
                agents.len(),
                graph.node_count()
            )));
        }
        if let Some(bad) = agents.iter().position(|a| !(0.0..=1.0).contains(&a.threshold)) {
            return Err(Error::InvalidParameter(format!(
                "agent {bad} has threshold outside [0, 1]"
            )));
        }
        let hub = match hub_degree_cutoff(graph, params.hub_degree_quantile) {
            Some(cutoff) => (0..graph.node_count()).map(|i| graph.degree(i) >= cutoff).collect(),
            None => vec![false; graph.node_count()],
        };
        let ever_spread = agents.iter().map(|a| a.color.is_spreader()).collect();
        let ever_debunked = agents.iter().map(|a| a.color == AgentColor::Debunker).collect();
        Ok(Simulation {
            graph,
            agents,
            params,
            hub,
            ever_spread,
            ever_debunked,
        })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn agents(&self) -> &[AgentState] {
        &self.agents
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn is_hub(&self, node: usize) -> bool {
        self.hub[node]
    }

    /// Puts an undeployed agent directly into an active color, e.g. to seed a run.
    pub fn seed_active(&mut self, agent: usize, color: AgentColor, cycle: u32) -> Result<()> {
        if !color.is_active() {
            return Err(Error::InvalidParameter(format!("{color} is not an active color")));
        }
        if self.agents[agent].color != AgentColor::Undeployed {
            return Err(Error::InvalidParameter(format!("agent {agent} is already deployed")));
        }
        self.set_active(agent, color, cycle);
        Ok(())
    }

    fn set_active(&mut self, agent: usize, color: AgentColor, cycle: u32) {
        self.agents[agent].activate(color, cycle);
        if color.is_spreader() {
            self.ever_spread[agent] = true;
        } else {
            self.ever_debunked[agent] = true;
        }
    }

    pub fn counts(&self) -> ColorCounts {
        ColorCounts::tally(self.agents.iter().map(|a| a.color))
    }

    fn spreader_flags(&self) -> Vec<bool> {
        self.agents.iter().map(|a| a.color.is_spreader()).collect()
    }

    /// Each undeployed agent sees the news with probability `v`. A viewer
    /// becomes a spontaneous spreader when `r > threshold`, or a debunker when
    /// debunking is enabled and `threshold - r >= debunk_margin`.
    pub fn apply_spontaneous(&mut self, r: f64, v: f64, t: u32, rng: &mut impl Rng) -> Vec<usize> {
        let mut activated = Vec::new();
        for i in 0..self.agents.len() {
            if self.agents[i].color != AgentColor::Undeployed {
                continue;
            }
            let draw: f64 = rng.random();
            if draw >= v {
                continue;
            }
            let th = self.agents[i].threshold;
            if believes(r, th) {
                self.set_active(i, AgentColor::Spontaneous, t);
                activated.push(i);
            } else if self.params.debunking_enabled && rejects(r, th, self.params.debunk_margin) {
                self.set_active(i, AgentColor::Debunker, t);
                activated.push(i);
            }
        }
        activated
    }

    /// An undeployed agent whose spreading neighbors make up more than
    /// `influence_fraction` of its neighborhood, or include a hub, lowers its
    /// threshold by `delta_influence`; it becomes influenced if then `r > threshold`.
    pub fn apply_collective_influence(&mut self, r: f64, t: u32) -> Vec<usize> {
        let spreading = self.spreader_flags();
        let mut activated = Vec::new();
        for i in 0..self.agents.len() {
            if self.agents[i].color != AgentColor::Undeployed {
                continue;
            }
            let degree = self.graph.degree(i);
            if degree == 0 {
                continue;
            }
            let mut active = 0usize;
            let mut hub_active = false;
            for j in self.graph.neighbors(i) {
                if spreading[j] {
                    active += 1;
                    hub_active |= self.hub[j];
                }
            }
            let fraction = active as f64 / degree as f64;
            if !(hub_active || fraction > self.params.influence_fraction + COMPARE_TOL) {
                continue;
            }
            let agent = &mut self.agents[i];
            agent.threshold = (agent.threshold - self.params.delta_influence).max(0.0);
            if believes(r, agent.threshold) {
                self.set_active(i, AgentColor::Influenced, t);
                activated.push(i);
            }
        }
        activated
    }

    /// Every spreader messages each undeployed neighbor. A recipient records
    /// the sender; if any sender has similar preparation the recipient's
    /// threshold drops once by `delta_persuasion`. Contacted agents with
    /// `r > threshold` afterwards become persuaded.
    pub fn apply_persuasion(&mut self, r: f64, t: u32) -> Vec<usize> {
        let n = self.agents.len();
        let spreading = self.spreader_flags();
        let mut contacted = vec![false; n];
        let mut lower = vec![false; n];
        for s in (0..n).filter(|&s| spreading[s]) {
            let th_s = self.agents[s].threshold;
            for u in self.graph.neighbors(s) {
                let recipient = &mut self.agents[u];
                if recipient.color != AgentColor::Undeployed {
                    continue;
                }
                recipient.record_contact(s);
                contacted[u] = true;
                if similar(th_s, recipient.threshold, self.params.epsilon_similarity) {
                    lower[u] = true;
                }
            }
        }
        let mut activated = Vec::new();
        for u in 0..n {
            if !contacted[u] {
                continue;
            }
            let agent = &mut self.agents[u];
            if lower[u] {
                agent.threshold = (agent.threshold - self.params.delta_persuasion).max(0.0);
            }
            if believes(r, agent.threshold) {
                self.set_active(u, AgentColor::Persuaded, t);
                activated.push(u);
            }
        }
        activated
    }

    /// Every debunker sends a correction to the agents that once tried to
    /// persuade it. A recipient that is still spreading and has similar
    /// preparation turns debunker, with a fresh activation time.
    pub fn apply_debunking(&mut self, t: u32) -> Vec<usize> {
        let n = self.agents.len();
        let mut convert = vec![false; n];
        for d in 0..n {
            let debunker = &self.agents[d];
            if debunker.color != AgentColor::Debunker {
                continue;
            }
            for &c in &debunker.contacted_by {
                let c = c as usize;
                let target = &self.agents[c];
                if target.color.is_spreader()
                    && similar(target.threshold, debunker.threshold, self.params.epsilon_similarity)
                {
                    convert[c] = true;
                }
            }
        }
        let converted: Vec<usize> = (0..n).filter(|&i| convert[i]).collect();
        for &i in &converted {
            self.set_active(i, AgentColor::Debunker, t);
        }
        converted
    }

    /// Active agents switch off `t_active` cycles after their activation.
    pub fn apply_deactivation(&mut self, t: u32) -> Vec<usize> {
        let t_active = self.params.t_active;
        let mut off = Vec::new();
        for (i, agent) in self.agents.iter_mut().enumerate() {
            if !agent.color.is_active() {
                continue;
            }
            let since = agent.activated_at.expect("active agents carry an activation time");
            if t.saturating_sub(since) >= t_active {
                agent.color = AgentColor::Inactive;
                off.push(i);
            }
        }
        off
    }

    pub fn step(&mut self, schedule: &NewsSchedule, t: u32, rng: &mut impl Rng) -> StepReport {
        let (r, v) = schedule.reliability_at(t);
        let mut report = StepReport {
            cycle: t,
            ..Default::default()
        };
        for i in self.apply_spontaneous(r, v, t, rng) {
            if self.agents[i].color == AgentColor::Debunker {
                report.debunkers += 1;
            } else {
                report.spontaneous += 1;
            }
        }
        report.influenced = self.apply_collective_influence(r, t).len();
        report.persuaded = self.apply_persuasion(r, t).len();
        if self.params.debunking_enabled {
            report.converted = self.apply_debunking(t).len();
        }
        report.deactivated = self.apply_deactivation(t).len();
        report
    }

    /// True when no future cycle can change any agent: nobody is active, so
    /// thresholds are frozen, and no undeployed agent would react to seeing
    /// the news under any schedule segment from cycle `t` on.
    pub fn is_quiescent(&self, schedule: &NewsSchedule, t: u32) -> bool {
        if self.agents.iter().any(|a| a.color.is_active()) {
            return false;
        }
        let segments = schedule.segments_from(t);
        !self
            .agents
            .iter()
            .filter(|a| a.color == AgentColor::Undeployed)
            .any(|a| {
                segments.iter().any(|s| {
                    s.visibility > 0.0
                        && (believes(s.reliability, a.threshold)
                            || (self.params.debunking_enabled
                                && rejects(s.reliability, a.threshold, self.params.debunk_margin)))
                })
            })
    }

    fn record(&self, t: u32, r: f64, v: f64) -> CycleRecord {
        CycleRecord {
            cycle: t,
            counts: self.counts(),
            reliability: r,
            visibility: v,
            ever_activated: self.agents.iter().filter(|a| a.activated_at.is_some()).count(),
            ever_spread: self.ever_spread.iter().filter(|&&b| b).count(),
            ever_debunked: self.ever_debunked.iter().filter(|&&b| b).count(),
        }
    }

    pub fn snapshot(&self) -> Vec<AgentSnapshot> {
        self.agents
            .iter()
            .enumerate()
            .map(|(i, a)| AgentSnapshot {
                agent_id: i,
                degree: self.graph.degree(i),
                threshold_initial: a.initial_threshold,
                threshold_final: a.threshold,
                color: a.color,
                activated_at: a.activated_at,
                last_active_color: a.last_active_color,
            })
            .collect()
    }

    /// Steps cycles `0, 1, ...` until `max_cycles` or quiescence, recording the
    /// state after each cycle.
    pub fn run_until_quiet(
        &mut self,
        schedule: &NewsSchedule,
        max_cycles: u32,
        rng: &mut SimRng,
    ) -> (Vec<CycleRecord>, Vec<StepReport>, bool) {
        let mut records = Vec::new();
        let mut reports = Vec::new();
        let mut quiet = false;
        for t in 0..max_cycles {
            reports.push(self.step(schedule, t, rng));
            let (r, v) = schedule.reliability_at(t);
            records.push(self.record(t, r, v));
            if self.is_quiescent(schedule, t + 1) {
                quiet = true;
                break;
            }
        }
        (records, reports, quiet)
    }
}

/// Full simulation on `g`: thresholds from `params.thresholds`, optional
/// random initial spreaders, then cycles until `max_cycles` or quiescence.
///
/// Thresholds, initial spreaders and dynamics use separate streams derived
/// from `seed`, so identical inputs give bit-identical traces.
pub fn run(
    g: &Graph,
    schedule: &NewsSchedule,
    params: &ModelParams,
    max_cycles: u32,
    seed: u64,
) -> Result<SimulationTrace> {
    if max_cycles < 1 {
        return Err(Error::InvalidParameter("max_cycles must be at least 1".into()));
    }
    let agents = init_population(g, &params.thresholds, stream_seed(seed, Stream::Thresholds))?;
    let mut sim = Simulation::new(g, agents, params.clone())?;
    let mut rng = rng_from_seed(stream_seed(seed, Stream::Dynamics));
    if params.initial_spreaders > g.node_count() {
        return Err(Error::InvalidParameter(format!(
            "{} initial spreaders for {} nodes",
            params.initial_spreaders,
            g.node_count()
        )));
    }
    let mut seeds = sample(&mut rng, g.node_count(), params.initial_spreaders).into_vec();
    seeds.sort_unstable();
    for i in seeds {
        sim.seed_active(i, AgentColor::Spontaneous, 0)?;
    }
    let (records, reports, terminated_early) = sim.run_until_quiet(schedule, max_cycles, &mut rng);
    Ok(SimulationTrace {
        seed,
        n_nodes: g.node_count(),
        params: params.clone(),
        schedule: schedule.clone(),
        records,
        reports,
        snapshot: sim.snapshot(),
        terminated_early,
    })
}
