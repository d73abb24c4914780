//! Helpers shared by the integration test targets: a rule-by-rule reference
//! evaluator for the agent model and a per-cycle invariant checker.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rumor_core::mas::{AgentColor, AgentState, ModelParams, NewsSchedule, Simulation};
use rumor_core::netgen::Graph;
use rumor_core::seed::rng_from_seed;

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Col {
    Red,
    Blue,
    Green,
    Yellow,
    Orange,
    Grey,
}

impl Col {
    fn spreading(self) -> bool {
        matches!(self, Col::Blue | Col::Green | Col::Yellow)
    }

    fn active(self) -> bool {
        self.spreading() || self == Col::Orange
    }

    pub fn to_color(self) -> AgentColor {
        match self {
            Col::Red => AgentColor::Undeployed,
            Col::Blue => AgentColor::Spontaneous,
            Col::Green => AgentColor::Influenced,
            Col::Yellow => AgentColor::Persuaded,
            Col::Orange => AgentColor::Debunker,
            Col::Grey => AgentColor::Inactive,
        }
    }
}

/// Straightforward re-statement of the model rules over plain arrays.
#[derive(Debug, Clone)]
pub struct Reference {
    pub adj: Vec<Vec<usize>>,
    pub col: Vec<Col>,
    pub th: Vec<f64>,
    pub since: Vec<Option<u32>>,
    pub told_by: Vec<BTreeSet<usize>>,
    pub hub: Vec<bool>,
    pub p: ModelParams,
}

impl Reference {
    pub fn new(adj: Vec<Vec<usize>>, th: Vec<f64>, p: ModelParams) -> Self {
        let n = adj.len();
        let mut hub = vec![false; n];
        if p.hub_degree_quantile > 0.0 {
            let mut d: Vec<usize> = adj.iter().map(Vec::len).collect();
            d.sort_unstable();
            d.reverse();
            let mut rank = (p.hub_degree_quantile * n as f64).ceil() as usize;
            rank = rank.max(1).min(n);
            let cutoff = d[rank - 1];
            for i in 0..n {
                hub[i] = !adj[i].is_empty() && adj[i].len() >= cutoff;
            }
        }
        Reference {
            col: vec![Col::Red; n],
            since: vec![None; n],
            told_by: vec![BTreeSet::new(); n],
            adj,
            th,
            hub,
            p,
        }
    }

    fn turn(&mut self, i: usize, c: Col, t: u32) {
        self.col[i] = c;
        self.since[i] = Some(t);
    }

    pub fn cycle(&mut self, r: f64, v: f64, t: u32, rng: &mut impl Rng) {
        let n = self.col.len();

        // Direct visualization.
        for i in 0..n {
            if self.col[i] != Col::Red {
                continue;
            }
            let u: f64 = rng.random();
            if u < v {
                if r > self.th[i] {
                    self.turn(i, Col::Blue, t);
                } else if self.p.debunking_enabled && self.th[i] - r >= self.p.debunk_margin - TOL {
                    self.turn(i, Col::Orange, t);
                }
            }
        }

        // Collective influence.
        let spreading: Vec<bool> = self.col.iter().map(|c| c.spreading()).collect();
        for i in 0..n {
            if self.col[i] != Col::Red || self.adj[i].is_empty() {
                continue;
            }
            let friends = self.adj[i].iter().filter(|&&j| spreading[j]).count();
            let hub_friend = self.adj[i].iter().any(|&j| spreading[j] && self.hub[j]);
            let share = friends as f64 / self.adj[i].len() as f64;
            if hub_friend || share > self.p.influence_fraction + TOL {
                self.th[i] = f64::max(0.0, self.th[i] - self.p.delta_influence);
                if r > self.th[i] {
                    self.turn(i, Col::Green, t);
                }
            }
        }

        // Communication persuasion.
        let spreading: Vec<bool> = self.col.iter().map(|c| c.spreading()).collect();
        let before = self.th.clone();
        let mut reached = BTreeSet::new();
        let mut convinced = BTreeSet::new();
        for s in 0..n {
            if !spreading[s] {
                continue;
            }
            for &u in &self.adj[s] {
                if self.col[u] == Col::Red {
                    self.told_by[u].insert(s);
                    reached.insert(u);
                    if (before[s] - before[u]).abs() <= self.p.epsilon_similarity + TOL {
                        convinced.insert(u);
                    }
                }
            }
        }
        for &u in &reached {
            if convinced.contains(&u) {
                self.th[u] = f64::max(0.0, self.th[u] - self.p.delta_persuasion);
            }
            if r > self.th[u] {
                self.turn(u, Col::Yellow, t);
            }
        }

        // Corrections.
        if self.p.debunking_enabled {
            let mut flipped = BTreeSet::new();
            for d in 0..n {
                if self.col[d] != Col::Orange {
                    continue;
                }
                for &c in &self.told_by[d] {
                    if self.col[c].spreading() && (self.th[c] - self.th[d]).abs() <= self.p.epsilon_similarity + TOL {
                        flipped.insert(c);
                    }
                }
            }
            for c in flipped {
                self.turn(c, Col::Orange, t);
            }
        }

        // Switch-off.
        for i in 0..n {
            if self.col[i].active() && t - self.since[i].unwrap() >= self.p.t_active {
                self.col[i] = Col::Grey;
            }
        }
    }
}

/// One micro-scenario for engine/reference comparison.
#[derive(Debug, Clone)]
pub struct MicroCase {
    pub name: &'static str,
    pub edges: Vec<(usize, usize)>,
    pub n: usize,
    pub thresholds: Vec<f64>,
    pub seeded: Vec<(usize, AgentColor)>,
    pub schedule: NewsSchedule,
    pub params: ModelParams,
    pub cycles: u32,
    pub seed: u64,
}

/// Steps the engine and the reference side by side; returns the first
/// mismatch, if any.
pub fn compare_with_reference(case: &MicroCase) -> Result<(), String> {
    let g = Graph::from_edges(case.n, case.edges.iter().copied()).map_err(|e| e.to_string())?;
    let mut adj = vec![Vec::new(); case.n];
    for &(a, b) in &case.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let agents: Vec<AgentState> = case.thresholds.iter().map(|&t| AgentState::new(t)).collect();
    let mut sim = Simulation::new(&g, agents, case.params.clone()).map_err(|e| e.to_string())?;
    let mut reference = Reference::new(adj, case.thresholds.clone(), case.params.clone());
    for &(i, c) in &case.seeded {
        sim.seed_active(i, c, 0).map_err(|e| e.to_string())?;
        let col = match c {
            AgentColor::Spontaneous => Col::Blue,
            AgentColor::Influenced => Col::Green,
            AgentColor::Persuaded => Col::Yellow,
            AgentColor::Debunker => Col::Orange,
            other => return Err(format!("cannot seed {other}")),
        };
        reference.turn(i, col, 0);
    }
    let mut rng_engine = rng_from_seed(case.seed);
    let mut rng_reference = rng_from_seed(case.seed);
    for t in 0..case.cycles {
        sim.step(&case.schedule, t, &mut rng_engine);
        let (r, v) = case.schedule.reliability_at(t);
        reference.cycle(r, v, t, &mut rng_reference);
        for (i, a) in sim.agents().iter().enumerate() {
            let want = reference.col[i].to_color();
            if a.color != want || a.threshold != reference.th[i] || a.activated_at != reference.since[i] {
                return Err(format!(
                    "{}: cycle {t}, agent {i}: engine ({}, {}, {:?}) vs reference ({}, {}, {:?})",
                    case.name, a.color, a.threshold, a.activated_at, want, reference.th[i], reference.since[i]
                ));
            }
            let told: Vec<usize> = a.contacted_by.iter().map(|&c| c as usize).collect();
            if told != reference.told_by[i].iter().copied().collect::<Vec<_>>() {
                return Err(format!("{}: cycle {t}, agent {i}: contact sets differ", case.name));
            }
        }
    }
    Ok(())
}

pub fn micro_cases() -> Vec<MicroCase> {
    use rumor_core::mas::Segment;
    let seg = |start, reliability, visibility| Segment {
        start,
        reliability,
        visibility,
    };
    vec![
        MicroCase {
            name: "star with seeded center",
            n: 5,
            edges: vec![(0, 1), (0, 2), (0, 3), (0, 4)],
            thresholds: vec![0.5, 0.55, 0.62, 0.9, 0.35],
            seeded: vec![(0, AgentColor::Spontaneous)],
            schedule: NewsSchedule::constant(0.6, 0.0).unwrap(),
            params: ModelParams {
                t_active: 3,
                ..Default::default()
            },
            cycles: 8,
            seed: 1,
        },
        MicroCase {
            name: "path with debunkers",
            n: 6,
            edges: vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)],
            thresholds: vec![0.12, 0.41, 0.47, 0.93, 0.71, 0.58],
            seeded: vec![],
            schedule: NewsSchedule::constant(0.5, 0.35).unwrap(),
            params: ModelParams {
                debunking_enabled: true,
                t_active: 4,
                ..Default::default()
            },
            cycles: 25,
            seed: 7,
        },
        MicroCase {
            name: "clique with pendant under a reliability drop",
            n: 5,
            edges: vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)],
            thresholds: vec![0.3, 0.64, 0.69, 0.88, 0.52],
            seeded: vec![],
            schedule: NewsSchedule::new(vec![seg(0, 0.67, 0.15), seg(3, 0.48, 0.6)]).unwrap(),
            params: ModelParams {
                debunking_enabled: true,
                epsilon_similarity: 0.25,
                t_active: 5,
                ..Default::default()
            },
            cycles: 20,
            seed: 42,
        },
        MicroCase {
            name: "complete bipartite with late confirmation",
            n: 6,
            edges: vec![(0, 3), (0, 4), (0, 5), (1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)],
            thresholds: vec![0.44, 0.81, 0.97, 0.2, 0.66, 0.5],
            seeded: vec![],
            schedule: NewsSchedule::new(vec![seg(0, 0.45, 0.2), seg(4, 0.99, 0.2)]).unwrap(),
            params: ModelParams {
                hub_degree_quantile: 0.0,
                delta_influence: 0.15,
                delta_persuasion: 0.05,
                t_active: 3,
                ..Default::default()
            },
            cycles: 15,
            seed: 3,
        },
        MicroCase {
            name: "triangle with isolated agents",
            n: 6,
            edges: vec![(0, 1), (1, 2), (0, 2), (3, 4)],
            thresholds: vec![0.6, 0.25, 0.75, 0.1, 0.95, 0.3],
            seeded: vec![(3, AgentColor::Spontaneous)],
            schedule: NewsSchedule::constant(0.7, 0.5).unwrap(),
            params: ModelParams {
                influence_fraction: 0.5,
                debunking_enabled: true,
                debunk_margin: 0.1,
                t_active: 2,
                ..Default::default()
            },
            cycles: 12,
            seed: 11,
        },
    ]
}

/// Steps a simulation for `cycles` cycles and checks the per-agent and
/// per-cycle invariants after each one.
pub fn check_invariants(
    g: &Graph,
    thresholds: &[f64],
    params: &ModelParams,
    schedule: &NewsSchedule,
    cycles: u32,
    seed: u64,
) -> Result<(), String> {
    let agents: Vec<AgentState> = thresholds.iter().map(|&t| AgentState::new(t)).collect();
    let mut sim = Simulation::new(g, agents, params.clone()).map_err(|e| e.to_string())?;
    let mut rng = rng_from_seed(seed);
    let n = g.node_count();
    let mut prev: Vec<AgentState> = sim.agents().to_vec();
    let mut prev_ever = 0usize;
    for t in 0..cycles {
        sim.step(schedule, t, &mut rng);
        let now = sim.agents();
        let counts = sim.counts();
        if counts.total() != n {
            return Err(format!("cycle {t}: counts sum to {} for {n} agents", counts.total()));
        }
        let ever = now.iter().filter(|a| a.activated_at.is_some()).count();
        if ever < prev_ever {
            return Err(format!("cycle {t}: ever-activated fell from {prev_ever} to {ever}"));
        }
        prev_ever = ever;
        for (i, (a, b)) in prev.iter().zip(now).enumerate() {
            if !a.color.can_become(b.color) {
                return Err(format!("cycle {t}, agent {i}: illegal {} -> {}", a.color, b.color));
            }
            if !(0.0..=1.0).contains(&b.threshold) || b.threshold > a.threshold {
                return Err(format!("cycle {t}, agent {i}: threshold {} -> {}", a.threshold, b.threshold));
            }
            if b.activated_at.is_some() != (b.color != AgentColor::Undeployed) {
                return Err(format!("cycle {t}, agent {i}: activation time out of step with {}", b.color));
            }
            if a.color != AgentColor::Undeployed && a.contacted_by != b.contacted_by {
                return Err(format!("cycle {t}, agent {i}: contacts changed after deployment"));
            }
            if !a.contacted_by.iter().all(|c| b.contacted_by.contains(c)) {
                return Err(format!("cycle {t}, agent {i}: contacts shrank"));
            }
        }
        prev = now.to_vec();
    }
    Ok(())
}
