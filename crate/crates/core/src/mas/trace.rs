use std::io::Write;

use serde::{Deserialize, Serialize};

use super::{AgentColor, ModelParams, NewsSchedule, StepReport};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorCounts {
    pub undeployed: usize,
    pub spontaneous: usize,
    pub influenced: usize,
    pub persuaded: usize,
    pub debunker: usize,
    pub inactive: usize,
}

impl ColorCounts {
    pub fn tally(colors: impl IntoIterator<Item = AgentColor>) -> Self {
        let mut c = ColorCounts::default();
        for color in colors {
            *c.get_mut(color) += 1;
        }
        c
    }

    pub fn get(&self, color: AgentColor) -> usize {
        match color {
            AgentColor::Undeployed => self.undeployed,
            AgentColor::Spontaneous => self.spontaneous,
            AgentColor::Influenced => self.influenced,
            AgentColor::Persuaded => self.persuaded,
            AgentColor::Debunker => self.debunker,
            AgentColor::Inactive => self.inactive,
        }
    }

    fn get_mut(&mut self, color: AgentColor) -> &mut usize {
        match color {
            AgentColor::Undeployed => &mut self.undeployed,
            AgentColor::Spontaneous => &mut self.spontaneous,
            AgentColor::Influenced => &mut self.influenced,
            AgentColor::Persuaded => &mut self.persuaded,
            AgentColor::Debunker => &mut self.debunker,
            AgentColor::Inactive => &mut self.inactive,
        }
    }

    pub fn total(&self) -> usize {
        AgentColor::ALL.iter().map(|&c| self.get(c)).sum()
    }

    pub fn spreaders(&self) -> usize {
        self.spontaneous + self.influenced + self.persuaded
    }

    /// Agents currently spreading the news or its correction.
    pub fn active(&self) -> usize {
        self.spreaders() + self.debunker
    }
}

/// State after one cycle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub cycle: u32,
    pub counts: ColorCounts,
    pub reliability: f64,
    pub visibility: f64,
    pub ever_activated: usize,
    pub ever_spread: usize,
    pub ever_debunked: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentSnapshot {
    pub agent_id: usize,
    pub degree: usize,
    pub threshold_initial: f64,
    pub threshold_final: f64,
    pub color: AgentColor,
    pub activated_at: Option<u32>,
    pub last_active_color: Option<AgentColor>,
}

impl AgentSnapshot {
    /// Spread or debunked at some point, including agents now inactive.
    pub fn took_part(&self) -> bool {
        self.last_active_color.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationTrace {
    pub seed: u64,
    pub n_nodes: usize,
    pub params: ModelParams,
    pub schedule: NewsSchedule,
    pub records: Vec<CycleRecord>,
    pub reports: Vec<StepReport>,
    pub snapshot: Vec<AgentSnapshot>,
    pub terminated_early: bool,
}

pub const TRACE_CSV_HEADER: &str =
    "cycle,n_undeployed,n_spontaneous,n_influenced,n_persuaded,n_debunker,n_inactive,r,v";

pub const SNAPSHOT_CSV_HEADER: &str =
    "agent_id,degree,threshold_initial,threshold_final,color,activated_at";

impl SimulationTrace {
    pub fn last(&self) -> &CycleRecord {
        self.records.last().expect("a trace holds at least one cycle")
    }

    pub fn peak_of(&self, f: impl Fn(&CycleRecord) -> usize) -> usize {
        self.records.iter().map(f).max().unwrap_or(0)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{TRACE_CSV_HEADER}")?;
        for rec in &self.records {
            let c = &rec.counts;
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{}",
                rec.cycle,
                c.undeployed,
                c.spontaneous,
                c.influenced,
                c.persuaded,
                c.debunker,
                c.inactive,
                rec.reliability,
                rec.visibility
            )?;
        }
        Ok(())
    }

    pub fn write_snapshot_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "{SNAPSHOT_CSV_HEADER}")?;
        for a in &self.snapshot {
            let at = a.activated_at.map(|t| t.to_string()).unwrap_or_default();
            writeln!(
                w,
                "{},{},{},{},{},{}",
                a.agent_id, a.degree, a.threshold_initial, a.threshold_final, a.color, at
            )?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mas::run;
    use crate::netgen::generate_ba;

    #[test]
    fn csv_rows_conserve_population() {
        let g = generate_ba(300, 2, 1).unwrap();
        let schedule = NewsSchedule::constant(0.8, 0.1).unwrap();
        let trace = run(&g, &schedule, &ModelParams::default(), 100, 4).unwrap();
        let mut buf = Vec::new();
        trace.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(TRACE_CSV_HEADER));
        for line in lines {
            let cols: Vec<&str> = line.split(',').collect();
            assert_eq!(cols.len(), 9);
            let sum: usize = cols[1..7].iter().map(|c| c.parse::<usize>().unwrap()).sum();
            assert_eq!(sum, 300);
        }
    }

    #[test]
    fn json_round_trip() {
        let g = generate_ba(100, 2, 1).unwrap();
        let schedule = NewsSchedule::constant(0.7, 0.2).unwrap();
        let trace = run(&g, &schedule, &ModelParams::default(), 60, 2).unwrap();
        let back = SimulationTrace::from_json(&trace.to_json().unwrap()).unwrap();
        assert_eq!(back, trace);
    }

    #[test]
    fn snapshot_csv_leaves_missing_activation_blank() {
        let g = generate_ba(20, 2, 1).unwrap();
        let schedule = NewsSchedule::constant(0.0, 0.0).unwrap();
        let trace = run(&g, &schedule, &ModelParams::default(), 3, 2).unwrap();
        let mut buf = Vec::new();
        trace.write_snapshot_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let row = text.lines().nth(1).unwrap();
        assert!(row.starts_with("0,"));
        assert!(row.ends_with(",undeployed,"));
    }
}
