use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub start: u32,
    pub reliability: f64,
    pub visibility: f64,
}

/// Piecewise-constant news reliability `r(t)` and visualization probability `v(t)`.
///
/// A segment applies from its `start` cycle (inclusive) until the next one begins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Segment>", into = "Vec<Segment>")]
pub struct NewsSchedule {
    segments: Vec<Segment>,
}

impl NewsSchedule {
    pub fn new(segments: Vec<Segment>) -> Result<Self> {
        let first = segments
            .first()
            .ok_or_else(|| Error::InvalidParameter("schedule needs at least one segment".into()))?;
        if first.start != 0 {
            return Err(Error::InvalidParameter(
                "first schedule segment must start at cycle 0".into(),
            ));
        }
        if segments.windows(2).any(|w| w[0].start >= w[1].start) {
            return Err(Error::InvalidParameter(
                "schedule start cycles must be strictly increasing".into(),
            ));
        }
        for s in &segments {
            if !(0.0..=1.0).contains(&s.reliability) || !(0.0..=1.0).contains(&s.visibility) {
                return Err(Error::InvalidParameter(format!(
                    "segment at cycle {} has r or v outside [0, 1]",
                    s.start
                )));
            }
        }
        Ok(NewsSchedule { segments })
    }

    pub fn constant(reliability: f64, visibility: f64) -> Result<Self> {
        Self::new(vec![Segment {
            start: 0,
            reliability,
            visibility,
        }])
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn segment_index_at(&self, t: u32) -> usize {
        self.segments.partition_point(|s| s.start <= t) - 1
    }

    /// `(r, v)` in force at cycle `t`.
    pub fn reliability_at(&self, t: u32) -> (f64, f64) {
        let s = &self.segments[self.segment_index_at(t)];
        (s.reliability, s.visibility)
    }

    /// Segments that can still apply at or after cycle `t`.
    pub fn segments_from(&self, t: u32) -> &[Segment] {
        &self.segments[self.segment_index_at(t)..]
    }

    /// Replaces the reliability of every segment.
    pub fn with_reliability(&self, reliability: f64) -> Result<Self> {
        Self::new(
            self.segments
                .iter()
                .map(|s| Segment { reliability, ..*s })
                .collect(),
        )
    }
}

impl TryFrom<Vec<Segment>> for NewsSchedule {
    type Error = Error;

    fn try_from(segments: Vec<Segment>) -> Result<Self> {
        NewsSchedule::new(segments)
    }
}

impl From<NewsSchedule> for Vec<Segment> {
    fn from(s: NewsSchedule) -> Self {
        s.segments
    }
}
