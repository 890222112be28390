//! JSON file formats for instances and partition results.

use serde::{Deserialize, Serialize};

use crate::engine::{Instance, PartCertificate, PartitionOutcome, PartitionStats};
use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};
use crate::sets::DiscreteSetSpec;

/// `{"set": …, "m": …, "k": …, "points": [["p/q", …], …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub set: DiscreteSetSpec,
    #[serde(default = "default_m")]
    pub m: usize,
    #[serde(default = "default_k")]
    pub k: usize,
    pub points: Vec<Point>,
}

fn default_m() -> usize {
    2
}

fn default_k() -> usize {
    1
}

impl InstanceFile {
    pub fn into_instance(self) -> Result<Instance> {
        let points = PointSet::from_points(self.points)?;
        Instance::new(self.set, points, self.m, self.k)
    }
}

impl From<&Instance> for InstanceFile {
    fn from(inst: &Instance) -> Self {
        InstanceFile { set: inst.set().clone(), m: inst.m(), k: inst.k(), points: inst.points().points().to_vec() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    NoPartitionFound,
    Error,
}

/// `{"status", "parts", "witnesses", "certificates", "stats"}` plus `"error"`
/// when the run failed. Indices refer to input point order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultFile {
    pub status: Status,
    pub parts: Vec<Vec<usize>>,
    pub witnesses: Vec<Point>,
    pub certificates: Vec<PartCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stats: Option<PartitionStats>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl ResultFile {
    pub fn from_outcome(outcome: &Result<PartitionOutcome>) -> Self {
        let empty = |status, stats, error| ResultFile {
            status,
            parts: vec![],
            witnesses: vec![],
            certificates: vec![],
            stats,
            error,
        };
        match outcome {
            Ok(PartitionOutcome::Found(r)) => ResultFile {
                status: Status::Ok,
                parts: r.parts.clone(),
                witnesses: r.witnesses.clone(),
                certificates: r.certificates.clone(),
                stats: Some(r.stats.clone()),
                error: None,
            },
            Ok(PartitionOutcome::NoPartitionFound { stats }) => {
                empty(Status::NoPartitionFound, Some(stats.clone()), None)
            }
            Err(e) => empty(Status::Error, None, Some(e.to_string())),
        }
    }
}

/// Parses a point written as `(1,2)`, `[1, 2]` or `1,2`; entries may be `p/q`.
pub fn parse_point(s: &str) -> Result<Point> {
    let t = s.trim();
    let t = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .or_else(|| t.strip_prefix('[').and_then(|x| x.strip_suffix(']')))
        .unwrap_or(t);
    let coords = t
        .split(',')
        .map(|c| c.trim().trim_matches('"').parse().map_err(|e| Error::InvalidInput(format!("bad coordinate {c:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    if coords.is_empty() {
        return Err(Error::InvalidInput("empty point".into()));
    }
    Ok(Point::new(coords))
}

/// Reads a point list given either as a bare JSON array or as `{"points": [...]}`.
pub fn parse_points(json: &str) -> Result<PointSet> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Points {
        Bare(Vec<Point>),
        Wrapped { points: Vec<Point> },
    }
    let pts = match serde_json::from_str::<Points>(json).map_err(|e| Error::InvalidInput(e.to_string()))? {
        Points::Bare(p) | Points::Wrapped { points: p } => p,
    };
    PointSet::from_points(pts)
}
