//! `k`-hollow and `k`-Hoffman sets.
//!
//! `P ⊆ S` is `k`-hollow when fewer than `k` points of `S` lie in `conv(P)`
//! without being vertices of it, and `k`-Hoffman when fewer than `k` points
//! of `S` lie in every leave-one-out hull `conv(P ∖ {p})`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{extreme_indices, in_hull, Point, PointSet};

use super::{AxisBox, DiscreteSetSpec, PolytopeV};

/// Default limit on `|S ∩ box|` for exhaustive hollow search.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    Greedy,
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(SearchMode::Exhaustive),
            "greedy" => Ok(SearchMode::Greedy),
            other => Err(Error::InvalidInput(format!("unknown search mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HollowCertificate {
    pub set: Vec<Point>,
    pub k: usize,
    /// Points of `S` in `conv(set)` that are not vertices of it.
    pub nonvertex_points: Vec<Point>,
}

impl HollowCertificate {
    pub fn is_hollow(&self) -> bool {
        self.nonvertex_points.len() < self.k
    }

    pub fn size(&self) -> usize {
        self.set.len()
    }

    /// Rechecks that every listed point is in `S`, in the hull and not a vertex.
    pub fn verify(&self, s: &DiscreteSetSpec) -> Result<bool> {
        if self.set.is_empty() {
            return Ok(self.nonvertex_points.is_empty());
        }
        let p = PointSet::from_points(self.set.clone())?;
        let vertices = extreme_indices(&p)?;
        for x in &self.nonvertex_points {
            if !s.contains(x)? || !in_hull(x, &p)? || vertices.iter().any(|&i| p.get(i) == x) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn dedup(set: &PointSet) -> PointSet {
    let mut pts = set.points().to_vec();
    pts.sort();
    pts.dedup();
    PointSet::new(set.dim(), pts).expect("same dimension")
}

/// Points of `candidates` inside `conv(p)` that are not vertices of it.
/// `candidates` must already contain every point of `S ∩ conv(p)`.
fn nonvertex_among(candidates: &[Point], p: &PointSet) -> Result<Vec<Point>> {
    let vertices = extreme_indices(p)?;
    let bbox = AxisBox::bounding(p)?;
    let mut out = Vec::new();
    for x in candidates {
        if !bbox.contains(x) || vertices.iter().any(|&i| p.get(i) == x) {
            continue;
        }
        if in_hull(x, p)? {
            out.push(x.clone());
        }
    }
    Ok(out)
}

/// The points of `(conv(P) ∖ V(conv(P))) ∩ S`, sorted lexicographically.
/// Members of `P` that are not extreme count as non-vertices.
pub fn count_nonvertex(s: &DiscreteSetSpec, p: &PointSet) -> Result<(usize, Vec<Point>)> {
    if p.is_empty() {
        return Ok((0, vec![]));
    }
    s.check_subset(p)?;
    let inside = s.enumerate_in_polytope(&PolytopeV::new(p.clone())?)?;
    let pts = nonvertex_among(&inside, &dedup(p))?;
    Ok((pts.len(), pts))
}

pub fn hollow_certificate(s: &DiscreteSetSpec, p: &PointSet, k: usize) -> Result<HollowCertificate> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let (_, nonvertex_points) = count_nonvertex(s, p)?;
    Ok(HollowCertificate { set: dedup(p).points().to_vec(), k, nonvertex_points })
}

pub fn is_k_hollow(p: &PointSet, s: &DiscreteSetSpec, k: usize) -> Result<bool> {
    Ok(hollow_certificate(s, p, k)?.is_hollow())
}

/// Whether fewer than `k` points of `S` lie in every `conv(P ∖ {p})`.
pub fn is_k_hoffman(p: &PointSet, s: &DiscreteSetSpec, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let p = dedup(p);
    if p.len() < 2 {
        return Err(Error::InvalidInput("a Hoffman set needs at least two points".into()));
    }
    s.check_subset(&p)?;
    let inside = s.enumerate_in_polytope(&PolytopeV::new(p.clone())?)?;
    let leave_one_out: Vec<PointSet> =
        (0..p.len()).map(|i| p.subset(&(0..p.len()).filter(|&j| j != i).collect::<Vec<_>>())).collect();
    let mut common = 0;
    for x in &inside {
        let mut everywhere = true;
        for hull in &leave_one_out {
            if !in_hull(x, hull)? {
                everywhere = false;
                break;
            }
        }
        if everywhere {
            common += 1;
            if common >= k {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct Search<'a> {
    ground: &'a [Point],
    dim: usize,
    k: usize,
    best: Vec<usize>,
}

impl Search<'_> {
    fn hollow(&self, indices: &[usize]) -> Result<Option<Vec<Point>>> {
        let p = PointSet::new(self.dim, indices.iter().map(|&i| self.ground[i].clone()).collect())?;
        let nv = nonvertex_among(self.ground, &p)?;
        Ok((nv.len() < self.k).then_some(nv))
    }

    /// Depth-first over hollow sets only: every subset of a hollow set is
    /// hollow, so no maximum is missed.
    fn dfs(&mut self, current: &mut Vec<usize>, start: usize) -> Result<()> {
        if current.len() > self.best.len() {
            self.best = current.clone();
        }
        for i in start..self.ground.len() {
            if current.len() + (self.ground.len() - i) <= self.best.len() {
                break;
            }
            current.push(i);
            if self.hollow(current)?.is_some() {
                self.dfs(current, i + 1)?;
            }
            current.pop();
        }
        Ok(())
    }
}

/// A largest (exhaustive) or inclusion-maximal (greedy) `k`-hollow subset of
/// `S ∩ box`. Greedy scans the box points once in lexicographic order. Since
/// every hull of box points stays inside the box, the box points are all the
/// candidates the hollowness count needs.
pub fn hollow_search(
    s: &DiscreteSetSpec,
    bx: &AxisBox,
    k: usize,
    mode: SearchMode,
    cap: usize,
) -> Result<HollowCertificate> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let ground = s.enumerate_in_box(bx)?;
    if mode == SearchMode::Exhaustive && ground.len() > cap {
        return Err(Error::CapExceeded { what: "hollow search ground set", size: ground.len() as u128, cap: cap as u128 });
    }
    let mut search = Search { ground: &ground, dim: s.dim(), k, best: vec![] };
    match mode {
        SearchMode::Exhaustive => search.dfs(&mut vec![], 0)?,
        SearchMode::Greedy => {
            let mut current = Vec::new();
            for i in 0..ground.len() {
                current.push(i);
                if search.hollow(&current)?.is_none() {
                    current.pop();
                }
            }
            search.best = current;
        }
    }
    let best = search.best.clone();
    let nonvertex_points = if best.is_empty() { vec![] } else { search.hollow(&best)?.expect("best set is hollow") };
    Ok(HollowCertificate { set: best.iter().map(|&i| ground[i].clone()).collect(), k, nonvertex_points })
}
