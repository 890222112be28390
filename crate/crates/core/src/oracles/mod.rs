//! Brute-force ground truth. Nothing here calls into the engine, and depth is
//! computed without the arrangement algorithm.

mod partition;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{in_hull, Point, PointSet};
use crate::sets::{is_k_hoffman, AxisBox, DiscreteSetSpec, PolytopeV};

pub use partition::{brute_tverberg, set_partition_count, verify_partition, PartitionDefect, TverbergWitness};

/// Limits on exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct OracleCaps {
    pub depth_points: usize,
    pub partitions: u128,
    pub hoffman_ground: usize,
    pub helly_family: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps { depth_points: 14, partitions: 1_000_000, hoffman_ground: 18, helly_family: 12 }
    }
}

/// A verdict plus the number of objects the search enumerated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport<T> {
    pub verdict: T,
    pub searched: u128,
}

/// Depth by removal: the smallest `|R| ⊆ A` with `p ∉ conv(A ∖ R)`.
///
/// A closed half-space through `p` holding `t` points shows the removal of
/// those `t` points pushes `p` out of the hull; conversely a strict separation
/// of `p` from `conv(A ∖ R)` gives a closed half-space through `p` meeting `A`
/// inside `R`. Subsets are tried by increasing size with exact hull tests.
pub fn brute_depth(p: &Point, a: &PointSet, cap: usize) -> Result<OracleReport<usize>> {
    if p.dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: p.dim() });
    }
    let mut pts = a.points().to_vec();
    pts.sort();
    pts.dedup();
    let n = pts.len();
    if n > cap {
        return Err(Error::CapExceeded { what: "depth oracle point set", size: n as u128, cap: cap as u128 });
    }
    if a.dim() > 4 {
        return Err(Error::CapExceeded { what: "depth oracle dimension", size: a.dim() as u128, cap: 4 });
    }
    let mut searched = 0u128;
    for t in 0..n {
        for removed in (0..n).combinations(t) {
            searched += 1;
            let kept: Vec<Point> =
                (0..n).filter(|i| removed.binary_search(i).is_err()).map(|i| pts[i].clone()).collect();
            if !in_hull(p, &PointSet::new(a.dim(), kept)?)? {
                return Ok(OracleReport { verdict: t, searched });
            }
        }
    }
    Ok(OracleReport { verdict: n, searched })
}

/// Largest `k`-Hoffman subset of `S ∩ box`, by trying subsets from the largest
/// size down. Single points count as Hoffman (their one leave-one-out hull is empty).
pub fn brute_hoffman_max(s: &DiscreteSetSpec, bx: &AxisBox, k: usize, cap: usize) -> Result<OracleReport<usize>> {
    let ground = s.enumerate_in_box(bx)?;
    let n = ground.len();
    if n > cap {
        return Err(Error::CapExceeded { what: "Hoffman oracle ground set", size: n as u128, cap: cap as u128 });
    }
    let mut searched = 0u128;
    for t in (2..=n).rev() {
        for combo in (0..n).combinations(t) {
            searched += 1;
            let p = PointSet::new(s.dim(), combo.iter().map(|&i| ground[i].clone()).collect())?;
            if is_k_hoffman(&p, s, k)? {
                return Ok(OracleReport { verdict: t, searched });
            }
        }
    }
    Ok(OracleReport { verdict: n.min(1), searched })
}

/// The leave-one-out hulls `conv(U ∖ {u})`, `u ∈ U`.
pub fn hoffman_family(u: &PointSet) -> Result<Vec<PolytopeV>> {
    if u.len() < 2 {
        return Err(Error::InvalidInput("leave-one-out family needs at least two points".into()));
    }
    (0..u.len())
        .map(|i| PolytopeV::new(u.subset(&(0..u.len()).filter(|&j| j != i).collect::<Vec<_>>())))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HellyVerdict {
    /// Every subfamily of at most `h` members has `≥ k` common points of `S`.
    pub hypothesis_holds: bool,
    /// The whole family has `≥ k` common points of `S`.
    pub conclusion_holds: bool,
    /// First subfamily (by size, then lexicographically) with too few common points.
    pub violating_subfamily: Option<Vec<usize>>,
    /// Common points of the whole family, sorted.
    pub common_points: Vec<Point>,
}

impl HellyVerdict {
    /// The family is a counterexample to Helly number `h` exactly when this fails.
    pub fn implication_holds(&self) -> bool {
        !self.hypothesis_holds || self.conclusion_holds
    }
}

/// Tests the quantitative Helly implication for number `h` on one family.
///
/// Each point of `S` in some member is tagged with the set of members
/// containing it; a subfamily's common points are those whose tag covers it.
pub fn brute_helly_check(
    family: &[PolytopeV],
    s: &DiscreteSetSpec,
    k: usize,
    h: usize,
    cap: usize,
) -> Result<OracleReport<HellyVerdict>> {
    let n = family.len();
    if n == 0 {
        return Err(Error::EmptySet);
    }
    if n > cap {
        return Err(Error::CapExceeded { what: "Helly oracle family", size: n as u128, cap: cap as u128 });
    }
    let mut tagged: std::collections::BTreeMap<Point, u64> = std::collections::BTreeMap::new();
    for (i, poly) in family.iter().enumerate() {
        for p in s.enumerate_in_polytope(poly)? {
            *tagged.entry(p).or_default() |= 1 << i;
        }
    }
    let common = |members: &[usize]| -> usize {
        let mask: u64 = members.iter().map(|&i| 1u64 << i).sum();
        tagged.values().filter(|&&t| t & mask == mask).count()
    };
    let mut searched = 0u128;
    let mut violating = None;
    'outer: for size in 1..=h.min(n) {
        for g in (0..n).combinations(size) {
            searched += 1;
            if common(&g) < k {
                violating = Some(g);
                break 'outer;
            }
        }
    }
    let full = (1u64 << n) - 1;
    let common_points: Vec<Point> = tagged.iter().filter(|(_, &t)| t == full).map(|(p, _)| p.clone()).collect();
    let verdict = HellyVerdict {
        hypothesis_holds: violating.is_none(),
        conclusion_holds: common_points.len() >= k,
        violating_subfamily: violating,
        common_points,
    };
    Ok(OracleReport { verdict, searched })
}
