//! Quantitative Tverberg partitions: find `k` deep points of `S`, then peel off
//! `m − 1` small parts whose hulls contain all of them; the rest is the last part.

mod cover;
mod witness;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{caratheodory_reduce, depth_value, membership, MembershipCertificate, Point, PointSet};
use crate::scalar::Scalar;
use crate::sets::{tverberg_upper_bound, BoundMode, DiscreteSetSpec};

pub use cover::{colorful_cover, Cover};
pub use witness::{find_deep_witnesses, DeepWitness, WitnessSearch};

/// Distinct points of `S` to be split into `m` parts sharing `k` points of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    set: DiscreteSetSpec,
    points: PointSet,
    m: usize,
    k: usize,
}

impl Instance {
    pub fn new(set: DiscreteSetSpec, points: PointSet, m: usize, k: usize) -> Result<Self> {
        if m == 0 || k == 0 {
            return Err(Error::InvalidInput("m and k must be at least 1".into()));
        }
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        if points.dim() != set.dim() {
            return Err(Error::DimensionMismatch { expected: set.dim(), found: points.dim() });
        }
        if !set.is_enumerable() {
            return Err(Error::NotEnumerable);
        }
        let mut seen = std::collections::HashSet::new();
        for p in &points {
            if !seen.insert(p) {
                return Err(Error::DuplicatePoint(p.to_string()));
            }
        }
        set.check_subset(&points)?;
        Ok(Instance { set, points, m, k })
    }

    pub fn set(&self) -> &DiscreteSetSpec {
        &self.set
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        self.points.dim()
    }

    /// Minimum witness depth the construction needs: `(m−1)·k·d + 1`.
    pub fn threshold(&self) -> usize {
        (self.m - 1) * self.k * self.dim() + 1
    }

    /// The same points and set with a different `m`.
    pub fn with_m(&self, m: usize) -> Result<Self> {
        Instance::new(self.set.clone(), self.points.clone(), m, self.k)
    }
}

/// `witness ∈ conv(part)` as weights over global point indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartCertificate {
    pub part: usize,
    pub witness: usize,
    pub support: Vec<(usize, Scalar)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionStats {
    pub threshold: usize,
    /// `tverberg_upper_bound` in paper mode, when it fits in 64 bits.
    pub bound: Option<u64>,
    pub part_sizes: Vec<usize>,
    /// Depth of each witness with respect to the whole input.
    pub witness_depths: Vec<usize>,
    /// Depth of each witness with respect to the points left after each extraction.
    pub depth_trace: Vec<Vec<usize>>,
    /// One flag per extracted part: the primary construction was not used as-is.
    pub fallback: Vec<bool>,
    pub candidates_evaluated: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionResult {
    /// Ascending indices into the input points, one list per part.
    pub parts: Vec<Vec<usize>>,
    pub witnesses: Vec<Point>,
    pub certificates: Vec<PartCertificate>,
    pub stats: PartitionStats,
}

impl PartitionResult {
    pub fn min_witness_depth(&self) -> Option<usize> {
        self.stats.witness_depths.iter().copied().min()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionOutcome {
    Found(PartitionResult),
    /// Fewer than `k` points of `S` reach the required depth; the instance is
    /// below the guaranteed size, so this is not a contradiction.
    NoPartitionFound { stats: PartitionStats },
}

impl PartitionOutcome {
    pub fn found(&self) -> Option<&PartitionResult> {
        match self {
            PartitionOutcome::Found(r) => Some(r),
            PartitionOutcome::NoPartitionFound { .. } => None,
        }
    }

    pub fn stats(&self) -> &PartitionStats {
        match self {
            PartitionOutcome::Found(r) => &r.stats,
            PartitionOutcome::NoPartitionFound { stats } => stats,
        }
    }
}

/// One part: `A_i ⊆ remaining` with `P ⊆ conv(A_i)`, as indices into `remaining`.
///
/// For `k = 1` this is a Carathéodory support, affinely independent with
/// positive weights, so every closed half-space through `p` holds at most `d`
/// of its points. For `k ≥ 2` it is [`colorful_cover`], at most `k·d` points
/// unless a fallback was needed.
pub fn extract_part(p: &PointSet, remaining: &PointSet, k: usize) -> Result<Cover> {
    if k == 1 {
        let [q] = p.points() else {
            return Err(Error::InvalidInput("k = 1 extraction takes a single point".into()));
        };
        let r = caratheodory_reduce(q, remaining)?;
        return Ok(Cover { indices: r.indices, fallback: false });
    }
    colorful_cover(p, remaining)
}

fn covers_all(p: &PointSet, set: &PointSet) -> Result<bool> {
    if set.is_empty() {
        return Ok(false);
    }
    for q in p {
        if !membership(q, set)?.is_inside() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Splits the instance into `m` parts whose hulls share at least `k` points of `S`.
///
/// Deterministic: witnesses are the `k` deepest points (ties lexicographic),
/// parts are extracted in a fixed order, and all leftover points form the last
/// part. Every certificate is recomputed from the final parts.
pub fn tverberg_partition(inst: &Instance) -> Result<PartitionOutcome> {
    let a = inst.points();
    let (m, k) = (inst.m(), inst.k());
    let threshold = inst.threshold();
    let bound = match tverberg_upper_bound(inst.set(), m, k, BoundMode::Paper) {
        Ok(b) => Some(b),
        Err(Error::Overflow(_)) => None,
        Err(e) => return Err(e),
    };
    let search = find_deep_witnesses(a, inst.set(), threshold, k)?;
    let mut stats = PartitionStats {
        threshold,
        bound,
        witness_depths: search.witnesses.iter().map(|w| w.depth).collect(),
        candidates_evaluated: search.evaluated,
        ..Default::default()
    };
    if !search.sufficient {
        if bound.is_some_and(|b| a.len() as u64 >= b) {
            return Err(Error::TheoremViolation(format!(
                "{} points meet the bound {} but only {} of {k} points of S reach depth {threshold}",
                a.len(),
                bound.unwrap_or_default(),
                search.witnesses.len()
            )));
        }
        return Ok(PartitionOutcome::NoPartitionFound { stats });
    }
    let witnesses: Vec<Point> = search.witnesses.into_iter().map(|w| w.point).collect();
    let p = PointSet::new(a.dim(), witnesses.clone())?;

    let mut remaining: Vec<usize> = (0..a.len()).collect();
    let mut parts: Vec<Vec<usize>> = Vec::with_capacity(m);
    for step in 1..m {
        let rem_set = a.subset(&remaining);
        let cover = if k == 1 {
            let c = extract_part(&p, &rem_set, 1)?;
            let rest: Vec<usize> =
                (0..remaining.len()).filter(|i| c.indices.binary_search(i).is_err()).collect();
            covers_all(&p, &rem_set.subset(&rest))?.then_some(c)
        } else {
            cover::first_cover(&p, &rem_set, |c| {
                let rest: Vec<usize> =
                    (0..remaining.len()).filter(|i| c.indices.binary_search(i).is_err()).collect();
                covers_all(&p, &rem_set.subset(&rest))
            })?
        };
        let Some(cover) = cover else {
            return Err(Error::VerificationFailure(format!(
                "after {} of {} parts the witnesses {:?} are not covered by the remaining {} points",
                step,
                m,
                witnesses,
                remaining.len() - 1
            )));
        };
        let part: Vec<usize> = cover.indices.iter().map(|&i| remaining[i]).collect();
        remaining.retain(|i| part.binary_search(i).is_err());
        stats.fallback.push(cover.fallback);
        let rest = a.subset(&remaining);
        stats.depth_trace.push(p.iter().map(|q| depth_value(q, &rest)).collect::<Result<_>>()?);
        parts.push(part);
    }
    parts.push(remaining);
    stats.part_sizes = parts.iter().map(Vec::len).collect();

    let mut certificates = Vec::with_capacity(m * k);
    for (pi, part) in parts.iter().enumerate() {
        let part_set = a.subset(part);
        for (wi, w) in witnesses.iter().enumerate() {
            let MembershipCertificate::Inside(comb) = membership(w, &part_set)? else {
                return Err(Error::VerificationFailure(format!("witness {w} is not in the hull of part {pi}")));
            };
            let support = comb.reindexed(|i| part[i]).support;
            certificates.push(PartCertificate { part: pi, witness: wi, support });
        }
    }
    Ok(PartitionOutcome::Found(PartitionResult { parts, witnesses, certificates, stats }))
}

/// The `m = 2` case.
pub fn radon_partition(inst: &Instance) -> Result<PartitionOutcome> {
    if inst.m() == 2 {
        tverberg_partition(inst)
    } else {
        tverberg_partition(&inst.with_m(2)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(rows: &[&[i64]], m: usize, k: usize) -> Instance {
        let pts = PointSet::from_ints(rows).unwrap();
        Instance::new(DiscreteSetSpec::integer_lattice(pts.dim()), pts, m, k).unwrap()
    }

    #[test]
    fn three_integers() {
        let out = tverberg_partition(&inst(&[&[0], &[1], &[2]], 2, 1)).unwrap();
        let r = out.found().unwrap();
        // The witness is itself a point, so it is peeled off first.
        assert_eq!(r.parts, vec![vec![1], vec![0, 2]]);
        assert_eq!(r.witnesses, vec![Point::from_ints(&[1])]);
        assert_eq!(r.certificates.len(), 2);
    }

    #[test]
    fn unit_square_has_no_radon_partition() {
        let out = radon_partition(&inst(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]], 5, 1)).unwrap();
        assert!(matches!(out, PartitionOutcome::NoPartitionFound { .. }));
    }

    #[test]
    fn single_part() {
        let out = tverberg_partition(&inst(&[&[0, 0], &[3, 0], &[0, 3]], 1, 2)).unwrap();
        let r = out.found().unwrap();
        assert_eq!(r.parts, vec![vec![0, 1, 2]]);
        assert_eq!(r.witnesses.len(), 2);
    }

    #[test]
    fn extraction_on_a_line() {
        let rem = PointSet::from_ints(&[&[0], &[2], &[5]]).unwrap();
        let p = PointSet::from_ints(&[&[1]]).unwrap();
        assert_eq!(extract_part(&p, &rem, 1).unwrap().indices, vec![0, 1]);
    }

    #[test]
    fn rejects_bad_instances() {
        let z1 = DiscreteSetSpec::integer_lattice(1);
        let dup = PointSet::from_ints(&[&[0], &[0]]).unwrap();
        assert!(matches!(Instance::new(z1.clone(), dup, 2, 1), Err(Error::DuplicatePoint(_))));
        let frac = PointSet::new(1, vec![Point::new(vec![Scalar::new(1, 2)])]).unwrap();
        assert!(matches!(Instance::new(z1, frac, 2, 1), Err(Error::NotInSet(_))));
    }

    #[test]
    fn grid_three_parts() {
        let mut rows = Vec::new();
        for x in 0..5 {
            for y in 0..5 {
                rows.push(vec![x, y]);
            }
        }
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let r = tverberg_partition(&inst(&refs, 3, 1)).unwrap();
        let r = r.found().expect("25 points always split");
        assert_eq!(r.parts.len(), 3);
        assert!(r.stats.witness_depths[0] >= 5);
    }
}
