use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{axis_depth_bound, depth, depth_value, DepthResult, Point, PointSet};
use crate::sets::{AxisBox, DiscreteSetSpec};

/// A point of `S` together with its exact depth with respect to `A`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeepWitness {
    pub point: Point,
    pub depth: usize,
    pub witness: crate::geometry::Halfspace,
}

impl DeepWitness {
    fn new(point: Point, r: DepthResult) -> Self {
        DeepWitness { point, depth: r.depth, witness: r.witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSearch {
    /// Deepest qualifying points, by depth descending then lexicographically.
    pub witnesses: Vec<DeepWitness>,
    /// False when fewer than `k` points reach the threshold.
    pub sufficient: bool,
    /// Points of `S` whose exact depth was computed.
    pub evaluated: usize,
}

/// The `k` deepest points of `S ∩ conv(A)` with depth at least `threshold`.
///
/// Candidates are the points of `S` in the bounding box of `A`; points outside
/// the hull have depth zero, so no separate hull test is needed when
/// `threshold ≥ 1`. Candidates are ranked by the cheap axis bound and exact
/// depths are computed only while the bound can still beat the current `k`-th
/// best.
pub fn find_deep_witnesses(a: &PointSet, s: &DiscreteSetSpec, threshold: usize, k: usize) -> Result<WitnessSearch> {
    let threshold = threshold.max(1);
    let candidates = s.enumerate_in_box(&AxisBox::bounding(a)?)?;
    let mut ranked: Vec<(usize, Point)> = candidates
        .into_iter()
        .map(|p| (axis_depth_bound(&p, a), p))
        .filter(|(ub, _)| *ub >= threshold)
        .collect();
    ranked.sort_by(|(u1, p1), (u2, p2)| u2.cmp(u1).then_with(|| p1.cmp(p2)));

    // (depth, point), kept sorted by depth descending then point ascending.
    let mut best: Vec<(usize, Point)> = Vec::with_capacity(k + 1);
    let mut evaluated = 0;
    for (ub, p) in ranked {
        if best.len() == k && ub < best[k - 1].0 {
            break;
        }
        evaluated += 1;
        let dv = depth_value(&p, a)?;
        if dv < threshold {
            continue;
        }
        let pos = best.partition_point(|(d, q)| *d > dv || (*d == dv && *q < p));
        if pos < k {
            best.insert(pos, (dv, p));
            best.truncate(k);
        }
    }
    let sufficient = best.len() == k;
    let witnesses = best
        .into_iter()
        .map(|(_, p)| {
            let r = depth(&p, a)?;
            Ok(DeepWitness::new(p, r))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WitnessSearch { witnesses, sufficient, evaluated })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn middle_of_a_line() {
        let a = PointSet::from_ints(&[&[0], &[1], &[2], &[3], &[4]]).unwrap();
        let r = find_deep_witnesses(&a, &DiscreteSetSpec::integer_lattice(1), 2, 1).unwrap();
        assert!(r.sufficient);
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(r.witnesses[0].point, Point::from_ints(&[2]));
        assert_eq!(r.witnesses[0].depth, 3);
    }

    #[test]
    fn unit_square_vertices_have_depth_one() {
        let a = PointSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let z2 = DiscreteSetSpec::integer_lattice(2);
        let r = find_deep_witnesses(&a, &z2, 1, 1).unwrap();
        assert!(r.sufficient);
        assert_eq!(r.witnesses[0].point, Point::from_ints(&[0, 0]));
        assert_eq!(r.witnesses[0].depth, 1);
        let r = find_deep_witnesses(&a, &z2, 2, 1).unwrap();
        assert!(!r.sufficient);
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn ties_break_lexicographically() {
        let a = PointSet::from_ints(&[&[0], &[1], &[2], &[3]]).unwrap();
        let r = find_deep_witnesses(&a, &DiscreteSetSpec::integer_lattice(1), 1, 3).unwrap();
        let pts: Vec<_> = r.witnesses.iter().map(|w| (w.point.clone(), w.depth)).collect();
        assert_eq!(pts, vec![(Point::from_ints(&[1]), 2), (Point::from_ints(&[2]), 2), (Point::from_ints(&[0]), 1)]);
    }
}
