use crate::error::{Error, Result};
use crate::linalg::{self, Vector};
use crate::scalar::Scalar;

use super::{distinct_indices, in_hull, Point, PointSet};

/// Indices (first occurrences, input order) of the points `a` with
/// `a ∉ conv(A ∖ {a})`. Duplicates count as one point.
pub fn extreme_indices(set: &PointSet) -> Result<Vec<usize>> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let distinct = distinct_indices(set);
    if distinct.len() == 1 {
        return Ok(distinct);
    }
    let mut out = Vec::new();
    for &i in &distinct {
        let others: Vec<usize> = distinct.iter().copied().filter(|&j| j != i).collect();
        if !in_hull(set.get(i), &set.subset(&others))? {
            out.push(i);
        }
    }
    Ok(out)
}

pub fn extreme_points(set: &PointSet) -> Result<PointSet> {
    Ok(set.subset(&extreme_indices(set)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineHull {
    pub origin: Point,
    /// Linearly independent direction vectors spanning the flat.
    pub basis: Vec<Vector>,
    pub dim: usize,
}

impl AffineHull {
    /// Exact test that `p` lies in the flat.
    pub fn contains(&self, p: &Point) -> bool {
        let diff = linalg::sub(p.coords(), self.origin.coords());
        let mut rows = self.basis.clone();
        rows.push(diff);
        linalg::rank(&rows) == self.dim
    }
}

/// The affine hull `origin + span(basis)`; `basis` is a greedy selection of the
/// differences `a_i − a_0` in input order.
pub fn affine_hull(set: &PointSet) -> Result<AffineHull> {
    let origin = set.points().first().ok_or(Error::EmptySet)?.clone();
    let diffs: Vec<Vector> = set.iter().skip(1).map(|a| linalg::sub(a.coords(), origin.coords())).collect();
    let basis: Vec<Vector> = linalg::independent_subset(&diffs).into_iter().map(|i| diffs[i].clone()).collect();
    let dim = basis.len();
    Ok(AffineHull { origin, basis, dim })
}

pub fn centroid(set: &PointSet) -> Result<Point> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = Scalar::from_int(set.len() as i64);
    let mut acc = vec![Scalar::zero(); set.dim()];
    for p in set {
        for (a, x) in acc.iter_mut().zip(p.coords()) {
            *a += x;
        }
    }
    Ok(Point::new(acc.into_iter().map(|x| x / &n).collect()))
}
