//! Exact convex-geometry kernel: hull membership with certificates,
//! Carathéodory-style support reduction, extreme points, and half-space depth.

mod depth;
mod hull;
mod reduce;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, dot, Vector};
use crate::lp::{self, LpOutcome};
use crate::scalar::Scalar;

pub use depth::{axis_depth_bound, depth, depth_value, DepthResult};
pub use hull::{affine_hull, centroid, extreme_indices, extreme_points, AffineHull};
pub use reduce::{anchored_reduce, caratheodory_reduce, AnchoredReduction, Reduction};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<Scalar>);

impl Point {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c:?}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An ordered list of points sharing one ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    dim: usize,
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
        }
        Ok(PointSet { dim, points })
    }

    /// Builds a set from a nonempty list, taking the dimension from the first point.
    pub fn from_points(points: Vec<Point>) -> Result<Self> {
        let dim = points.first().ok_or(Error::EmptySet)?.dim();
        Self::new(dim, points)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::from_points(rows.iter().map(|r| Point::from_ints(r)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn subset(&self, indices: &[usize]) -> PointSet {
        PointSet { dim: self.dim, points: indices.iter().map(|&i| self.points[i].clone()).collect() }
    }

    pub fn position(&self, p: &Point) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.position(p).is_some()
    }

    pub(crate) fn check_point(&self, p: &Point) -> Result<()> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.dim() });
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// Closed half-space `{x : normal·x ≥ offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: Vector,
    pub offset: Scalar,
}

impl Halfspace {
    pub fn new(normal: Vector, offset: Scalar) -> Result<Self> {
        if linalg::is_zero(&normal) {
            return Err(Error::InvalidInput("half-space normal must be nonzero".into()));
        }
        Ok(Halfspace { normal, offset })
    }

    /// The closed half-space with inner normal `normal` whose boundary passes through `p`.
    pub fn through(normal: Vector, p: &Point) -> Self {
        let offset = dot(&normal, p.coords());
        Halfspace { normal, offset }
    }

    pub fn contains(&self, x: &Point) -> bool {
        dot(&self.normal, x.coords()) >= self.offset
    }

    pub fn count(&self, set: &PointSet) -> usize {
        set.iter().filter(|a| self.contains(a)).count()
    }

    /// Rescales to a primitive integer normal (and matching offset).
    pub fn normalized(&self) -> Self {
        let mut joint = self.normal.clone();
        joint.push(self.offset.clone());
        let scaled = linalg::primitive(&joint);
        let factor = nonzero_ratio(&scaled, &joint);
        Halfspace { normal: linalg::scale(&self.normal, &factor), offset: &self.offset * &factor }
    }
}

fn nonzero_ratio(scaled: &[Scalar], orig: &[Scalar]) -> Scalar {
    scaled
        .iter()
        .zip(orig)
        .find(|(_, o)| !o.is_zero())
        .map(|(s, o)| s / o)
        .unwrap_or_else(Scalar::one)
}

/// Nonnegative weights summing to one over indices of a point set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvexCombination {
    pub support: Vec<(usize, Scalar)>,
}

impl ConvexCombination {
    pub fn indices(&self) -> Vec<usize> {
        self.support.iter().map(|(i, _)| *i).collect()
    }

    /// Maps support indices through `f`.
    pub fn reindexed(&self, f: impl Fn(usize) -> usize) -> Self {
        ConvexCombination { support: self.support.iter().map(|(i, c)| (f(*i), c.clone())).collect() }
    }

    /// Exact check: coefficients nonnegative, summing to one, reproducing `target`.
    pub fn verify(&self, target: &Point, set: &PointSet) -> bool {
        if target.dim() != set.dim() || self.support.is_empty() {
            return false;
        }
        let mut sum = Scalar::zero();
        let mut acc = vec![Scalar::zero(); set.dim()];
        for (i, c) in &self.support {
            if c.is_negative() || *i >= set.len() {
                return false;
            }
            sum += c;
            for (a, x) in acc.iter_mut().zip(set.get(*i).coords()) {
                *a += &(c * x);
            }
        }
        sum == Scalar::one() && acc == target.coords()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "evidence", rename_all = "lowercase")]
pub enum MembershipCertificate {
    Inside(ConvexCombination),
    /// The set lies on the `≥` side; the query point strictly on the `<` side.
    Outside(Halfspace),
}

impl MembershipCertificate {
    pub fn is_inside(&self) -> bool {
        matches!(self, MembershipCertificate::Inside(_))
    }

    pub fn verify(&self, p: &Point, set: &PointSet) -> bool {
        match self {
            MembershipCertificate::Inside(c) => c.verify(p, set),
            MembershipCertificate::Outside(h) => {
                !linalg::is_zero(&h.normal) && !h.contains(p) && set.iter().all(|a| h.contains(a))
            }
        }
    }
}

/// Lifted columns `(a, 1)` for the convex-combination LP.
pub(crate) fn lifted_rows(set: &PointSet, indices: &[usize]) -> Vec<Vector> {
    let d = set.dim();
    let mut rows = vec![Vec::with_capacity(indices.len()); d + 1];
    for &j in indices {
        for (i, x) in set.get(j).coords().iter().enumerate() {
            rows[i].push(x.clone());
        }
        rows[d].push(Scalar::one());
    }
    rows
}

pub(crate) fn lifted_target(p: &Point) -> Vector {
    let mut b = p.coords().to_vec();
    b.push(Scalar::one());
    b
}

/// Decides `p ∈ conv(A)` and returns an exactly verifiable certificate.
pub fn membership(p: &Point, set: &PointSet) -> Result<MembershipCertificate> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    set.check_point(p)?;
    let all: Vec<usize> = (0..set.len()).collect();
    let rows = lifted_rows(set, &all);
    let b = lifted_target(p);
    let cert = match lp::feasible_point(&rows, &b, set.len()) {
        LpOutcome::Optimal { x, .. } => MembershipCertificate::Inside(ConvexCombination {
            support: x.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect(),
        }),
        LpOutcome::Infeasible { farkas } => {
            let d = set.dim();
            let normal: Vector = farkas[..d].iter().map(|y| -y).collect();
            let h = Halfspace { normal, offset: farkas[d].clone() };
            MembershipCertificate::Outside(h.normalized())
        }
        LpOutcome::Unbounded => unreachable!("feasibility LP has zero objective"),
    };
    if !cert.verify(p, set) {
        return Err(Error::VerificationFailure(format!("membership certificate for {p} failed to verify")));
    }
    Ok(cert)
}

/// Boolean form of [`membership`].
pub fn in_hull(p: &Point, set: &PointSet) -> Result<bool> {
    Ok(membership(p, set)?.is_inside())
}

/// First index of each distinct point, in input order.
pub(crate) fn distinct_indices(set: &PointSet) -> Vec<usize> {
    let mut seen = std::collections::HashSet::new();
    (0..set.len()).filter(|&i| seen.insert(set.get(i))).collect()
}
