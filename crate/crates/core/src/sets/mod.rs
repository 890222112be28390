//! Discrete sets `S`: lattices, lattice differences `L ∖ (L₁ ∪ … ∪ L_m)` and
//! the mixed products `ℤ^a × ℝ^b` (bound formulas only).

mod bounds;
mod hollow;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{in_hull, Point, PointSet};
use crate::linalg::{self, Vector};
use crate::lp::{self, LpOutcome};
use crate::scalar::Scalar;

pub use bounds::{helly_upper_bound, tverberg_upper_bound, BoundMode};
pub use hollow::{
    count_nonvertex, hollow_certificate, hollow_search, is_k_hoffman, is_k_hollow, HollowCertificate, SearchMode,
    DEFAULT_EXHAUSTIVE_CAP,
};

/// Largest lattice-coordinate box a scan will walk.
pub const MAX_SCAN_POINTS: u128 = 50_000_000;

/// `r` linearly independent rational vectors in dimension `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    vectors: Vec<Vector>,
    dim: usize,
    /// Rows of the `d × r` basis matrix forming an invertible `r × r` block.
    pivot_rows: Vec<usize>,
    /// Inverse of that block.
    inverse: Vec<Vector>,
}

impl LatticeBasis {
    pub fn new(vectors: Vec<Vector>) -> Result<Self> {
        let dim = vectors.first().ok_or_else(|| Error::InvalidBasis("no basis vectors".into()))?.len();
        if dim == 0 {
            return Err(Error::InvalidBasis("zero-dimensional vectors".into()));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
        }
        let r = vectors.len();
        if linalg::rank(&vectors) != r {
            return Err(Error::InvalidBasis("basis vectors are linearly dependent".into()));
        }
        // Rows of the d×r matrix whose columns are the basis vectors.
        let rows: Vec<Vector> = (0..dim).map(|i| vectors.iter().map(|v| v[i].clone()).collect()).collect();
        let pivot_rows = linalg::independent_subset(&rows);
        debug_assert_eq!(pivot_rows.len(), r);
        let block: Vec<Vector> = pivot_rows.iter().map(|&i| rows[i].clone()).collect();
        let mut aug: Vec<Vector> = block
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut a = row.clone();
                a.extend((0..r).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
                a
            })
            .collect();
        linalg::rref(&mut aug, r);
        let inverse = aug.into_iter().map(|row| row[r..].to_vec()).collect();
        Ok(LatticeBasis { vectors, dim, pivot_rows, inverse })
    }

    /// The standard lattice `ℤ^d`.
    pub fn standard(dim: usize) -> Self {
        let vectors = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }).collect())
            .collect();
        Self::new(vectors).expect("identity basis is valid")
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    /// Coordinates of `x` in this basis, or `None` when `x` is outside its span.
    pub fn coordinates(&self, x: &[Scalar]) -> Option<Vector> {
        let sel: Vector = self.pivot_rows.iter().map(|&i| x[i].clone()).collect();
        let c: Vector = self.inverse.iter().map(|row| linalg::dot(row, &sel)).collect();
        if self.is_full_rank() || self.combine(&c) == x {
            Some(c)
        } else {
            None
        }
    }

    /// `Σ c_i b_i`.
    pub fn combine(&self, c: &[Scalar]) -> Vector {
        let mut x = vec![Scalar::zero(); self.dim];
        for (ci, v) in c.iter().zip(&self.vectors) {
            if ci.is_zero() {
                continue;
            }
            for (xj, vj) in x.iter_mut().zip(v) {
                *xj += &(ci * vj);
            }
        }
        x
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        x.len() == self.dim && self.coordinates(x).is_some_and(|c| c.iter().all(Scalar::is_integer))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SetKind {
    Lattice(LatticeBasis),
    /// `L ∖ (L₁ ∪ … ∪ L_m)`; every `Lᵢ` is verified to be a sublattice of `L`.
    Difference { lattice: LatticeBasis, sublattices: Vec<LatticeBasis> },
    /// `ℤ^a × ℝ^b`; supports the bound formulas only.
    Mixed { integer_dims: usize, real_dims: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteSetSpec {
    dim: usize,
    kind: SetKind,
}

impl DiscreteSetSpec {
    pub fn integer_lattice(dim: usize) -> Self {
        Self::lattice(LatticeBasis::standard(dim))
    }

    pub fn lattice(basis: LatticeBasis) -> Self {
        DiscreteSetSpec { dim: basis.dim(), kind: SetKind::Lattice(basis) }
    }

    pub fn difference(lattice: LatticeBasis, sublattices: Vec<LatticeBasis>) -> Result<Self> {
        for (index, sub) in sublattices.iter().enumerate() {
            if sub.dim() != lattice.dim() {
                return Err(Error::DimensionMismatch { expected: lattice.dim(), found: sub.dim() });
            }
            if !sub.vectors().iter().all(|v| lattice.contains(v)) {
                return Err(Error::NotSublattice { index });
            }
        }
        Ok(DiscreteSetSpec { dim: lattice.dim(), kind: SetKind::Difference { lattice, sublattices } })
    }

    pub fn mixed(integer_dims: usize, real_dims: usize) -> Result<Self> {
        let dim = integer_dims + real_dims;
        if dim == 0 {
            return Err(Error::InvalidInput("mixed set needs positive dimension".into()));
        }
        Ok(DiscreteSetSpec { dim, kind: SetKind::Mixed { integer_dims, real_dims } })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &SetKind {
        &self.kind
    }

    pub fn is_enumerable(&self) -> bool {
        !matches!(self.kind, SetKind::Mixed { .. })
    }

    fn base_lattice(&self) -> Result<&LatticeBasis> {
        match &self.kind {
            SetKind::Lattice(l) | SetKind::Difference { lattice: l, .. } => Ok(l),
            SetKind::Mixed { .. } => Err(Error::NotEnumerable),
        }
    }

    fn excluded(&self, x: &[Scalar]) -> bool {
        match &self.kind {
            SetKind::Difference { sublattices, .. } => sublattices.iter().any(|s| s.contains(x)),
            _ => false,
        }
    }

    fn check_dim(&self, p: &Point) -> Result<()> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.dim() });
        }
        Ok(())
    }

    /// Membership `p ∈ S`.
    pub fn contains(&self, p: &Point) -> Result<bool> {
        self.check_dim(p)?;
        let l = self.base_lattice()?;
        Ok(l.contains(p.coords()) && !self.excluded(p.coords()))
    }

    /// Errors unless every point of `set` lies in `S`.
    pub fn check_subset(&self, set: &PointSet) -> Result<()> {
        for p in set {
            if !self.contains(p)? {
                return Err(Error::NotInSet(p.to_string()));
            }
        }
        Ok(())
    }

    /// Integer bounds on lattice coordinates of points of `span(L) ∩ conv(points)`;
    /// `None` when that intersection is empty.
    fn coordinate_box(&self, points: &PointSet) -> Result<Option<(Vec<BigInt>, Vec<BigInt>)>> {
        let l = self.base_lattice()?;
        let r = l.rank();
        if l.is_full_rank() {
            let coords: Vec<Vector> = points.iter().map(|p| l.coordinates(p.coords()).expect("full rank")).collect();
            let lo = (0..r).map(|i| coords.iter().map(|c| c[i].clone()).min().expect("nonempty").ceil()).collect();
            let hi = (0..r).map(|i| coords.iter().map(|c| c[i].clone()).max().expect("nonempty").floor()).collect();
            return Ok(Some((lo, hi)));
        }
        // Rank-deficient: optimize each coordinate over {c : B c ∈ conv(points)}
        // with c split into nonnegative parts.
        let n = points.len();
        let d = self.dim;
        let ncols = 2 * r + n;
        let mut rows = Vec::with_capacity(d + 1);
        for i in 0..d {
            let mut row = Vec::with_capacity(ncols);
            for v in l.vectors() {
                row.push(v[i].clone());
            }
            for v in l.vectors() {
                row.push(-&v[i]);
            }
            for p in points {
                row.push(-&p.coords()[i]);
            }
            rows.push(row);
        }
        let mut sum_row = vec![Scalar::zero(); 2 * r];
        sum_row.extend(std::iter::repeat_n(Scalar::one(), n));
        rows.push(sum_row);
        let mut b = vec![Scalar::zero(); d];
        b.push(Scalar::one());
        let mut lo = Vec::with_capacity(r);
        let mut hi = Vec::with_capacity(r);
        for i in 0..r {
            for sign in [1, -1] {
                let mut c = vec![Scalar::zero(); ncols];
                c[i] = Scalar::from_int(sign);
                c[r + i] = Scalar::from_int(-sign);
                match lp::minimize(&rows, &b, &c) {
                    LpOutcome::Optimal { value, .. } => {
                        if sign == 1 {
                            lo.push(value.ceil());
                        } else {
                            hi.push((-value).floor());
                        }
                    }
                    LpOutcome::Infeasible { .. } => return Ok(None),
                    LpOutcome::Unbounded => unreachable!("polytope is bounded"),
                }
            }
        }
        Ok(Some((lo, hi)))
    }

    /// Walks the lattice-coordinate box, keeping points of `S` accepted by `keep`,
    /// sorted lexicographically.
    fn scan(
        &self,
        lo: &[BigInt],
        hi: &[BigInt],
        mut keep: impl FnMut(&Point) -> Result<bool>,
    ) -> Result<Vec<Point>> {
        let l = self.base_lattice()?;
        let mut total: u128 = 1;
        let mut lo_i = Vec::with_capacity(lo.len());
        let mut hi_i = Vec::with_capacity(hi.len());
        for (a, b) in lo.iter().zip(hi) {
            if a > b {
                return Ok(vec![]);
            }
            let (Some(a), Some(b)) = (a.to_i64(), b.to_i64()) else {
                return Err(Error::CapExceeded { what: "lattice scan", size: u128::MAX, cap: MAX_SCAN_POINTS });
            };
            total = total.saturating_mul((b as i128 - a as i128 + 1) as u128);
            lo_i.push(a);
            hi_i.push(b);
        }
        if total > MAX_SCAN_POINTS {
            return Err(Error::CapExceeded { what: "lattice scan", size: total, cap: MAX_SCAN_POINTS });
        }
        let mut out = Vec::new();
        let mut c = lo_i.clone();
        loop {
            let coords: Vec<Scalar> = c.iter().map(|&x| Scalar::from_int(x)).collect();
            let x = l.combine(&coords);
            if !self.excluded(&x) {
                let p = Point::new(x);
                if keep(&p)? {
                    out.push(p);
                }
            }
            // Odometer increment.
            let mut i = 0;
            loop {
                if i == c.len() {
                    out.sort();
                    return Ok(out);
                }
                if c[i] < hi_i[i] {
                    c[i] += 1;
                    break;
                }
                c[i] = lo_i[i];
                i += 1;
            }
        }
    }

    /// All points of `S` in `conv(K)`, sorted lexicographically. Each point is
    /// admitted by an exact membership certificate.
    pub fn enumerate_in_polytope(&self, polytope: &PolytopeV) -> Result<Vec<Point>> {
        let verts = polytope.vertices();
        if verts.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: verts.dim() });
        }
        let Some((lo, hi)) = self.coordinate_box(verts)? else {
            return Ok(vec![]);
        };
        let bbox = AxisBox::bounding(verts)?;
        self.scan(&lo, &hi, |p| Ok(bbox.contains(p) && in_hull(p, verts)?))
    }

    /// All points of `S` in the axis-aligned box, sorted lexicographically.
    pub fn enumerate_in_box(&self, bx: &AxisBox) -> Result<Vec<Point>> {
        if bx.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: bx.dim() });
        }
        let corners = bx.corners();
        let Some((lo, hi)) = self.coordinate_box(&corners)? else {
            return Ok(vec![]);
        };
        self.scan(&lo, &hi, |p| Ok(bx.contains(p)))
    }
}

/// Free-function form of [`DiscreteSetSpec::contains`].
pub fn set_contains(set: &DiscreteSetSpec, p: &Point) -> Result<bool> {
    set.contains(p)
}

/// Free-function form of [`DiscreteSetSpec::enumerate_in_polytope`].
pub fn enumerate_in_polytope(set: &DiscreteSetSpec, polytope: &PolytopeV) -> Result<Vec<Point>> {
    set.enumerate_in_polytope(polytope)
}

/// A polytope given by a (nonempty) list of points whose hull it is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeV {
    vertices: PointSet,
}

impl PolytopeV {
    pub fn new(vertices: PointSet) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(PolytopeV { vertices })
    }

    pub fn vertices(&self) -> &PointSet {
        &self.vertices
    }

    pub fn contains(&self, p: &Point) -> Result<bool> {
        in_hull(p, &self.vertices)
    }
}

/// Closed axis-aligned box `lo ≤ x ≤ hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisBox {
    pub lo: Vector,
    pub hi: Vector,
}

impl AxisBox {
    pub fn new(lo: Vector, hi: Vector) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::InvalidInput("box bounds must have equal, positive length".into()));
        }
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::InvalidInput("box lower bound exceeds upper bound".into()));
        }
        Ok(AxisBox { lo, hi })
    }

    pub fn from_ints(lo: &[i64], hi: &[i64]) -> Result<Self> {
        let f = |v: &[i64]| v.iter().map(|&x| Scalar::from_int(x)).collect();
        Self::new(f(lo), f(hi))
    }

    /// `[-b, b]^d`.
    pub fn symmetric(dim: usize, bound: i64) -> Result<Self> {
        Self::from_ints(&vec![-bound; dim], &vec![bound; dim])
    }

    pub fn bounding(set: &PointSet) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        let d = set.dim();
        let lo = (0..d).map(|i| set.iter().map(|p| p.coords()[i].clone()).min().expect("nonempty")).collect();
        let hi = (0..d).map(|i| set.iter().map(|p| p.coords()[i].clone()).max().expect("nonempty")).collect();
        Ok(AxisBox { lo, hi })
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.coords().iter().zip(self.lo.iter().zip(&self.hi)).all(|(x, (a, b))| a <= x && x <= b)
    }

    /// Intersection, or `None` when empty.
    pub fn intersect(&self, other: &AxisBox) -> Option<AxisBox> {
        let lo: Vector = self.lo.iter().zip(&other.lo).map(|(a, b)| a.max(b).clone()).collect();
        let hi: Vector = self.hi.iter().zip(&other.hi).map(|(a, b)| a.min(b).clone()).collect();
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            None
        } else {
            Some(AxisBox { lo, hi })
        }
    }

    pub fn corners(&self) -> PointSet {
        let d = self.dim();
        let pts = (0..1usize << d)
            .map(|mask| {
                Point::new(
                    (0..d).map(|i| if mask >> i & 1 == 1 { self.hi[i].clone() } else { self.lo[i].clone() }).collect(),
                )
            })
            .collect();
        PointSet::new(d, pts).expect("corner dimensions agree")
    }
}

/// JSON form: `{"dim", "variant", "basis", "sublattices", "a", "b"}` with rational
/// entries as `"p/q"` strings (integers accepted). A lattice without `basis` is `ℤ^dim`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SetSpecJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub variant: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sublattices: Option<Vec<Vec<Vector>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
}

impl TryFrom<SetSpecJson> for DiscreteSetSpec {
    type Error = Error;

    fn try_from(j: SetSpecJson) -> Result<Self> {
        let lattice = |basis: Option<Vec<Vector>>| -> Result<LatticeBasis> {
            let l = match basis {
                Some(b) => LatticeBasis::new(b)?,
                None => LatticeBasis::standard(
                    j.dim.ok_or_else(|| Error::InvalidInput("lattice needs `dim` or `basis`".into()))?,
                ),
            };
            if let Some(d) = j.dim {
                if d != l.dim() {
                    return Err(Error::DimensionMismatch { expected: d, found: l.dim() });
                }
            }
            Ok(l)
        };
        let spec = match j.variant.as_str() {
            "lattice" => DiscreteSetSpec::lattice(lattice(j.basis.clone())?),
            "difference" => {
                let l = lattice(j.basis.clone())?;
                let subs = j
                    .sublattices
                    .clone()
                    .unwrap_or_default()
                    .into_iter()
                    .map(LatticeBasis::new)
                    .collect::<Result<Vec<_>>>()?;
                DiscreteSetSpec::difference(l, subs)?
            }
            "mixed" => {
                let a = j.a.ok_or_else(|| Error::InvalidInput("mixed set needs `a`".into()))?;
                let b = j.b.ok_or_else(|| Error::InvalidInput("mixed set needs `b`".into()))?;
                let s = DiscreteSetSpec::mixed(a, b)?;
                if let Some(d) = j.dim {
                    if d != s.dim() {
                        return Err(Error::DimensionMismatch { expected: d, found: s.dim() });
                    }
                }
                s
            }
            other => return Err(Error::InvalidInput(format!("unknown set variant {other:?}"))),
        };
        Ok(spec)
    }
}

impl From<&DiscreteSetSpec> for SetSpecJson {
    fn from(s: &DiscreteSetSpec) -> Self {
        let mut j = SetSpecJson { dim: Some(s.dim), variant: String::new(), basis: None, sublattices: None, a: None, b: None };
        match &s.kind {
            SetKind::Lattice(l) => {
                j.variant = "lattice".into();
                j.basis = Some(l.vectors().to_vec());
            }
            SetKind::Difference { lattice, sublattices } => {
                j.variant = "difference".into();
                j.basis = Some(lattice.vectors().to_vec());
                j.sublattices = Some(sublattices.iter().map(|s| s.vectors().to_vec()).collect());
            }
            SetKind::Mixed { integer_dims, real_dims } => {
                j.variant = "mixed".into();
                j.a = Some(*integer_dims);
                j.b = Some(*real_dims);
            }
        }
        j
    }
}

impl Serialize for DiscreteSetSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SetSpecJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiscreteSetSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SetSpecJson::deserialize(d)?;
        DiscreteSetSpec::try_from(j).map_err(serde::de::Error::custom)
    }
}
