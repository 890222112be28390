//! Exact half-space (Tukey) depth.
//!
//! Writing `u_a = a − p`, the depth of `p` is the minimum over nonzero
//! directions `w` of `#{a : w·u_a ≥ 0}`. The count is constant on the open
//! cells of the central arrangement `{w : w·u_a = 0}` and every cell has a ray
//! of the arrangement in its closure, so it suffices to visit each ray `v` and
//! minimize over perturbations `v + εw`. Vectors strictly positive on `v` are
//! counted; the vectors orthogonal to `v` form a lower-dimensional instance of
//! the same problem, solved recursively. This resolves every degenerate
//! configuration exactly.

use std::collections::HashSet;

use itertools::Itertools;

use crate::error::Result;
use crate::linalg::{self, dot, Vector};
use crate::scalar::Scalar;

use super::{distinct_indices, Halfspace, Point, PointSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthResult {
    pub depth: usize,
    /// Closed half-space containing the query point with exactly `depth` points
    /// of the (deduplicated) reference set.
    pub witness: Halfspace,
}

/// Rays of the arrangement `{w : w·u = 0}` inside `span(vectors)`, both orientations.
fn arrangement_rays(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    let perp = linalg::nullspace(vectors, dim);
    let span_dim = dim - perp.len();
    let mut seen = HashSet::new();
    let mut rays = Vec::new();
    for combo in (0..vectors.len()).combinations(span_dim - 1) {
        let mut rows: Vec<Vector> = combo.iter().map(|&i| vectors[i].clone()).collect();
        rows.extend(perp.iter().cloned());
        let ns = linalg::nullspace(&rows, dim);
        if ns.len() != 1 {
            continue;
        }
        let v = linalg::primitive(&ns[0]);
        let neg: Vector = v.iter().map(|x| -x).collect();
        for r in [v, neg] {
            if seen.insert(r.clone()) {
                rays.push(r);
            }
        }
    }
    rays
}

/// Minimum over nonzero `w` of `#{u : w·u ≥ 0}`, with a direction attaining it
/// when requested. `None` as witness means every direction attains the value
/// (only when `vectors` is empty).
fn origin_depth(vectors: &[Vector], dim: usize, want_witness: bool) -> (usize, Option<Vector>) {
    if vectors.is_empty() {
        return (0, None);
    }
    let mut best = usize::MAX;
    let mut best_dirs: Vec<Vector> = Vec::new();
    for v in arrangement_rays(vectors, dim) {
        let mut positive = 0;
        let mut on_boundary = Vec::new();
        let mut signs = Vec::with_capacity(vectors.len());
        for u in vectors {
            let s = dot(&v, u);
            match s.signum() {
                1 => positive += 1,
                0 => on_boundary.push(u.clone()),
                _ => {}
            }
            signs.push(s);
        }
        if positive > best {
            continue;
        }
        let (inner, inner_dir) = origin_depth(&on_boundary, dim, want_witness);
        let total = positive + inner;
        if total > best {
            continue;
        }
        if total < best {
            best = total;
            best_dirs.clear();
        }
        if want_witness {
            best_dirs.push(perturb(&v, inner_dir.as_deref(), vectors, &signs));
        } else if best == 0 {
            break;
        }
    }
    let witness = best_dirs.into_iter().min();
    (best, witness)
}

/// `v + εw` with `ε` small enough that every `u` with `v·u ≠ 0` keeps its sign.
fn perturb(v: &[Scalar], w: Option<&[Scalar]>, vectors: &[Vector], v_dots: &[Scalar]) -> Vector {
    let Some(w) = w else {
        return v.to_vec();
    };
    let mut eps = Scalar::one();
    for (u, vu) in vectors.iter().zip(v_dots) {
        if vu.is_zero() {
            continue;
        }
        let wu = dot(w, u);
        if wu.is_zero() {
            continue;
        }
        let limit = vu.abs() / wu.abs();
        if limit <= eps {
            eps = limit;
        }
    }
    let eps = eps / Scalar::from_int(2);
    linalg::primitive(&linalg::add(v, &linalg::scale(w, &eps)))
}

fn offsets(p: &Point, set: &PointSet) -> (usize, Vec<Vector>) {
    let mut at_p = 0;
    let mut vectors = Vec::new();
    for i in distinct_indices(set) {
        let a = set.get(i);
        if a == p {
            at_p += 1;
        } else {
            vectors.push(linalg::sub(a.coords(), p.coords()));
        }
    }
    (at_p, vectors)
}

/// Depth of `p` with respect to `A` (duplicates collapsed), without a witness.
pub fn depth_value(p: &Point, set: &PointSet) -> Result<usize> {
    set.check_point(p)?;
    let (at_p, vectors) = offsets(p, set);
    Ok(at_p + origin_depth(&vectors, set.dim(), false).0)
}

/// Depth of `p` with respect to `A` and a half-space attaining it. Among the
/// minimizing half-spaces found, the lexicographically smallest primitive
/// normal is reported.
pub fn depth(p: &Point, set: &PointSet) -> Result<DepthResult> {
    set.check_point(p)?;
    let d = set.dim();
    let (at_p, vectors) = offsets(p, set);
    let (value, dir) = origin_depth(&vectors, d, true);
    let normal = dir.unwrap_or_else(|| {
        let mut e = vec![Scalar::zero(); d];
        e[0] = Scalar::one();
        e
    });
    let witness = Halfspace::through(normal, p);
    let depth = at_p + value;
    let distinct = set.subset(&distinct_indices(set));
    debug_assert_eq!(witness.count(&distinct), depth);
    Ok(DepthResult { depth, witness })
}

/// Cheap upper bound on the depth: the smallest count among the `2d`
/// axis-aligned closed half-spaces through `p`.
pub fn axis_depth_bound(p: &Point, set: &PointSet) -> usize {
    let mut best = usize::MAX;
    for i in 0..p.dim() {
        let pi = &p.coords()[i];
        let (mut ge, mut le) = (0, 0);
        for a in set {
            let ai = &a.coords()[i];
            if ai >= pi {
                ge += 1;
            }
            if ai <= pi {
                le += 1;
            }
        }
        best = best.min(ge).min(le);
    }
    best
}
