//! Covering a polytope `conv(P) ⊆ conv(A)` by the hull of few points of `A`.

use crate::error::{Error, Result};
use crate::geometry::{anchored_reduce, caratheodory_reduce, centroid, extreme_points, in_hull, Point, PointSet};

/// `B ⊆ A` (as ascending indices into `A`) with `P ⊆ conv(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub indices: Vec<usize>,
    /// Set when the cover did not come from the first (centroid-anchored)
    /// construction or exceeds `n·d` points.
    pub fallback: bool,
}

fn sorted_extremes(p: &PointSet) -> Result<Vec<Point>> {
    let mut ext = extreme_points(p)?.points().to_vec();
    ext.sort();
    Ok(ext)
}

fn covers(ext: &[Point], a: &PointSet, indices: &[usize]) -> Result<bool> {
    if indices.is_empty() {
        return Ok(false);
    }
    let b = a.subset(indices);
    for y in ext {
        if !in_hull(y, &b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn anchored_union(ext: &[Point], anchor: &Point, a: &PointSet) -> Result<(Vec<usize>, bool)> {
    let mut indices = Vec::new();
    let mut fallback = false;
    for y in ext {
        let r = anchored_reduce(y, anchor, a)?;
        fallback |= r.fallback;
        indices.extend(r.indices);
    }
    indices.sort_unstable();
    indices.dedup();
    Ok((indices, fallback))
}

/// Tries covers in a fixed order: anchored at the centroid of the vertices of
/// `conv(P)`, then anchored at each vertex in turn, then the union of plain
/// Carathéodory supports. Returns the first cover that verifies and that
/// `accept` approves.
pub(crate) fn first_cover(
    p: &PointSet,
    a: &PointSet,
    mut accept: impl FnMut(&Cover) -> Result<bool>,
) -> Result<Option<Cover>> {
    let ext = sorted_extremes(p)?;
    for y in &ext {
        if !in_hull(y, a)? {
            return Err(Error::NotInHull);
        }
    }
    if ext.len() == 1 {
        let r = caratheodory_reduce(&ext[0], a)?;
        let c = Cover { indices: r.indices, fallback: false };
        return Ok(accept(&c)?.then_some(c));
    }
    let budget = ext.len() * a.dim();
    let mut tried: Vec<Vec<usize>> = Vec::new();
    let mut consider = |indices: Vec<usize>, fallback: bool, tried: &mut Vec<Vec<usize>>| -> Result<Option<Cover>> {
        if tried.contains(&indices) || !covers(&ext, a, &indices)? {
            return Ok(None);
        }
        tried.push(indices.clone());
        let c = Cover { fallback: fallback || indices.len() > budget, indices };
        Ok(accept(&c)?.then_some(c))
    };

    let anchors = std::iter::once((centroid(&PointSet::from_points(ext.clone())?)?, true))
        .chain(ext.iter().map(|y| (y.clone(), false)));
    for (anchor, primary) in anchors {
        let (indices, fb) = anchored_union(&ext, &anchor, a)?;
        if let Some(c) = consider(indices, !primary || fb, &mut tried)? {
            return Ok(Some(c));
        }
    }
    let mut indices = Vec::new();
    for y in &ext {
        indices.extend(caratheodory_reduce(y, a)?.indices);
    }
    indices.sort_unstable();
    indices.dedup();
    consider(indices, true, &mut tried)
}

/// `B ⊆ A` with `P ⊆ conv(B)`, aiming for at most `n·d` points where `n` is the
/// number of vertices of `conv(P)`.
///
/// For each vertex `y` of `conv(P)`, at most `d` points of `A` are chosen with
/// `y ∈ conv(B_y ∪ {c})`, `c` being the centroid of the vertices. No hyperplane
/// through `c` can then separate `c` from `⋃ B_y`, because `c` is in the
/// relative interior of `conv(P)`; hence `c ∈ conv(⋃ B_y)` and with it all of
/// `P`. The result is checked by exact membership regardless.
pub fn colorful_cover(p: &PointSet, a: &PointSet) -> Result<Cover> {
    if p.is_empty() || a.is_empty() {
        return Err(Error::EmptySet);
    }
    if p.dim() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: p.dim() });
    }
    first_cover(p, a, |_| Ok(true))?.ok_or_else(|| Error::VerificationFailure("no cover candidate verified".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(rows: &[&[i64]]) -> PointSet {
        PointSet::from_ints(rows).unwrap()
    }

    #[test]
    fn subset_of_a_is_covered_by_itself() {
        let a = set(&[&[0, 0], &[4, 0], &[0, 4], &[1, 1], &[2, 1]]);
        let p = set(&[&[1, 1], &[2, 1]]);
        let c = colorful_cover(&p, &a).unwrap();
        assert!(!c.fallback);
        assert!(c.indices.len() <= 4);
        let b = a.subset(&c.indices);
        assert!(p.iter().all(|x| in_hull(x, &b).unwrap()));
    }

    #[test]
    fn segment_inside_rectangle() {
        let a = set(&[&[-1, -1], &[-1, 1], &[2, -1], &[2, 1]]);
        let p = set(&[&[0, 0], &[1, 0]]);
        let c = colorful_cover(&p, &a).unwrap();
        assert!(c.indices.len() <= 4);
        let b = a.subset(&c.indices);
        assert!(p.iter().all(|x| in_hull(x, &b).unwrap()));
    }

    #[test]
    fn single_point_uses_caratheodory() {
        let a = set(&[&[-1, -1], &[-1, 1], &[1, -1], &[1, 1]]);
        let c = colorful_cover(&set(&[&[0, 0]]), &a).unwrap();
        assert!(c.indices.len() <= 3);
        assert!(!c.fallback);
    }

    #[test]
    fn uncovered_input_is_rejected() {
        let a = set(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(colorful_cover(&set(&[&[0, 0], &[2, 2]]), &a).unwrap_err(), Error::NotInHull);
    }

    #[test]
    fn triangle_of_witnesses_in_a_big_polygon() {
        let a = set(&[&[-5, -5], &[5, -5], &[5, 5], &[-5, 5], &[0, 7], &[7, 0], &[-7, 0], &[0, -7]]);
        let p = set(&[&[0, 0], &[1, 0], &[0, 1]]);
        let c = colorful_cover(&p, &a).unwrap();
        assert!(c.indices.len() <= 6);
        let b = a.subset(&c.indices);
        assert!(p.iter().all(|x| in_hull(x, &b).unwrap()));
    }
}
