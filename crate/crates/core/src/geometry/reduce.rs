use crate::error::{Error, Result};
use crate::linalg::{self, Vector};
use crate::lp::{self, LpOutcome};
use crate::scalar::Scalar;

use super::{lifted_rows, lifted_target, membership, ConvexCombination, MembershipCertificate, Point, PointSet};

/// An affinely independent support `B ⊆ A` with `p ∈ conv(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// Indices into the input set, ascending.
    pub indices: Vec<usize>,
    /// Strictly positive weights over `indices` (indices refer to the input set).
    pub combination: ConvexCombination,
}

impl Reduction {
    pub fn subset(&self, set: &PointSet) -> PointSet {
        set.subset(&self.indices)
    }
}

/// Removes affine dependencies from a positive combination by moving along a
/// dependence vector until a weight hits zero. The result is affinely independent
/// with all weights strictly positive.
pub(crate) fn eliminate_dependencies(set: &PointSet, mut support: Vec<(usize, Scalar)>) -> Vec<(usize, Scalar)> {
    support.retain(|(_, c)| c.is_positive());
    support.sort_by_key(|(i, _)| *i);
    loop {
        let idx: Vec<usize> = support.iter().map(|(i, _)| *i).collect();
        let rows = lifted_rows(set, &idx);
        let null = linalg::nullspace(&rows, idx.len());
        let Some(mut mu) = null.into_iter().next() else {
            return support;
        };
        // Lifted dependence weights sum to zero, so some entry has each sign.
        if !mu.iter().any(Scalar::is_positive) {
            mu = mu.iter().map(|x| -x).collect();
        }
        let mut theta: Option<Scalar> = None;
        for ((_, c), m) in support.iter().zip(&mu) {
            if m.is_positive() {
                let r = c / m;
                if theta.as_ref().is_none_or(|t| r < *t) {
                    theta = Some(r);
                }
            }
        }
        let theta = theta.expect("dependence vector has a positive entry");
        let next: Vec<(usize, Scalar)> = support
            .into_iter()
            .zip(&mu)
            .map(|((i, c), m)| (i, &c - &(&theta * m)))
            .filter(|(_, c)| c.is_positive())
            .collect();
        support = next;
    }
}

/// Carathéodory reduction: at most `d+1` affinely independent points of `A`
/// whose hull contains `p`.
pub fn caratheodory_reduce(p: &Point, set: &PointSet) -> Result<Reduction> {
    set.check_point(p)?;
    if let Some(i) = set.position(p) {
        return Ok(Reduction { indices: vec![i], combination: ConvexCombination { support: vec![(i, Scalar::one())] } });
    }
    let MembershipCertificate::Inside(comb) = membership(p, set)? else {
        return Err(Error::NotInHull);
    };
    let support = eliminate_dependencies(set, comb.support);
    let combination = ConvexCombination { support };
    debug_assert!(combination.verify(p, set));
    Ok(Reduction { indices: combination.indices(), combination })
}

/// Result of [`anchored_reduce`]: `y = anchor_weight·q + Σ w_i a_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnchoredReduction {
    /// Indices into the input set, ascending.
    pub indices: Vec<usize>,
    /// Weights on the set points; together with `anchor_weight` they sum to one.
    pub weights: Vec<(usize, Scalar)>,
    pub anchor_weight: Scalar,
    /// Set when more than `d` set points were needed.
    pub fallback: bool,
}

impl AnchoredReduction {
    pub fn verify(&self, y: &Point, q: &Point, set: &PointSet) -> bool {
        let mut sum = self.anchor_weight.clone();
        let mut acc = linalg::scale(q.coords(), &self.anchor_weight);
        if self.anchor_weight.is_negative() {
            return false;
        }
        for (i, w) in &self.weights {
            if w.is_negative() || *i >= set.len() {
                return false;
            }
            sum += w;
            acc = linalg::add(&acc, &linalg::scale(set.get(*i).coords(), w));
        }
        sum == Scalar::one() && acc == y.coords()
    }
}

/// Picks `B ⊆ A` with `y ∈ conv(B ∪ {q})`, aiming for `|B| ≤ d`.
///
/// Solves the LP maximizing the anchor weight `μ` in `y = μ q + Σ λ_a a`.
/// At the optimum the point `z = (y − μ q)/(1 − μ)` sits on the relative
/// boundary of `conv(A)` (or `q` lies off `aff(A)`), so a Carathéodory
/// reduction of `z` needs at most `d` points.
pub fn anchored_reduce(y: &Point, q: &Point, set: &PointSet) -> Result<AnchoredReduction> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    set.check_point(y)?;
    set.check_point(q)?;
    let d = set.dim();
    if let Some(i) = set.position(y) {
        return Ok(AnchoredReduction {
            indices: vec![i],
            weights: vec![(i, Scalar::one())],
            anchor_weight: Scalar::zero(),
            fallback: false,
        });
    }

    let n = set.len();
    let all: Vec<usize> = (0..n).collect();
    let mut rows = lifted_rows(set, &all);
    for (r, x) in rows.iter_mut().zip(lifted_target(q)) {
        r.push(x);
    }
    let mut cost: Vector = vec![Scalar::zero(); n];
    cost.push(-Scalar::one());
    let x = match lp::minimize(&rows, &lifted_target(y), &cost) {
        LpOutcome::Optimal { x, .. } => x,
        LpOutcome::Infeasible { .. } => return Err(Error::NotInHull),
        LpOutcome::Unbounded => unreachable!("anchor weight is bounded by one"),
    };
    let mu = x[n].clone();
    if mu == Scalar::one() {
        return Ok(AnchoredReduction { indices: vec![], weights: vec![], anchor_weight: mu, fallback: false });
    }
    let rest = Scalar::one() - &mu;
    let z_support: Vec<(usize, Scalar)> =
        x[..n].iter().enumerate().filter(|(_, c)| c.is_positive()).map(|(i, c)| (i, c / &rest)).collect();
    let reduced = eliminate_dependencies(set, z_support);
    let weights: Vec<(usize, Scalar)> = reduced.into_iter().map(|(i, c)| (i, &c * &rest)).collect();
    let result = AnchoredReduction {
        indices: weights.iter().map(|(i, _)| *i).collect(),
        fallback: weights.len() > d,
        weights,
        anchor_weight: mu,
    };
    if !result.verify(y, q, set) {
        return Err(Error::VerificationFailure(format!("anchored reduction of {y} failed to verify")));
    }
    Ok(result)
}
