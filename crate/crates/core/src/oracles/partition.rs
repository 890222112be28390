use serde::{Deserialize, Serialize};

use crate::engine::{Instance, PartitionResult};
use crate::error::{Error, Result};
use crate::geometry::{in_hull, Point, PointSet};
use crate::sets::{AxisBox, DiscreteSetSpec};

use super::OracleReport;

/// A partition (blocks of indices) and the points of `S` common to all hulls.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TverbergWitness {
    pub parts: Vec<Vec<usize>>,
    pub common: Vec<Point>,
}

/// Stirling number of the second kind `S(n, m)`, saturating.
pub fn set_partition_count(n: usize, m: usize) -> u128 {
    let mut row = vec![0u128; m + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=m.min(i)).rev() {
            row[j] = row[j - 1].saturating_add((j as u128).saturating_mul(row[j]));
        }
        row[0] = 0;
    }
    row[m]
}

/// Restricted-growth strings `a` over `0..m` (`a[0] = 0`, each entry at most
/// one more than the maximum before it) using every label, in lexicographic
/// order. Each string is one unordered partition into `m` nonempty blocks.
struct GrowthStrings {
    a: Vec<usize>,
    m: usize,
    started: bool,
    done: bool,
}

impl GrowthStrings {
    fn new(n: usize, m: usize) -> Self {
        // First string: 0…0 1 2 … m−1.
        let a = (0..n).map(|i| (i + m).saturating_sub(n)).collect();
        GrowthStrings { a, m, started: false, done: m == 0 || m > n }
    }

    fn advance(&mut self) -> bool {
        let n = self.a.len();
        let mut prefix_max = vec![0usize; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(self.a[i - 1]);
        }
        for i in (1..n).rev() {
            let cap = (prefix_max[i] + 1).min(self.m - 1);
            if self.a[i] < cap {
                self.a[i] += 1;
                // Fill the tail with the smallest labels that still reach m blocks.
                let mut cur = prefix_max[i].max(self.a[i]);
                for j in i + 1..n {
                    let left = n - j;
                    let needed = self.m - 1 - cur;
                    self.a[j] = if needed >= left { cur + 1 } else { 0 };
                    cur = cur.max(self.a[j]);
                }
                if cur + 1 == self.m {
                    return true;
                }
                return self.advance();
            }
        }
        false
    }
}

impl Iterator for GrowthStrings {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.started {
            if !self.advance() {
                self.done = true;
                return None;
            }
        } else {
            self.started = true;
        }
        Some(self.a.clone())
    }
}

/// The first partition of `A` into `m` nonempty blocks, in restricted-growth
/// order, whose hulls share at least `k` points of `S`.
///
/// Common points are searched among the points of `S` in the intersection of
/// the blocks' bounding boxes, each tested against every block hull.
pub fn brute_tverberg(
    a: &PointSet,
    s: &DiscreteSetSpec,
    m: usize,
    k: usize,
    cap: u128,
) -> Result<OracleReport<Option<TverbergWitness>>> {
    if a.dim() != s.dim() {
        return Err(Error::DimensionMismatch { expected: s.dim(), found: a.dim() });
    }
    let n = a.len();
    let total = set_partition_count(n, m);
    if total > cap {
        return Err(Error::CapExceeded { what: "set partitions", size: total, cap });
    }
    if n == 0 {
        return Ok(OracleReport { verdict: None, searched: 0 });
    }
    let candidates = s.enumerate_in_box(&AxisBox::bounding(a)?)?;
    let mut searched = 0u128;
    for labels in GrowthStrings::new(n, m) {
        searched += 1;
        let mut blocks = vec![Vec::new(); m];
        for (i, &l) in labels.iter().enumerate() {
            blocks[l].push(i);
        }
        let sets: Vec<PointSet> = blocks.iter().map(|b| a.subset(b)).collect();
        let mut bx = Some(AxisBox::bounding(&sets[0])?);
        for set in &sets[1..] {
            bx = bx.and_then(|b| b.intersect(&AxisBox::bounding(set).ok()?));
        }
        let Some(bx) = bx else { continue };
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| sets[i].len());
        let mut common = Vec::new();
        for c in candidates.iter().filter(|c| bx.contains(c)) {
            let mut all = true;
            for &i in &order {
                if !in_hull(c, &sets[i])? {
                    all = false;
                    break;
                }
            }
            if all {
                common.push(c.clone());
            }
        }
        if common.len() >= k {
            return Ok(OracleReport { verdict: Some(TverbergWitness { parts: blocks, common }), searched });
        }
    }
    Ok(OracleReport { verdict: None, searched })
}

/// Why a claimed partition is wrong.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[serde(tag = "defect", rename_all = "snake_case")]
pub enum PartitionDefect {
    #[error("expected {expected} parts, found {found}")]
    WrongPartCount { expected: usize, found: usize },
    #[error("part {part} is empty")]
    EmptyPart { part: usize },
    #[error("index {index} is out of range")]
    IndexOutOfRange { index: usize },
    #[error("point {index} appears more than once")]
    Overlap { index: usize },
    #[error("point {index} is in no part")]
    Uncovered { index: usize },
    #[error("{found} witnesses, at least {needed} required")]
    TooFewWitnesses { needed: usize, found: usize },
    #[error("witness {witness} is repeated")]
    DuplicateWitness { witness: usize },
    #[error("witness {witness} is not in the discrete set")]
    WitnessNotInSet { witness: usize },
    #[error("witness {witness} is not in the hull of part {part}")]
    WitnessNotInHull { part: usize, witness: usize },
}

/// Rechecks a partition from scratch, ignoring its certificates.
pub fn verify_partition(result: &PartitionResult, inst: &Instance) -> Result<(), PartitionDefect> {
    let a = inst.points();
    if result.parts.len() != inst.m() {
        return Err(PartitionDefect::WrongPartCount { expected: inst.m(), found: result.parts.len() });
    }
    let mut seen = vec![false; a.len()];
    for (pi, part) in result.parts.iter().enumerate() {
        if part.is_empty() {
            return Err(PartitionDefect::EmptyPart { part: pi });
        }
        for &i in part {
            if i >= a.len() {
                return Err(PartitionDefect::IndexOutOfRange { index: i });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(PartitionDefect::Overlap { index: i });
            }
        }
    }
    if let Some(index) = seen.iter().position(|s| !s) {
        return Err(PartitionDefect::Uncovered { index });
    }
    if result.witnesses.len() < inst.k() {
        return Err(PartitionDefect::TooFewWitnesses { needed: inst.k(), found: result.witnesses.len() });
    }
    for (wi, w) in result.witnesses.iter().enumerate() {
        if result.witnesses[..wi].contains(w) {
            return Err(PartitionDefect::DuplicateWitness { witness: wi });
        }
        if !inst.set().contains(w).unwrap_or(false) {
            return Err(PartitionDefect::WitnessNotInSet { witness: wi });
        }
    }
    for (pi, part) in result.parts.iter().enumerate() {
        let set = a.subset(part);
        for (wi, w) in result.witnesses.iter().enumerate() {
            if !in_hull(w, &set).unwrap_or(false) {
                return Err(PartitionDefect::WitnessNotInHull { part: pi, witness: wi });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::tverberg_partition;
    use crate::scalar::Scalar;

    #[test]
    fn stirling_numbers() {
        assert_eq!(set_partition_count(4, 2), 7);
        assert_eq!(set_partition_count(9, 2), 255);
        assert_eq!(set_partition_count(10, 3), 9330);
        assert_eq!(set_partition_count(3, 5), 0);
        assert_eq!(set_partition_count(0, 0), 1);
    }

    #[test]
    fn growth_strings_enumerate_each_partition_once() {
        for n in 1..8 {
            for m in 1..=n {
                let all: Vec<_> = GrowthStrings::new(n, m).collect();
                assert_eq!(all.len() as u128, set_partition_count(n, m), "n={n} m={m}");
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                assert!(all.iter().all(|a| a[0] == 0 && *a.iter().max().unwrap() == m - 1));
            }
        }
    }

    #[test]
    fn square_has_no_lattice_radon_point() {
        let a = PointSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let r = brute_tverberg(&a, &DiscreteSetSpec::integer_lattice(2), 2, 1, 1_000_000).unwrap();
        assert_eq!(r.verdict, None);
        assert_eq!(r.searched, 7);
    }

    #[test]
    fn three_integers() {
        let a = PointSet::from_ints(&[&[0], &[1], &[2]]).unwrap();
        let r = brute_tverberg(&a, &DiscreteSetSpec::integer_lattice(1), 2, 1, 1_000_000).unwrap();
        let w = r.verdict.unwrap();
        assert_eq!(w.parts, vec![vec![0, 2], vec![1]]);
        assert_eq!(w.common, vec![Point::from_ints(&[1])]);
    }

    #[test]
    fn cap_is_enforced() {
        let a = PointSet::from_points((0..12).map(|i| Point::from_ints(&[i])).collect()).unwrap();
        let r = brute_tverberg(&a, &DiscreteSetSpec::integer_lattice(1), 4, 1, 1_000);
        assert!(matches!(r, Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn verification_catches_tampering() {
        let pts = PointSet::from_ints(&[&[0, 0], &[4, 0], &[0, 4], &[4, 4], &[2, 2], &[1, 3], &[3, 1]]).unwrap();
        let inst = Instance::new(DiscreteSetSpec::integer_lattice(2), pts, 2, 1).unwrap();
        let good = tverberg_partition(&inst).unwrap().found().unwrap().clone();
        assert_eq!(verify_partition(&good, &inst), Ok(()));

        let mut off = good.clone();
        off.witnesses[0] = Point::new(vec![Scalar::new(1, 2), Scalar::from_int(2)]);
        assert_eq!(verify_partition(&off, &inst), Err(PartitionDefect::WitnessNotInSet { witness: 0 }));

        let mut dup = good.clone();
        let moved = dup.parts[0][0];
        dup.parts[1].push(moved);
        assert_eq!(verify_partition(&dup, &inst), Err(PartitionDefect::Overlap { index: moved }));

        let mut merged = good;
        let last = merged.parts.pop().unwrap();
        merged.parts[0].extend(last);
        assert!(matches!(verify_partition(&merged, &inst), Err(PartitionDefect::WrongPartCount { .. })));
    }
}
