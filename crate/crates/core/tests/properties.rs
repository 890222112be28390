use proptest::prelude::*;

use qtverberg::engine::{tverberg_partition, Instance, PartitionOutcome};
use qtverberg::geometry::{
    anchored_reduce, caratheodory_reduce, depth, depth_value, in_hull, membership, MembershipCertificate, Point,
    PointSet,
};
use qtverberg::oracles::{brute_depth, verify_partition};
use qtverberg::sets::{
    helly_upper_bound, is_k_hoffman, is_k_hollow, tverberg_upper_bound, AxisBox, BoundMode, DiscreteSetSpec,
    LatticeBasis, PolytopeV,
};

fn point(d: usize, r: i64) -> impl Strategy<Value = Point> {
    prop::collection::vec(-r..=r, d).prop_map(|c| Point::from_ints(&c))
}

fn cloud(d: usize, n: std::ops::RangeInclusive<usize>, r: i64) -> impl Strategy<Value = Vec<Point>> {
    prop::collection::vec(point(d, r), n)
}

/// Dimension, a point cloud and a query point.
fn scene(max_n: usize) -> impl Strategy<Value = (PointSet, Point)> {
    (1usize..=3).prop_flat_map(move |d| {
        (cloud(d, 1..=max_n, 3), point(d, 3)).prop_map(|(a, p)| (PointSet::from_points(a).unwrap(), p))
    })
}

fn distinct(points: Vec<Point>) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    for p in points {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_certificates_verify((a, p) in scene(9)) {
        let cert = membership(&p, &a).unwrap();
        prop_assert!(cert.verify(&p, &a));
        prop_assert_eq!(cert.is_inside(), in_hull(&p, &a).unwrap());
        if let MembershipCertificate::Outside(h) = cert {
            prop_assert!(a.iter().all(|x| h.contains(x)));
            prop_assert!(!h.contains(&p));
        }
    }

    #[test]
    fn depth_matches_brute_force((a, p) in scene(8)) {
        let exact = depth(&p, &a).unwrap();
        prop_assert_eq!(exact.depth, brute_depth(&p, &a, 14).unwrap().verdict);
        prop_assert!(exact.witness.contains(&p));
    }

    #[test]
    fn depth_is_zero_exactly_outside_the_hull((a, p) in scene(9)) {
        prop_assert_eq!(depth_value(&p, &a).unwrap() == 0, !in_hull(&p, &a).unwrap());
    }

    #[test]
    fn depth_is_monotone_under_insertion((a, p) in scene(8), extra in point(3, 3)) {
        let extra = Point::new(extra.coords()[..a.dim()].to_vec());
        let mut bigger = a.points().to_vec();
        bigger.push(extra);
        let bigger = PointSet::from_points(bigger).unwrap();
        prop_assert!(depth_value(&p, &bigger).unwrap() >= depth_value(&p, &a).unwrap());
    }

    #[test]
    fn caratheodory_support_is_small((a, p) in scene(10)) {
        prop_assume!(in_hull(&p, &a).unwrap());
        let r = caratheodory_reduce(&p, &a).unwrap();
        prop_assert!(r.indices.len() <= a.dim() + 1);
        prop_assert!(r.combination.verify(&p, &a));
        prop_assert!(r.combination.support.iter().all(|(_, w)| w.is_positive()));
    }

    #[test]
    fn anchored_support_has_at_most_d_points((a, q) in scene(9), pick in any::<prop::sample::Index>()) {
        prop_assume!(a.len() >= 2);
        // A midpoint between q and a set point lies in conv(A ∪ {q}).
        let target = a.get(pick.index(a.len()));
        let y = Point::new(
            q.coords().iter().zip(target.coords()).map(|(x, t)| (x + t) / qtverberg::Scalar::from_int(2)).collect(),
        );
        let r = anchored_reduce(&y, &q, &a).unwrap();
        prop_assert!(r.verify(&y, &q, &a));
        prop_assert!(r.indices.len() <= a.dim());
        prop_assert!(!r.fallback);
    }

    #[test]
    fn partitions_are_sound_and_deterministic(
        pts in (1usize..=2).prop_flat_map(|d| cloud(d, 2..=9, 4)),
        m in 1usize..=3,
        k in 1usize..=2,
    ) {
        let pts = distinct(pts);
        let d = pts[0].dim();
        let inst = Instance::new(DiscreteSetSpec::integer_lattice(d), PointSet::from_points(pts).unwrap(), m, k).unwrap();
        let first = tverberg_partition(&inst).unwrap();
        prop_assert_eq!(&first, &tverberg_partition(&inst).unwrap());
        if let PartitionOutcome::Found(r) = first {
            prop_assert!(verify_partition(&r, &inst).is_ok());
            prop_assert_eq!(r.parts.len(), m);
            prop_assert!(r.witnesses.len() >= k);
            prop_assert!(r.min_witness_depth().is_some_and(|x| x >= inst.threshold()));
        }
    }

    #[test]
    fn enumeration_agrees_with_membership(
        verts in cloud(2, 1..=5, 4),
        basis in prop::sample::select(vec![
            vec![vec![1i64, 0], vec![0, 1]],
            vec![vec![2, 0], vec![0, 2]],
            vec![vec![1, 1], vec![1, -1]],
            vec![vec![1, 2]],
        ]),
    ) {
        let rows: Vec<&[i64]> = basis.iter().map(Vec::as_slice).collect();
        let s = DiscreteSetSpec::lattice(LatticeBasis::from_ints(&rows).unwrap());
        let poly = PolytopeV::new(PointSet::from_points(verts).unwrap()).unwrap();
        let found = s.enumerate_in_polytope(&poly).unwrap();
        let mut expected = Vec::new();
        for x in -4..=4 {
            for y in -4..=4 {
                let p = Point::from_ints(&[x, y]);
                if s.contains(&p).unwrap() && poly.contains(&p).unwrap() {
                    expected.push(p);
                }
            }
        }
        let mut sorted = found.clone();
        sorted.sort();
        expected.sort();
        prop_assert_eq!(sorted, expected);
    }

    #[test]
    fn hollow_sets_are_hoffman(pts in cloud(2, 2..=6, 2), k in 1usize..=2) {
        let pts = distinct(pts);
        prop_assume!(pts.len() >= 2);
        let p = PointSet::from_points(pts).unwrap();
        let s = DiscreteSetSpec::integer_lattice(2);
        if is_k_hollow(&p, &s, k).unwrap() {
            prop_assert!(is_k_hoffman(&p, &s, k).unwrap());
        }
    }

    #[test]
    fn best_bounds_never_exceed_paper_bounds(d in 1usize..=4, m in 1usize..=5, k in 1usize..=4) {
        let s = DiscreteSetSpec::integer_lattice(d);
        prop_assert!(helly_upper_bound(&s, k, BoundMode::Best).unwrap() <= helly_upper_bound(&s, k, BoundMode::Paper).unwrap());
        prop_assert!(
            tverberg_upper_bound(&s, m, k, BoundMode::Best).unwrap()
                <= tverberg_upper_bound(&s, m, k, BoundMode::Paper).unwrap()
        );
    }
}

#[test]
fn box_enumeration_counts_lattice_points() {
    let s = DiscreteSetSpec::integer_lattice(3);
    let bx = AxisBox::symmetric(3, 2).unwrap();
    assert_eq!(s.enumerate_in_box(&bx).unwrap().len(), 125);
}
