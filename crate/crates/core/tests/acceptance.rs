//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::BTreeSet;

use qtverberg::engine::{tverberg_partition, Instance, PartitionOutcome};
use qtverberg::geometry::{depth, depth_value, membership, Point, PointSet};
use qtverberg::harness::{run_experiment, trial_rng, uniform_below, ExperimentConfig, ExperimentReport};
use qtverberg::io::ResultFile;
use qtverberg::oracles::{
    brute_depth, brute_helly_check, brute_hoffman_max, brute_tverberg, hoffman_family, verify_partition, OracleCaps,
};
use qtverberg::sets::{
    helly_upper_bound, hollow_search, is_k_hoffman, is_k_hollow, tverberg_upper_bound, AxisBox, BoundMode,
    DiscreteSetSpec, LatticeBasis, SearchMode,
};
use rand_core::RngCore;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn z(d: usize) -> DiscreteSetSpec {
    DiscreteSetSpec::integer_lattice(d)
}

fn odd_integers() -> DiscreteSetSpec {
    DiscreteSetSpec::difference(LatticeBasis::standard(1), vec![LatticeBasis::from_ints(&[&[2]]).unwrap()]).unwrap()
}

fn experiment(m: usize, k: usize, n_points: usize, bound: i64, trials: usize, seed: u64, oracle: bool) -> ExperimentReport {
    let config = ExperimentConfig {
        set: z(2),
        m,
        k,
        n_points,
        box_bound: bound,
        sample_box: None,
        trials,
        seed,
        oracle_validate: oracle,
        caps: OracleCaps::default(),
        bound_mode: BoundMode::Paper,
    };
    run_experiment(&config).expect("valid config")
}

fn regenerate(m: usize, k: usize, n_points: usize, bound: i64, seed: u64, trial: usize) -> Instance {
    let config = ExperimentConfig {
        set: z(2),
        m,
        k,
        n_points,
        box_bound: bound,
        sample_box: None,
        trials: 1,
        seed,
        oracle_validate: false,
        caps: OracleCaps::default(),
        bound_mode: BoundMode::Paper,
    };
    qtverberg::harness::generate_instance(&config, trial).unwrap()
}

fn all_ok(report: &ExperimentReport) -> Result<(), String> {
    let s = &report.summary;
    ensure(s.theorem_violations == 0, format!("{} theorem violations", s.theorem_violations))?;
    ensure(s.verification_failures == 0, format!("{} verification failures", s.verification_failures))?;
    if let Some(bad) = report.records.iter().find(|r| r.status != qtverberg::harness::TrialStatus::Ok) {
        return Err(format!("trial {} ended {:?}: {:?}", bad.trial, bad.status, bad.detail));
    }
    Ok(())
}

fn twenty_five_points_three_parts() -> Check {
    let report = experiment(3, 1, 25, 20, 500, 0x5eed_0001, false);
    all_ok(&report)?;
    Ok(format!(
        "500/500 partitioned and verified, min witness depth {:?}",
        report.summary.min_witness_depth
    ))
}

fn two_witnesses_26_points() -> Check {
    ensure(tverberg_upper_bound(&z(2), 2, 2, BoundMode::Paper) == Ok(26), "bound is not 26")?;
    let seed = 0x5eed_0002;
    let report = experiment(2, 2, 26, 15, 100, seed, false);
    all_ok(&report)?;
    for r in &report.records {
        let inst = regenerate(2, 2, 26, 15, seed, r.trial);
        let PartitionOutcome::Found(res) = tverberg_partition(&inst).map_err(|e| e.to_string())? else {
            return Err(format!("trial {} found nothing on rerun", r.trial));
        };
        let distinct: BTreeSet<&Point> = res.witnesses.iter().collect();
        ensure(distinct.len() >= 2, format!("trial {} has {} witnesses", r.trial, distinct.len()))?;
        for c in &res.certificates {
            let part: BTreeSet<usize> = res.parts[c.part].iter().copied().collect();
            let comb = qtverberg::geometry::ConvexCombination { support: c.support.clone() };
            ensure(
                c.support.iter().all(|(i, _)| part.contains(i)) && comb.verify(&res.witnesses[c.witness], inst.points()),
                format!("trial {} certificate ({}, {}) fails", r.trial, c.part, c.witness),
            )?;
        }
    }
    Ok("100/100 partitioned, each with >= 2 distinct certified lattice witnesses".into())
}

fn radon_nine_points() -> Check {
    ensure(tverberg_upper_bound(&z(2), 2, 1, BoundMode::Best) == Ok(9), "best-mode bound is not 9")?;
    let report = experiment(2, 1, 9, 10, 200, 0x5eed_0003, true);
    all_ok(&report)?;
    let oracle = report.summary.oracle.as_ref().ok_or("oracle summary missing")?;
    ensure(oracle.checked == 200 && oracle.agreed == 200, format!("oracle agreed on {}/{}", oracle.agreed, oracle.checked))?;
    ensure(oracle.oracle_found == 200, format!("oracle found partitions on {}/200", oracle.oracle_found))?;
    Ok("200/200 partitioned; brute force confirms a lattice Radon point on all 200".into())
}

fn unit_square_lower_bound() -> Check {
    let pts = PointSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
    let oracle = brute_tverberg(&pts, &z(2), 2, 1, 1_000_000).map_err(|e| e.to_string())?;
    ensure(oracle.verdict.is_none(), "oracle found a partition")?;
    ensure(oracle.searched == 7, format!("oracle searched {} bipartitions", oracle.searched))?;
    let inst = Instance::new(z(2), pts, 2, 1).unwrap();
    let out = tverberg_partition(&inst).map_err(|e| e.to_string())?;
    ensure(matches!(out, PartitionOutcome::NoPartitionFound { .. }), "engine claimed a partition")?;
    Ok("oracle: none of 7 bipartitions; engine: no partition found".into())
}

fn random_point(rng: &mut impl RngCore, d: usize, r: i64) -> Point {
    Point::from_ints(&(0..d).map(|_| uniform_below(rng, (2 * r + 1) as u64) as i64 - r).collect::<Vec<_>>())
}

fn depth_equivalence() -> Check {
    let mut rng = trial_rng(0x5eed_0005, 0);
    let mut positive = 0;
    for case in 0..1000 {
        let d = 1 + case % 3;
        let n = 1 + uniform_below(&mut rng, 12) as usize;
        let a = PointSet::from_points((0..n).map(|_| random_point(&mut rng, d, 3)).collect()).unwrap();
        let p = random_point(&mut rng, d, 2);
        let fast = depth_value(&p, &a).map_err(|e| e.to_string())?;
        let full = depth(&p, &a).map_err(|e| e.to_string())?;
        let brute = brute_depth(&p, &a, 14).map_err(|e| e.to_string())?.verdict;
        ensure(
            fast == brute && full.depth == brute,
            format!("case {case}: p={p}, A={:?}: exact {fast}/{} vs brute {brute}", a.points(), full.depth),
        )?;
        positive += usize::from(brute > 0);
    }
    Ok(format!("1000/1000 equal ({positive} with positive depth)"))
}

fn hollow_hoffman() -> Check {
    let boxes = |lo: &[i64], hi: &[i64]| AxisBox::from_ints(lo, hi).unwrap();
    let exhaustive = |s: &DiscreteSetSpec, b: &AxisBox, k| hollow_search(s, b, k, SearchMode::Exhaustive, 20);
    let sq = exhaustive(&z(2), &boxes(&[0, 0], &[1, 1]), 1).map_err(|e| e.to_string())?;
    ensure(sq.size() == 4, format!("[0,1]^2 max 1-hollow {}", sq.size()))?;
    for d in 1..=3 {
        let c = exhaustive(&z(d), &boxes(&vec![0; d], &vec![1; d]), 1).map_err(|e| e.to_string())?;
        ensure(c.size() == 1 << d, format!("{{0,1}}^{d} max 1-hollow {}", c.size()))?;
    }
    let even = DiscreteSetSpec::lattice(LatticeBasis::from_ints(&[&[2, 0], &[0, 2]]).unwrap());
    let cases: Vec<(&str, DiscreteSetSpec, AxisBox, usize)> = vec![
        ("Z [0,2]", z(1), boxes(&[0], &[2]), 1),
        ("Z [0,3]", z(1), boxes(&[0], &[3]), 1),
        ("Z [0,3]", z(1), boxes(&[0], &[3]), 2),
        ("Z [0,5]", z(1), boxes(&[0], &[5]), 3),
        ("Z2 [0,1]^2", z(2), boxes(&[0, 0], &[1, 1]), 1),
        ("Z2 [0,1]^2", z(2), boxes(&[0, 0], &[1, 1]), 2),
        ("Z2 [0,2]x[0,1]", z(2), boxes(&[0, 0], &[2, 1]), 1),
        ("Z2 [0,2]x[0,1]", z(2), boxes(&[0, 0], &[2, 1]), 2),
        ("Z2 [0,2]^2", z(2), boxes(&[0, 0], &[2, 2]), 1),
        ("Z2 [0,2]^2", z(2), boxes(&[0, 0], &[2, 2]), 2),
        ("Z3 [0,1]^3", z(3), boxes(&[0, 0, 0], &[1, 1, 1]), 1),
        ("odd [0,8]", odd_integers(), boxes(&[0], &[8]), 1),
        ("odd [-9,9]", odd_integers(), boxes(&[-9], &[9]), 2),
        ("2Z2 [0,4]^2", even, boxes(&[0, 0], &[4, 4]), 1),
    ];
    let mut lines = Vec::new();
    for (name, s, b, k) in &cases {
        let h = exhaustive(s, b, *k).map_err(|e| e.to_string())?;
        let hoff = brute_hoffman_max(s, b, *k, 18).map_err(|e| e.to_string())?.verdict;
        ensure(h.size() == hoff, format!("{name} k={k}: hollow {} vs Hoffman {hoff}", h.size()))?;
        if h.size() >= 2 {
            let p = PointSet::from_points(h.set.clone()).unwrap();
            ensure(is_k_hoffman(&p, s, *k) == Ok(true), format!("{name} k={k}: hollow set not Hoffman"))?;
        }
        lines.push(format!("{name} k={k}: {hoff}"));
    }
    // Every hollow subset of a few small boxes is Hoffman.
    let mut checked = 0;
    for (s, b, k) in [(z(2), boxes(&[0, 0], &[2, 1]), 1), (z(2), boxes(&[0, 0], &[2, 1]), 2), (z(1), boxes(&[0], &[4]), 2)] {
        let ground = s.enumerate_in_box(&b).unwrap();
        for mask in 1u32..(1 << ground.len()) {
            let p: Vec<Point> = (0..ground.len()).filter(|i| mask >> i & 1 == 1).map(|i| ground[i].clone()).collect();
            if p.len() < 2 {
                continue;
            }
            let p = PointSet::from_points(p).unwrap();
            if is_k_hollow(&p, &s, k).unwrap() {
                checked += 1;
                ensure(is_k_hoffman(&p, &s, k).unwrap(), format!("hollow {:?} is not Hoffman", p.points()))?;
            }
        }
    }
    Ok(format!("{}; {checked} hollow subsets all Hoffman", lines.join(", ")))
}

fn lattice_difference_bounds() -> Check {
    let odd = odd_integers();
    let b1 = helly_upper_bound(&odd, 1, BoundMode::Paper).map_err(|e| e.to_string())?;
    let b2 = helly_upper_bound(&odd, 2, BoundMode::Paper).map_err(|e| e.to_string())?;
    ensure(b1 == 5 && b2 == 9, format!("formula gave {b1} and {b2}"))?;
    let bx = AxisBox::from_ints(&[-9], &[9]).unwrap();
    let h1 = hollow_search(&odd, &bx, 1, SearchMode::Exhaustive, 20).map_err(|e| e.to_string())?.size();
    let h2 = hollow_search(&odd, &bx, 2, SearchMode::Exhaustive, 20).map_err(|e| e.to_string())?.size();
    ensure(h1 == 2, format!("max 1-hollow {h1}"))?;
    ensure(h2 as u64 <= b2, format!("max 2-hollow {h2} exceeds {b2}"))?;
    Ok(format!("max 1-hollow {h1} <= {b1}, max 2-hollow {h2} <= {b2}"))
}

fn helly_witness() -> Check {
    let corners = PointSet::from_ints(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
    let fam = hoffman_family(&corners).map_err(|e| e.to_string())?;
    let v3 = brute_helly_check(&fam, &z(2), 1, 3, 12).map_err(|e| e.to_string())?.verdict;
    ensure(v3.hypothesis_holds && !v3.conclusion_holds, format!("h=3: {v3:?}"))?;
    let v4 = brute_helly_check(&fam, &z(2), 1, 4, 12).map_err(|e| e.to_string())?.verdict;
    ensure(v4.implication_holds() && !v4.conclusion_holds, format!("h=4: {v4:?}"))?;
    Ok("h=3: every <=3 subfamily meets Z^2, whole family does not; h=4: no counterexample (hypothesis fails with the full family)".into())
}

fn property_corpus() -> Check {
    let mut rng = trial_rng(0x5eed_0009, 0);
    let (mut certs, mut mono, mut parts) = (0, 0, 0);
    for case in 0..300 {
        let d = 1 + case % 3;
        let n = (2 + uniform_below(&mut rng, 9) as usize).min(7usize.pow(d as u32));
        let mut pts: Vec<Point> = Vec::new();
        while pts.len() < n {
            let p = random_point(&mut rng, d, 3);
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let a = PointSet::from_points(pts.clone()).unwrap();

        // Certificate soundness.
        let q = random_point(&mut rng, d, 3);
        let cert = membership(&q, &a).map_err(|e| e.to_string())?;
        ensure(cert.verify(&q, &a), format!("case {case}: membership certificate does not verify"))?;
        certs += 1;

        // Depth never drops when a point is added.
        let extra = random_point(&mut rng, d, 3);
        let mut bigger = pts.clone();
        bigger.push(extra);
        let before = depth_value(&q, &a).unwrap();
        let after = depth_value(&q, &PointSet::from_points(bigger).unwrap()).unwrap();
        ensure(after >= before, format!("case {case}: depth fell from {before} to {after}"))?;
        mono += 1;

        // Partition soundness, depth accounting and determinism.
        let m = 1 + uniform_below(&mut rng, 3) as usize;
        let k = 1 + uniform_below(&mut rng, 2) as usize;
        let inst = Instance::new(z(d), a, m, k).unwrap();
        let first = tverberg_partition(&inst);
        let second = tverberg_partition(&inst);
        let j1 = serde_json::to_string(&ResultFile::from_outcome(&first)).unwrap();
        let j2 = serde_json::to_string(&ResultFile::from_outcome(&second)).unwrap();
        ensure(j1 == j2, format!("case {case}: nondeterministic output"))?;
        match first.map_err(|e| format!("case {case}: {e}"))? {
            PartitionOutcome::Found(r) => {
                verify_partition(&r, &inst).map_err(|e| format!("case {case}: {e}"))?;
                let step = if k == 1 { d } else { k * d };
                let mut prev = r.stats.witness_depths.clone();
                for (trace, fallback) in r.stats.depth_trace.iter().zip(&r.stats.fallback) {
                    if !fallback {
                        for (now, was) in trace.iter().zip(&prev) {
                            ensure(now + step >= *was, format!("case {case}: depth {was} -> {now}"))?;
                        }
                    }
                    prev = trace.clone();
                }
                parts += 1;
            }
            PartitionOutcome::NoPartitionFound { .. } => {}
        }
    }
    Ok(format!("{certs} certificates, {mono} monotonicity checks, {parts} partitions verified, all deterministic"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("25 points in Z^2, m=3, k=1 (500 instances)", twenty_five_points_three_parts),
        ("26 points in Z^2, m=2, k=2 (100 instances)", two_witnesses_26_points),
        ("9 points in Z^2, Radon with oracle (200 instances)", radon_nine_points),
        ("unit square has no lattice Radon partition", unit_square_lower_bound),
        ("exact depth equals brute-force depth (1000 cases)", depth_equivalence),
        ("hollow search equals Hoffman maximum", hollow_hoffman),
        ("odd-integer Helly bounds 5 and 9", lattice_difference_bounds),
        ("leave-one-out family brackets the Helly number of Z^2", helly_witness),
        ("randomized property corpus", property_corpus),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
