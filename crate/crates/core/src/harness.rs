//! Seeded batch experiments: random instances, partition runs, oracle checks,
//! CSV records and a JSON summary.
//!
//! Random streams are SplitMix64. Trial `t` of a run with seed `s` uses the
//! stream whose initial state is the first output of SplitMix64 seeded with
//! `s XOR f(t)`, where `f(t)` is the first output of SplitMix64 seeded with `t`.
//! An index below `n` is drawn by rejection: outputs at or above
//! `n · ⌊2^64 / n⌋` are discarded and the rest reduced mod `n`. Points are drawn from the sorted
//! list of points of `S` in the box; repeats are redrawn.

use std::time::Instant;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::engine::{tverberg_partition, Instance, PartitionOutcome};
use crate::error::{Error, Result};
use crate::geometry::PointSet;
use crate::io::InstanceFile;
use crate::oracles::{brute_tverberg, set_partition_count, verify_partition, OracleCaps};
use crate::sets::{tverberg_upper_bound, AxisBox, BoundMode, DiscreteSetSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub set: DiscreteSetSpec,
    pub m: usize,
    pub k: usize,
    pub n_points: usize,
    /// Points are drawn from `S ∩ [−B, B]^d` unless `box` is given.
    pub box_bound: i64,
    #[serde(default, rename = "box", skip_serializing_if = "Option::is_none")]
    pub sample_box: Option<AxisBox>,
    pub trials: usize,
    pub seed: u64,
    #[serde(default)]
    pub oracle_validate: bool,
    #[serde(default)]
    pub caps: OracleCaps,
    #[serde(default)]
    pub bound_mode: BoundMode,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 || self.n_points == 0 || self.box_bound < 1 || self.m == 0 || self.k == 0 {
            return Err(Error::InvalidInput("trials, n_points, box_bound, m and k must all be at least 1".into()));
        }
        if !self.set.is_enumerable() {
            return Err(Error::NotEnumerable);
        }
        Ok(())
    }

    pub fn sample_box(&self) -> Result<AxisBox> {
        match &self.sample_box {
            Some(b) => Ok(b.clone()),
            None => AxisBox::symmetric(self.set.dim(), self.box_bound),
        }
    }
}

fn first_output(seed: u64) -> u64 {
    SplitMix64::seed_from_u64(seed).next_u64()
}

/// The random stream for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(first_output(seed ^ first_output(trial)))
}

/// Uniform index in `0..n` by rejection sampling.
pub fn uniform_below(rng: &mut impl RngCore, n: u64) -> u64 {
    assert!(n > 0);
    let zone = u64::MAX - (u64::MAX - n + 1) % n;
    loop {
        let x = rng.next_u64();
        if x <= zone {
            return x % n;
        }
    }
}

fn sample(config: &ExperimentConfig, ground: &[crate::geometry::Point], trial: usize) -> Result<Instance> {
    if ground.len() < config.n_points {
        return Err(Error::InvalidInput(format!(
            "the box holds {} points of S, fewer than the {} requested",
            ground.len(),
            config.n_points
        )));
    }
    let mut rng = trial_rng(config.seed, trial as u64);
    let mut taken = vec![false; ground.len()];
    let mut points = Vec::with_capacity(config.n_points);
    while points.len() < config.n_points {
        let i = uniform_below(&mut rng, ground.len() as u64) as usize;
        if !std::mem::replace(&mut taken[i], true) {
            points.push(ground[i].clone());
        }
    }
    Instance::new(config.set.clone(), PointSet::new(config.set.dim(), points)?, config.m, config.k)
}

/// Distinct points of `S` drawn uniformly from the sampling box, reproducible
/// from `(seed, trial)`.
pub fn generate_instance(config: &ExperimentConfig, trial: usize) -> Result<Instance> {
    config.validate()?;
    let ground = config.set.enumerate_in_box(&config.sample_box()?)?;
    sample(config, &ground, trial)
}

/// First 16 hex digits of the SHA-256 of the instance's JSON form.
pub fn instance_digest(inst: &Instance) -> String {
    let json = serde_json::to_string(&InstanceFile::from(inst)).expect("instance serializes");
    Sha256::digest(json.as_bytes()).iter().take(8).map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialStatus {
    Ok,
    NoPartitionFound,
    TheoremViolation,
    VerificationFailure,
    Error,
}

impl TrialStatus {
    fn as_str(self) -> &'static str {
        match self {
            TrialStatus::Ok => "ok",
            TrialStatus::NoPartitionFound => "no_partition_found",
            TrialStatus::TheoremViolation => "theorem_violation",
            TrialStatus::VerificationFailure => "verification_failure",
            TrialStatus::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub digest: String,
    pub status: TrialStatus,
    pub part_sizes: Vec<usize>,
    pub witness_count: usize,
    pub min_witness_depth: Option<usize>,
    /// `None` when oracle validation is off or over its cap.
    pub oracle_agreement: Option<bool>,
    pub oracle_found: Option<bool>,
    pub wall_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

fn run_trial(config: &ExperimentConfig, ground: &[crate::geometry::Point], trial: usize) -> TrialRecord {
    let start = Instant::now();
    let mut rec = TrialRecord {
        trial,
        digest: String::new(),
        status: TrialStatus::Error,
        part_sizes: vec![],
        witness_count: 0,
        min_witness_depth: None,
        oracle_agreement: None,
        oracle_found: None,
        wall_ms: 0.0,
        detail: None,
    };
    let inst = match sample(config, ground, trial) {
        Ok(i) => i,
        Err(e) => {
            rec.detail = Some(e.to_string());
            return rec;
        }
    };
    rec.digest = instance_digest(&inst);
    let engine_found = match tverberg_partition(&inst) {
        Ok(PartitionOutcome::Found(r)) => {
            rec.part_sizes = r.stats.part_sizes.clone();
            rec.witness_count = r.witnesses.len();
            rec.min_witness_depth = r.min_witness_depth();
            match verify_partition(&r, &inst) {
                Ok(()) => rec.status = TrialStatus::Ok,
                Err(defect) => {
                    rec.status = TrialStatus::VerificationFailure;
                    rec.detail = Some(defect.to_string());
                }
            }
            true
        }
        Ok(PartitionOutcome::NoPartitionFound { .. }) => {
            rec.status = TrialStatus::NoPartitionFound;
            false
        }
        Err(e) => {
            rec.status = match e {
                Error::TheoremViolation(_) => TrialStatus::TheoremViolation,
                Error::VerificationFailure(_) => TrialStatus::VerificationFailure,
                _ => TrialStatus::Error,
            };
            rec.detail = Some(e.to_string());
            false
        }
    };
    if config.oracle_validate && set_partition_count(inst.points().len(), inst.m()) <= config.caps.partitions {
        match brute_tverberg(inst.points(), inst.set(), inst.m(), inst.k(), config.caps.partitions) {
            Ok(report) => {
                let oracle_found = report.verdict.is_some();
                rec.oracle_found = Some(oracle_found);
                // The engine may miss partitions below the bound, but must never
                // claim one the oracle rules out.
                rec.oracle_agreement = Some(oracle_found || !engine_found);
            }
            Err(e) => rec.detail = Some(format!("oracle: {e}")),
        }
    }
    rec.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    rec
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub checked: usize,
    pub agreed: usize,
    pub oracle_found: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSummary {
    pub trials: usize,
    pub succeeded: usize,
    pub no_partition_found: usize,
    pub errors: usize,
    pub success_rate: f64,
    pub min_witness_depth: Option<usize>,
    /// Mean over successful trials of the smallest witness depth.
    pub mean_witness_depth: Option<f64>,
    pub threshold: usize,
    pub bound_paper: Option<u64>,
    pub bound_selected: Option<u64>,
    pub bound_mode: BoundMode,
    pub n_points: usize,
    pub theorem_violations: usize,
    pub verification_failures: usize,
    pub oracle: Option<OracleSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub records: Vec<TrialRecord>,
    pub summary: ExperimentSummary,
}

pub const CSV_COLUMNS: [&str; 8] = [
    "trial",
    "digest",
    "status",
    "part_sizes",
    "witness_count",
    "min_witness_depth",
    "oracle_agreement",
    "oracle_found",
];

impl ExperimentReport {
    /// One header row and one row per trial, in trial order. Part sizes are
    /// `;`-separated; missing values are empty. Wall time is appended as
    /// `wall_ms` only when `timing` is set, so default output is reproducible.
    pub fn to_csv(&self, timing: bool) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header: Vec<&str> = CSV_COLUMNS.to_vec();
        if timing {
            header.push("wall_ms");
        }
        w.write_record(&header).expect("in-memory write");
        let opt = |o: Option<String>| o.unwrap_or_default();
        for r in &self.records {
            let mut row = vec![
                r.trial.to_string(),
                r.digest.clone(),
                r.status.as_str().to_string(),
                r.part_sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(";"),
                r.witness_count.to_string(),
                opt(r.min_witness_depth.map(|d| d.to_string())),
                opt(r.oracle_agreement.map(|b| b.to_string())),
                opt(r.oracle_found.map(|b| b.to_string())),
            ];
            if timing {
                row.push(format!("{:.3}", r.wall_ms));
            }
            w.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

/// Runs every trial (in parallel, results in trial order) and summarizes.
/// Per-trial failures are recorded, never propagated.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let ground = config.set.enumerate_in_box(&config.sample_box()?)?;
    let records: Vec<TrialRecord> = (0..config.trials).into_par_iter().map(|t| run_trial(config, &ground, t)).collect();

    let count = |s: TrialStatus| records.iter().filter(|r| r.status == s).count();
    let succeeded = count(TrialStatus::Ok);
    let depths: Vec<usize> =
        records.iter().filter(|r| r.status == TrialStatus::Ok).filter_map(|r| r.min_witness_depth).collect();
    let bound = |mode| tverberg_upper_bound(&config.set, config.m, config.k, mode).ok();
    let oracle = config.oracle_validate.then(|| OracleSummary {
        checked: records.iter().filter(|r| r.oracle_agreement.is_some()).count(),
        agreed: records.iter().filter(|r| r.oracle_agreement == Some(true)).count(),
        oracle_found: records.iter().filter(|r| r.oracle_found == Some(true)).count(),
        skipped: records.iter().filter(|r| r.oracle_agreement.is_none()).count(),
    });
    let summary = ExperimentSummary {
        trials: records.len(),
        succeeded,
        no_partition_found: count(TrialStatus::NoPartitionFound),
        errors: count(TrialStatus::Error),
        success_rate: succeeded as f64 / records.len() as f64,
        min_witness_depth: depths.iter().copied().min(),
        mean_witness_depth: (!depths.is_empty()).then(|| depths.iter().sum::<usize>() as f64 / depths.len() as f64),
        threshold: (config.m - 1) * config.k * config.set.dim() + 1,
        bound_paper: bound(BoundMode::Paper),
        bound_selected: bound(config.bound_mode),
        bound_mode: config.bound_mode,
        n_points: config.n_points,
        theorem_violations: count(TrialStatus::TheoremViolation),
        verification_failures: count(TrialStatus::VerificationFailure),
        oracle,
    };
    Ok(ExperimentReport { records, summary })
}
