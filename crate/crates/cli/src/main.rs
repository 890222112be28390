use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qtverberg::engine::{radon_partition, tverberg_partition, PartitionOutcome, PartitionResult};
use qtverberg::geometry::depth;
use qtverberg::harness::{run_experiment, ExperimentConfig};
use qtverberg::io::{parse_point, parse_points, InstanceFile, ResultFile, Status};
use qtverberg::oracles::{
    brute_depth, brute_helly_check, brute_hoffman_max, brute_tverberg, hoffman_family, verify_partition, OracleCaps,
};
use qtverberg::sets::{
    helly_upper_bound, hollow_search, is_k_hoffman, tverberg_upper_bound, AxisBox, BoundMode, DiscreteSetSpec,
    PolytopeV, SearchMode, DEFAULT_EXHAUSTIVE_CAP,
};
use qtverberg::{Error, Scalar};

/// Quantitative Tverberg partitions over lattices, with exact certificates.
#[derive(Parser)]
#[command(name = "qtverberg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partition an instance into m parts whose hulls share k points of S.
    Tverberg { instance: PathBuf },
    /// Two-part partition (the instance's m is ignored).
    Radon { instance: PathBuf },
    /// Exact half-space depth of a point, e.g. `depth "(0,0)" points.json`.
    Depth { point: String, points: PathBuf },
    /// Largest (exhaustive) or maximal (greedy) k-hollow set in a box.
    HollowSearch {
        set: PathBuf,
        #[command(flatten)]
        bx: BoxArg,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value = "exhaustive")]
        mode: SearchMode,
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
        cap: usize,
    },
    /// Whether a point set is k-Hoffman (and k-hollow) in S.
    HoffmanCheck {
        set: PathBuf,
        points: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Helly and Tverberg upper bounds for S.
    Bounds {
        set: PathBuf,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value = "paper")]
        mode: BoundMode,
    },
    /// Brute-force reference computations.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run a seeded batch experiment; the summary goes to stdout.
    Experiment {
        config: PathBuf,
        /// Write per-trial records here.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        /// Add a wall_ms column to the CSV (makes it non-reproducible).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Depth by exhaustive removal.
    Depth {
        point: String,
        points: PathBuf,
        #[arg(long, default_value_t = OracleCaps::default().depth_points)]
        cap: usize,
    },
    /// Exhaustive search over all partitions into m parts.
    Tverberg {
        instance: PathBuf,
        #[arg(long, default_value_t = OracleCaps::default().partitions)]
        cap: u128,
    },
    /// Largest k-Hoffman subset of S in a box.
    HoffmanMax {
        set: PathBuf,
        #[command(flatten)]
        bx: BoxArg,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = OracleCaps::default().hoffman_ground)]
        cap: usize,
    },
    /// Helly implication for number h on a family of polytopes.
    HellyCheck {
        set: PathBuf,
        /// JSON list of point lists, one per polytope.
        #[arg(long, conflicts_with = "leave_one_out", required_unless_present = "leave_one_out")]
        family: Option<PathBuf>,
        /// Use the leave-one-out hulls of these points as the family.
        #[arg(long)]
        leave_one_out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        h: usize,
        #[arg(long, default_value_t = OracleCaps::default().helly_family)]
        cap: usize,
    },
    /// Recheck a result file against its instance.
    Verify { instance: PathBuf, result: PathBuf },
}

#[derive(Args)]
struct BoxArg {
    /// Coordinate bounds `lo:hi` per axis, comma separated, e.g. `0:1,0:1`.
    #[arg(long = "box")]
    bounds: String,
}

impl BoxArg {
    fn parse(&self) -> anyhow::Result<AxisBox> {
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for axis in self.bounds.split(',') {
            let (a, b) = axis.split_once(':').with_context(|| format!("box axis {axis:?} is not lo:hi"))?;
            lo.push(a.trim().parse::<Scalar>().with_context(|| format!("bad bound {a:?}"))?);
            hi.push(b.trim().parse::<Scalar>().with_context(|| format!("bad bound {b:?}"))?);
        }
        Ok(AxisBox::new(lo, hi)?)
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(value: &impl serde::Serialize) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

/// Failures that mean "the computation could not vouch for its answer".
fn is_hard_failure(e: &Error) -> bool {
    matches!(
        e,
        Error::CapExceeded { .. } | Error::VerificationFailure(_) | Error::TheoremViolation(_) | Error::Overflow(_)
    )
}

struct Failure(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.into())
    }
}

fn describe(r: &PartitionResult) -> String {
    let sizes: Vec<String> = r.parts.iter().map(|p| p.len().to_string()).collect();
    let wits: Vec<String> = r.witnesses.iter().map(ToString::to_string).collect();
    format!("parts of sizes {}; witnesses {}", sizes.join(", "), wits.join(" "))
}

fn partition(path: &Path, radon: bool) -> Result<u8, Failure> {
    let inst = read_json::<InstanceFile>(path)?.into_instance()?;
    let outcome = if radon { radon_partition(&inst) } else { tverberg_partition(&inst) };
    emit(&ResultFile::from_outcome(&outcome))?;
    match outcome {
        Ok(PartitionOutcome::Found(r)) => {
            eprintln!("partition found: {}", describe(&r));
            Ok(0)
        }
        Ok(PartitionOutcome::NoPartitionFound { stats }) => {
            eprintln!("no partition found: no {} points of S reach depth {}", inst.k(), stats.threshold);
            Ok(0)
        }
        Err(e) => Err(e.into()),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Tverberg { instance } => partition(&instance, false),
        Command::Radon { instance } => partition(&instance, true),
        Command::Depth { point, points } => {
            let a = parse_points(&read(&points)?)?;
            let p = parse_point(&point)?;
            let r = depth(&p, &a)?;
            emit(&json!({ "point": p, "depth": r.depth, "halfspace": r.witness }))?;
            eprintln!("depth of {p}: {}", r.depth);
            Ok(0)
        }
        Command::HollowSearch { set, bx, k, mode, cap } => {
            let s: DiscreteSetSpec = read_json(&set)?;
            let cert = hollow_search(&s, &bx.parse()?, k, mode, cap)?;
            emit(&json!({ "size": cert.size(), "certificate": cert }))?;
            eprintln!("{mode:?} search: {}-hollow set of size {}", k, cert.size());
            Ok(0)
        }
        Command::HoffmanCheck { set, points, k } => {
            let s: DiscreteSetSpec = read_json(&set)?;
            let p = parse_points(&read(&points)?)?;
            let hoffman = is_k_hoffman(&p, &s, k)?;
            let hollow = qtverberg::sets::hollow_certificate(&s, &p, k)?;
            emit(&json!({ "k": k, "hoffman": hoffman, "hollow": hollow.is_hollow(), "nonvertex_points": hollow.nonvertex_points }))?;
            eprintln!("{}-Hoffman: {hoffman}; {}-hollow: {}", k, k, hollow.is_hollow());
            Ok(0)
        }
        Command::Bounds { set, m, k, mode } => {
            let s: DiscreteSetSpec = read_json(&set)?;
            let h = helly_upper_bound(&s, k, mode)?;
            let t = tverberg_upper_bound(&s, m, k, mode)?;
            emit(&json!({ "mode": mode, "m": m, "k": k, "helly_bound": h, "tverberg_bound": t }))?;
            eprintln!("Helly bound {h}; Tverberg bound {t}");
            Ok(0)
        }
        Command::Oracle(cmd) => oracle(cmd),
        Command::Experiment { config, csv, threads, timing } => {
            let config: ExperimentConfig = read_json(&config)?;
            if let Some(n) = threads {
                rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
            }
            let report = run_experiment(&config)?;
            if let Some(path) = csv {
                fs::write(&path, report.to_csv(timing)).with_context(|| format!("writing {}", path.display()))?;
            }
            emit(&report.summary)?;
            let s = &report.summary;
            eprintln!(
                "{}/{} trials partitioned; {} theorem violations; {} verification failures",
                s.succeeded, s.trials, s.theorem_violations, s.verification_failures
            );
            let oracle_disagreed = s.oracle.as_ref().is_some_and(|o| o.agreed < o.checked);
            Ok(if s.theorem_violations > 0 || s.verification_failures > 0 || oracle_disagreed { 2 } else { 0 })
        }
    }
}

fn oracle(cmd: OracleCommand) -> Result<u8, Failure> {
    match cmd {
        OracleCommand::Depth { point, points, cap } => {
            let a = parse_points(&read(&points)?)?;
            let p = parse_point(&point)?;
            let r = brute_depth(&p, &a, cap)?;
            emit(&json!({ "point": p, "depth": r.verdict, "searched": r.searched.to_string() }))?;
            eprintln!("brute-force depth of {p}: {}", r.verdict);
            Ok(0)
        }
        OracleCommand::Tverberg { instance, cap } => {
            let inst = read_json::<InstanceFile>(&instance)?.into_instance()?;
            let r = brute_tverberg(inst.points(), inst.set(), inst.m(), inst.k(), cap)?;
            let found = r.verdict.is_some();
            emit(&json!({ "found": found, "partition": r.verdict, "searched": r.searched.to_string() }))?;
            eprintln!("{} partitions searched; found: {found}", r.searched);
            Ok(0)
        }
        OracleCommand::HoffmanMax { set, bx, k, cap } => {
            let s: DiscreteSetSpec = read_json(&set)?;
            let r = brute_hoffman_max(&s, &bx.parse()?, k, cap)?;
            emit(&json!({ "k": k, "max_size": r.verdict, "searched": r.searched.to_string() }))?;
            eprintln!("largest {k}-Hoffman set: {}", r.verdict);
            Ok(0)
        }
        OracleCommand::HellyCheck { set, family, leave_one_out, k, h, cap } => {
            let s: DiscreteSetSpec = read_json(&set)?;
            let fam: Vec<PolytopeV> = match (family, leave_one_out) {
                (Some(f), _) => {
                    let lists: Vec<Value> = read_json(&f)?;
                    lists
                        .iter()
                        .map(|v| Ok(PolytopeV::new(parse_points(&v.to_string())?)?))
                        .collect::<anyhow::Result<_>>()?
                }
                (None, Some(p)) => hoffman_family(&parse_points(&read(&p)?)?)?,
                (None, None) => return Err(anyhow::anyhow!("either --family or --leave-one-out is required").into()),
            };
            let r = brute_helly_check(&fam, &s, k, h, cap)?;
            let v = &r.verdict;
            emit(&json!({
                "h": h,
                "k": k,
                "hypothesis_holds": v.hypothesis_holds,
                "conclusion_holds": v.conclusion_holds,
                "implication_holds": v.implication_holds(),
                "violating_subfamily": v.violating_subfamily,
                "common_points": v.common_points,
                "searched": r.searched.to_string(),
            }))?;
            eprintln!(
                "hypothesis {}; conclusion {}",
                if v.hypothesis_holds { "holds" } else { "fails" },
                if v.conclusion_holds { "holds" } else { "fails" }
            );
            Ok(0)
        }
        OracleCommand::Verify { instance, result } => {
            let inst = read_json::<InstanceFile>(&instance)?.into_instance()?;
            let res: ResultFile = read_json(&result)?;
            if res.status != Status::Ok {
                return Err(anyhow::anyhow!("result status is {:?}; only successful results can be verified", res.status).into());
            }
            let claimed = PartitionResult {
                parts: res.parts,
                witnesses: res.witnesses,
                certificates: res.certificates,
                stats: res.stats.unwrap_or_default(),
            };
            match verify_partition(&claimed, &inst) {
                Ok(()) => {
                    emit(&json!({ "valid": true }))?;
                    eprintln!("partition verified");
                    Ok(0)
                }
                Err(defect) => {
                    emit(&json!({ "valid": false, "reason": defect }))?;
                    eprintln!("invalid partition: {defect}");
                    Ok(2)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(e)) => {
            eprintln!("error: {e:#}");
            let hard = e.downcast_ref::<Error>().is_some_and(is_hard_failure);
            ExitCode::from(if hard { 2 } else { 1 })
        }
    }
}
