//! Command-line front end: argument definitions, the four commands and
//! their JSON reports. `main.rs` only parses, dispatches and maps the
//! outcome to an exit code.

pub mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use hermorient_core::graph::{parse_edge_list, Graph, Orientation, PartialAssignment};
use hermorient_core::matching::{matching_counts, matching_polynomial, matching_radius};
use hermorient_core::orient::{
    brute_force_extremes_capped, check_outer_sum_identity, expected_charpoly_brute_capped,
    expected_charpoly_fast, greedy_orient, mss_witness_check, verify_interlacing_family_capped,
    Mode, DEFAULT_BRUTE_CAP, DEFAULT_TREE_CAP,
};
use hermorient_core::spectral::{eigenvalues, hermitian_matrix};
use hermorient_core::ucover::{certify_gap, cover_radius_profile, GapStatus};

use report::{GraphDescriptor, Obj, RunReport, Timings};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] hermorient_core::Error),
}

impl CliError {
    /// 2 for usage and input errors, 3 for resource caps, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use hermorient_core::Error as E;
        match self {
            CliError::Read { .. } | CliError::Write { .. } | CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                E::BruteForceCap { .. }
                | E::NodeCap { .. }
                | E::TooManyVertices { .. }
                | E::Overflow(_) => 3,
                E::Parse { .. }
                | E::SelfLoop { .. }
                | E::DuplicateEdge { .. }
                | E::VertexOutOfRange { .. }
                | E::SignLength { .. }
                | E::InvalidSign(_)
                | E::InvalidTolerance(_)
                | E::InvalidWeight(_)
                | E::CompleteAssignment => 2,
                _ => 1,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "hermorient",
    version,
    about = "Hermitian spectra of graph orientations"
)]
pub struct Cli {
    /// Worker threads for the parallel enumerations (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Edge-list file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Matching counts, matching polynomial and its largest root.
    Analyze {
        #[command(flatten)]
        common: Common,
    },
    /// Find an orientation with small lambda_1 or large spectral radius.
    Orient {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = ModeArg::Min)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = Method::Greedy)]
        method: Method,
        /// Largest edge count for exhaustive search.
        #[arg(long)]
        cap_edges: Option<usize>,
    },
    /// Run one of the identity checks.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        check: Check,
        /// Largest edge count for exhaustive enumeration.
        #[arg(long)]
        cap_edges: Option<usize>,
        /// Seed for sampled orientations and prefixes.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Universal-cover lower bounds and the gap certificate.
    Ucover {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Analyze { common }
            | Command::Orient { common, .. }
            | Command::Verify { common, .. }
            | Command::Ucover { common, .. } => common,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Greedy,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Matchpol,
    Family,
    Symmetry,
    Fastexp,
    Witness,
}

/// Orientations checked exhaustively up to this count, sampled beyond it.
pub const SYMMETRY_EXHAUSTIVE: u64 = 4096;
pub const SYMMETRY_SAMPLES: usize = 100;
/// Edge count up to which every prefix is compared in `fastexp`.
pub const FASTEXP_EXHAUSTIVE_EDGES: usize = 8;
pub const FASTEXP_SAMPLES: usize = 100;
pub const WITNESS_WEIGHTS: [f64; 5] = [0.0, 0.3, 0.5, 0.7, 1.0];

/// A finished command: its report and whether every check passed.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: RunReport,
    pub passed: bool,
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(parse_edge_list(&text)?)
}

pub fn run(command: &Command) -> Result<Outcome> {
    let start = Instant::now();
    let common = command.common();
    if !(common.tol > 0.0 && common.tol.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tol must be positive and finite, got {}",
            common.tol
        )));
    }
    let g = read_graph(&common.input)?;
    let tol = common.tol;
    let (name, parameters, results, passed) = match command {
        Command::Analyze { .. } => {
            let (results, passed) = analyze(&g, tol)?;
            (
                "analyze",
                Obj::new().set("tol", tol).build(),
                results,
                passed,
            )
        }
        Command::Orient {
            mode,
            method,
            cap_edges,
            ..
        } => {
            let cap = cap_edges.unwrap_or(DEFAULT_BRUTE_CAP);
            let (results, passed) = orient(&g, *mode, *method, cap, tol)?;
            let params = Obj::new()
                .set("tol", tol)
                .set("mode", mode)
                .set("method", method)
                .set("cap_edges", cap)
                .build();
            ("orient", params, results, passed)
        }
        Command::Verify {
            check,
            cap_edges,
            seed,
            ..
        } => {
            let cap = cap_edges.unwrap_or(match check {
                Check::Family => DEFAULT_TREE_CAP,
                _ => DEFAULT_BRUTE_CAP,
            });
            let (results, passed) = verify(&g, *check, cap, *seed, tol)?;
            let params = Obj::new()
                .set("tol", tol)
                .set("check", check)
                .set("cap_edges", cap)
                .set("seed", seed)
                .build();
            ("verify", params, results, passed)
        }
        Command::Ucover { depth, .. } => {
            let (results, passed) = ucover(&g, *depth, tol)?;
            let params = Obj::new().set("tol", tol).set("depth", depth).build();
            ("ucover", params, results, passed)
        }
    };
    Ok(Outcome {
        report: RunReport {
            command: name.to_string(),
            graph: GraphDescriptor {
                path: common.input.display().to_string(),
                n: g.n(),
                m: g.m(),
            },
            parameters,
            results,
            timings: Timings {
                total_ms: report::round_sig(start.elapsed().as_secs_f64() * 1e3),
            },
        },
        passed,
    })
}

pub fn analyze(g: &Graph, tol: f64) -> Result<(Value, bool)> {
    let mu = matching_polynomial(g)?;
    let results = Obj::new()
        .set("n", g.n())
        .set("m", g.m())
        .set("components", g.components().len())
        .set("matching_counts", matching_counts(g)?.counts())
        .set("mu", mu.to_string())
        .set("mu_coeffs", &mu)
        .set("rho_mu", matching_radius(g, tol)?)
        .build();
    Ok((results, true))
}

pub fn orient(
    g: &Graph,
    mode: ModeArg,
    method: Method,
    cap: usize,
    tol: f64,
) -> Result<(Value, bool)> {
    let rho_mu = matching_radius(g, tol)?;
    let mut out = Obj::new().set("mode", mode).set("method", method);
    let (orientation, value) = match method {
        Method::Greedy => {
            let core_mode = match mode {
                ModeArg::Min => Mode::Min,
                ModeArg::Max => Mode::Max,
            };
            let o = greedy_orient(g, core_mode, tol)?;
            out = out.set("path_roots", &o.path_roots);
            (o.orientation, o.value)
        }
        Method::Brute => {
            let e = brute_force_extremes_capped(g, tol, cap)?;
            out = out.set("histogram", &e.histogram);
            match mode {
                ModeArg::Min => (e.min_orientation, e.min_lambda1),
                ModeArg::Max => (e.max_orientation, e.max_rho),
            }
        }
    };
    let bound_satisfied = match mode {
        ModeArg::Min => value <= rho_mu + tol,
        ModeArg::Max => value >= rho_mu - tol,
    };
    let key = match mode {
        ModeArg::Min => "lambda1",
        ModeArg::Max => "rho",
    };
    let tree_checks = if g.m() <= DEFAULT_TREE_CAP {
        let r = verify_interlacing_family_capped(g, tol, DEFAULT_TREE_CAP)?;
        Obj::new()
            .set("nodes", r.nodes)
            .set("failures", &r.failures)
            .build()
    } else {
        Value::Null
    };
    let passed = bound_satisfied
        && tree_checks["failures"]
            .as_array()
            .is_none_or(|f| f.is_empty());
    let results = out
        .set("orientation", &orientation)
        .set(key, value)
        .set("rho_mu", rho_mu)
        .set("bound_satisfied", bound_satisfied)
        .set("tree_checks", tree_checks)
        .build();
    Ok((results, passed))
}

fn check_cap(m: usize, cap: usize) -> Result<()> {
    if m > cap {
        return Err(hermorient_core::Error::BruteForceCap { edges: m, cap }.into());
    }
    Ok(())
}

pub fn verify(g: &Graph, check: Check, cap: usize, seed: u64, tol: f64) -> Result<(Value, bool)> {
    let out = Obj::new().set("check", check);
    match check {
        Check::Matchpol => {
            check_cap(g.m(), cap)?;
            let average = expected_charpoly_brute_capped(g, &PartialAssignment::empty(), cap)?;
            let mu = matching_polynomial(g)?;
            let passed = average == mu;
            let results = out
                .set("passed", passed)
                .set("orientations", 1u64 << g.m())
                .set("average", &average)
                .set("mu", &mu)
                .build();
            Ok((results, passed))
        }
        Check::Family => {
            let r = verify_interlacing_family_capped(g, tol, cap)?;
            let passed = r.passed();
            let results = out
                .set("passed", passed)
                .set(
                    "internal_nodes_passed",
                    format!("{}/{}", r.internal_passed, r.internal_nodes),
                )
                .set("nodes", r.nodes)
                .set("distinct_polynomials", r.distinct_polynomials)
                .set("failures", &r.failures)
                .build();
            Ok((results, passed))
        }
        Check::Symmetry => {
            let indices = orientation_sample(g.m(), seed);
            let mut failures = Vec::new();
            let mut worst: f64 = 0.0;
            for &idx in &indices {
                let o = Orientation::from_index(g, idx);
                let s = eigenvalues(&hermitian_matrix(g, &o)?, tol)?;
                let gap = s.asymmetry().max((s.radius() - s.lambda1()).abs());
                worst = worst.max(gap);
                if gap > tol {
                    failures.push(
                        Obj::new()
                            .set("orientation", &o)
                            .set("asymmetry", gap)
                            .build(),
                    );
                }
            }
            let passed = failures.is_empty();
            let results = out
                .set("passed", passed)
                .set(
                    "orientations_passed",
                    format!("{}/{}", indices.len() - failures.len(), indices.len()),
                )
                .set(
                    "exhaustive",
                    g.m() < 64 && 1u64 << g.m() <= SYMMETRY_EXHAUSTIVE,
                )
                .set("max_asymmetry", worst)
                .set("failures", failures)
                .build();
            Ok((results, passed))
        }
        Check::Fastexp => {
            let prefixes = prefix_sample(g.m(), seed);
            let mut failures = Vec::new();
            for prefix in &prefixes {
                let pa = PartialAssignment::new(g, prefix.clone())?;
                check_cap(g.m() - pa.depth(), cap)?;
                let fast = expected_charpoly_fast(g, &pa)?;
                let brute = expected_charpoly_brute_capped(g, &pa, cap)?;
                if fast != brute {
                    failures.push(
                        Obj::new()
                            .set("prefix", prefix)
                            .set("fast", &fast)
                            .set("brute", &brute)
                            .build(),
                    );
                }
            }
            let passed = failures.is_empty();
            let results = out
                .set("passed", passed)
                .set(
                    "prefixes_passed",
                    format!("{}/{}", prefixes.len() - failures.len(), prefixes.len()),
                )
                .set("failures", failures)
                .build();
            Ok((results, passed))
        }
        Check::Witness => witness(g, cap, tol, out),
    }
}

/// All orientation indices when there are few enough, otherwise a seeded
/// sample without repetition, in increasing order.
pub fn orientation_sample(m: usize, seed: u64) -> Vec<u64> {
    if m < 64 && 1u64 << m <= SYMMETRY_EXHAUSTIVE {
        return (0..1u64 << m).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = if m < 64 {
        let total = 1u64 << m;
        let mut set = std::collections::BTreeSet::new();
        while set.len() < SYMMETRY_SAMPLES {
            set.insert(rng.random_range(0..total));
        }
        set.into_iter().collect()
    } else {
        (0..SYMMETRY_SAMPLES).map(|_| rng.random()).collect()
    };
    out.sort_unstable();
    out
}

/// Every prefix (all depths) for small `m`, otherwise seeded prefixes of
/// uniformly random depth.
pub fn prefix_sample(m: usize, seed: u64) -> Vec<Vec<i8>> {
    let signs = |bits: u64, k: usize| -> Vec<i8> {
        (0..k)
            .map(|i| if bits >> i & 1 == 1 { -1 } else { 1 })
            .collect()
    };
    if m <= FASTEXP_EXHAUSTIVE_EDGES {
        return (0..=m)
            .flat_map(|k| (0..1u64 << k).map(move |b| (k, b)))
            .map(|(k, b)| signs(b, k))
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..FASTEXP_SAMPLES)
        .map(|_| {
            let k = rng.random_range(0..=m);
            let bits: u64 = rng.random();
            signs(bits, k.min(63))
        })
        .collect()
}

fn witness(g: &Graph, cap: usize, tol: f64, out: Obj) -> Result<(Value, bool)> {
    check_cap(g.m(), cap)?;
    let path = greedy_orient(g, Mode::Min, tol)?;
    let signs = path.orientation.signs();
    let mut checks = 0usize;
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for k in 0..g.m() {
        let pa = PartialAssignment::new(g, signs[..k].to_vec())?;
        for &lambda in &WITNESS_WEIGHTS {
            let r = mss_witness_check(g, &pa, lambda, tol)?;
            checks += 1;
            worst = worst.max(r.coefficient_diff);
            if !r.passed(tol) {
                failures.push(
                    Obj::new()
                        .set("depth", k)
                        .set("lambda", lambda)
                        .set("report", &r)
                        .build(),
                );
            }
        }
    }
    // Outer-product identity on the greedy orientation and its reverse.
    let mut plus_h = 0usize;
    let mut minus_h = 0usize;
    let tested = [path.orientation.clone(), path.orientation.reversed()];
    for o in &tested {
        let id = check_outer_sum_identity(g, o)?;
        plus_h += usize::from(id.plus_h);
        minus_h += usize::from(id.minus_h);
    }
    let passed = failures.is_empty() && plus_h == tested.len();
    let results = out
        .set("passed", passed)
        .set(
            "checks_passed",
            format!("{}/{}", checks - failures.len(), checks),
        )
        .set("max_coefficient_diff", worst)
        .set("path", path.orientation.signs())
        .set(
            "outer_sum_equals_d_plus_h",
            format!("{plus_h}/{}", tested.len()),
        )
        .set(
            "outer_sum_equals_d_minus_h",
            format!("{minus_h}/{}", tested.len()),
        )
        .set("failures", failures)
        .build();
    Ok((results, passed))
}

pub fn ucover(g: &Graph, depth: usize, tol: f64) -> Result<(Value, bool)> {
    let values = cover_radius_profile(g, depth, tol)?;
    let cert = certify_gap(g, tol, depth)?;
    // A forest is its own cover, so anything but equality is a failure.
    let forest = g.m() + g.components().len() == g.n();
    let passed = !forest || cert.status == GapStatus::Equality;
    let results = Obj::new()
        .set("values", &values)
        .set("status", cert.status)
        .set("certificate", &cert)
        .build();
    Ok((results, passed))
}

/// Writes the report as pretty JSON to `path`, or to stdout.
pub fn emit(report: &RunReport, path: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(report).expect("report serializes") + "\n";
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Write {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Exact bytes of the results object, for determinism comparisons.
pub fn results_bytes(report: &RunReport) -> String {
    serde_json::to_string(&report.results).expect("results serialize")
}
