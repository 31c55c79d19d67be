//! `qbelt` — exact Q-system / cluster-algebra engine.
//!
//! Subcommands: `solve`, `verify`, `count`, `graph`.
//! Exit codes: 0 ok, 2 invariant failure, 3 I/O, 4 bad configuration.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use qbelt::belt::{build_belt, export_dot, graph_json};
use qbelt::counting::{self, PositivityConvention};
use qbelt::qsystem::{default_k_max, q_solve};
use qbelt::Family;

mod config;
mod suites;

use config::{load_config_file, parse_n_vector, parse_weight, Settings};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
    Invariant(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => 2,
            CliError::Io(_) => 3,
            CliError::Config(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Io(m) | CliError::Invariant(m) => m,
        }
    }
}

/// Map engine errors onto exit-code categories: violated mathematical
/// invariants are 2, I/O is 3, malformed input is 4.
pub fn classify(err: qbelt::Error) -> CliError {
    use qbelt::Error::*;
    match err {
        Io(e) => CliError::Io(e.to_string()),
        InvalidArgument(_) | Parse(_) | InvalidRank { .. } | InvalidVarSet(_) => {
            CliError::Config(err.to_string())
        }
        other => CliError::Invariant(other.to_string()),
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "qbelt",
    version,
    about = "Exact Q-system and cluster-algebra engine for simply-laced Lie algebras"
)]
struct Cli {
    /// Plain-text key=value configuration file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Dynkin type, e.g. A1, A3, D4, E6.
    #[arg(long = "type", global = true)]
    dynkin: Option<String>,

    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format: json, csv, dot or text.
    #[arg(long, global = true)]
    format: Option<String>,

    /// Seed for the randomized suites.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Fail (exit 2) on any M != N or oracle mismatch in `count`.
    #[arg(long, global = true)]
    strict: bool,

    /// Numeric tolerance for floating-point checks.
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve the Q-system and emit the table.
    Solve {
        /// Recursion depth (>= 1); defaults depend on the rank.
        #[arg(long)]
        kmax: Option<i64>,
        /// Solve the plus-sign (normalized) system instead.
        #[arg(long)]
        normalized: bool,
    },
    /// Run a named invariant suite and report pass/fail.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        kmax: Option<i64>,
        /// Number of random walks (laurent suite).
        #[arg(long)]
        walks: Option<usize>,
        /// Walk length (laurent suite).
        #[arg(long)]
        len: Option<usize>,
        /// Number of random trials (normalization / ablock suites).
        #[arg(long)]
        trials: Option<usize>,
        /// Belt length (belt suite).
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Evaluate the fermionic M- and N-sums, optionally against the
    /// tensor-product oracle.
    Count {
        /// String content as `alpha,i,count` triples separated by `;`.
        #[arg(long)]
        n: Option<String>,
        /// Dominant weight `l1,l2,...`; sweeps all sectors when absent.
        #[arg(long)]
        lambda: Option<String>,
        /// Add the tensor-product oracle column (A1, A2).
        #[arg(long)]
        oracle: bool,
        /// Positivity filter convention: support (default) or cutoff.
        #[arg(long)]
        convention: Option<String>,
    },
    /// Build the belt graph and export it.
    Graph {
        #[arg(long)]
        steps: Option<i64>,
        /// Impose the specialized seed at k = 0.
        #[arg(long)]
        specialized: bool,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            std::process::exit(4);
        }
        Err(e) => {
            // --help / --version
            let _ = e.print();
            std::process::exit(0);
        }
    };
    match run(cli) {
        Ok(()) => {}
        Err(err) => {
            eprintln!("qbelt: {}", err.message());
            std::process::exit(err.exit_code());
        }
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(content.as_bytes())
                .and_then(|_| {
                    if content.ends_with('\n') {
                        Ok(())
                    } else {
                        lock.write_all(b"\n")
                    }
                })
                .map_err(|e| CliError::Io(format!("cannot write stdout: {e}")))
        }
    }
}

fn positive_kmax(raw: Option<i64>, settings: &Settings) -> Result<Option<usize>, CliError> {
    let value = settings.parse(raw, "kmax", -1)?;
    if value == -1 {
        return Ok(None);
    }
    if value < 1 {
        return Err(CliError::Config(format!("kmax must be >= 1, got {value}")));
    }
    Ok(Some(value as usize))
}

fn run(cli: Cli) -> Result<(), CliError> {
    let file_config = match &cli.config {
        Some(path) => load_config_file(path)?,
        None => Default::default(),
    };
    let settings = Settings::new(file_config);
    let format = settings.string(cli.format.as_deref(), "format");
    let seed = settings.parse(cli.seed, "seed", 0u64)?;
    let tolerance = settings.parse(cli.tolerance, "tolerance", 1e-9)?;
    if tolerance <= 0.0 {
        return Err(CliError::Config("tolerance must be positive".into()));
    }
    let strict = settings.flag(cli.strict, "strict")?;

    match &cli.command {
        Command::Solve { kmax, normalized } => {
            let dynkin = settings.dynkin(cli.dynkin.as_deref())?;
            let k_max =
                positive_kmax(*kmax, &settings)?.unwrap_or_else(|| default_k_max(dynkin));
            let normalized = settings.flag(*normalized, "normalized")?;
            let table = q_solve(dynkin, k_max, normalized).map_err(classify)?;
            let rendered = match format.as_deref().unwrap_or("csv") {
                "csv" => table.to_csv(),
                "json" => format!("{:#}", table.to_json()),
                "text" => {
                    let mut out = String::new();
                    for alpha in 1..=dynkin.rank() {
                        for k in 0..=k_max {
                            let entry = table.entry(alpha, k).map_err(classify)?;
                            out.push_str(&format!("Q[{alpha},{k}] = {entry}\n"));
                        }
                    }
                    out
                }
                other => {
                    return Err(CliError::Config(format!(
                        "solve supports csv, json or text, not `{other}`"
                    )))
                }
            };
            emit(&cli.out, &rendered)
        }
        Command::Verify {
            suite,
            kmax,
            walks,
            len,
            trials,
            steps,
        } => {
            let dynkin = settings.dynkin(cli.dynkin.as_deref())?;
            let kmax = positive_kmax(*kmax, &settings)?;
            let walks = settings.parse(*walks, "walks", 50usize)?;
            let len = settings.parse(*len, "len", 6usize)?;
            let trials = settings.parse(*trials, "trials", 100usize)?;
            let steps = settings.parse(*steps, "steps", 6usize)?;
            let suite_name = suite.as_str();
            let outcome = match suite_name {
                "chebyshev" => suites::chebyshev(dynkin, kmax.unwrap_or(20)),
                "polynomiality" => suites::polynomiality(dynkin, kmax),
                "normalization" => {
                    suites::normalization(dynkin, kmax.unwrap_or(6), trials, seed, tolerance)
                }
                "belt" => suites::belt_suite(dynkin, steps),
                "hypercube" => suites::hypercube(dynkin, seed),
                "ablock" => suites::ablock(dynkin, trials, seed),
                "laurent" => suites::laurent(dynkin, walks, len, seed),
                "dimensions" => suites::dimensions(dynkin, kmax),
                other => Err(CliError::Config(format!("unknown suite `{other}`"))),
            };
            match outcome {
                Ok(outcome) => {
                    let report = serde_json::json!({
                        "suite": suite_name,
                        "type": dynkin.to_string(),
                        "pass": outcome.pass,
                        "details": outcome.details,
                    });
                    emit(&cli.out, &format!("{report:#}"))
                }
                Err(CliError::Invariant(msg)) => {
                    let report = serde_json::json!({
                        "suite": suite_name,
                        "type": dynkin.to_string(),
                        "pass": false,
                        "violated": msg,
                    });
                    emit(&cli.out, &format!("{report:#}"))?;
                    Err(CliError::Invariant(msg))
                }
                Err(other) => Err(other),
            }
        }
        Command::Count {
            n,
            lambda,
            oracle,
            convention,
        } => {
            let dynkin = settings.dynkin(cli.dynkin.as_deref())?;
            let rank = dynkin.rank();
            let cartan = qbelt::CartanData::new(dynkin);
            let convention = settings.convention(convention.as_deref())?;
            let n_raw = settings
                .string(n.as_deref(), "n")
                .ok_or_else(|| CliError::Config("--n is required".into()))?;
            let n_vec = parse_n_vector(&n_raw, rank)?;
            let oracle = settings.flag(*oracle, "oracle")?;
            let oracle_applicable = dynkin.family() == Family::A && rank <= 2;
            if oracle && !oracle_applicable {
                return Err(CliError::Config(
                    "--oracle applies to A1 and A2 only".into(),
                ));
            }
            let lambdas = match settings.string(lambda.as_deref(), "lambda") {
                Some(raw) => vec![parse_weight(&raw, rank)?],
                None => counting::dominant_weights(&cartan, &n_vec),
            };
            let mut sectors = Vec::new();
            let mut all_match = true;
            for weight in &lambdas {
                let report =
                    counting::count(&cartan, &n_vec, weight, convention).map_err(classify)?;
                let mut sector = serde_json::json!({
                    "lambda": weight.labels(),
                    "M": report.m_sum.to_string(),
                    "N": report.n_sum.to_string(),
                    "terms": report.to_json()["terms"],
                });
                if report.m_sum != report.n_sum {
                    all_match = false;
                }
                if oracle {
                    let value =
                        counting::tensor_oracle(&cartan, &n_vec, weight).map_err(classify)?;
                    if value != report.n_sum {
                        all_match = false;
                    }
                    sector["oracle"] = serde_json::Value::String(value.to_string());
                }
                sectors.push(sector);
            }
            let body = serde_json::json!({
                "type": dynkin.to_string(),
                "n": n_vec.to_json(),
                "convention": match convention {
                    PositivityConvention::Support => "support",
                    PositivityConvention::Cutoff => "cutoff",
                },
                "sectors": sectors,
            });
            let rendered = match format.as_deref().unwrap_or("json") {
                "json" => format!("{body:#}"),
                "text" => {
                    let mut out = String::new();
                    out.push_str(&format!("type {dynkin}, n = {}\n", n_raw.trim()));
                    for sector in &sectors {
                        out.push_str(&format!(
                            "lambda {:?}: M = {}, N = {}{}\n",
                            sector["lambda"],
                            sector["M"].as_str().unwrap_or("?"),
                            sector["N"].as_str().unwrap_or("?"),
                            sector["oracle"]
                                .as_str()
                                .map(|o| format!(", oracle = {o}"))
                                .unwrap_or_default(),
                        ));
                    }
                    out
                }
                other => {
                    return Err(CliError::Config(format!(
                        "count supports json or text, not `{other}`"
                    )))
                }
            };
            emit(&cli.out, &rendered)?;
            if strict && !all_match {
                return Err(CliError::Invariant(
                    "M/N or oracle mismatch under --strict".into(),
                ));
            }
            Ok(())
        }
        Command::Graph { steps, specialized } => {
            let dynkin = settings.dynkin(cli.dynkin.as_deref())?;
            let steps = settings.parse(*steps, "steps", 2i64)?;
            if steps < 1 {
                return Err(CliError::Config(format!(
                    "steps must be >= 1, got {steps}"
                )));
            }
            let specialized = settings.flag(*specialized, "specialized")?;
            let graph = build_belt(dynkin, steps as usize, specialized).map_err(classify)?;
            let rendered = match format.as_deref().unwrap_or("dot") {
                "dot" => export_dot(&graph),
                "json" => format!("{:#}", graph_json(&graph)),
                other => {
                    return Err(CliError::Config(format!(
                        "graph supports dot or json, not `{other}`"
                    )))
                }
            };
            emit(&cli.out, &rendered)
        }
    }
}
