use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use wpbm_core::constructions::{direct_sum_code, extended_code, plotkin_code, punctured_code, tensor_code};
use wpbm_core::{BlockSpace, Code, Elem, ProductOrder, SumOrder, DEFAULT_MAX_SPACE};
use wpbm_harness::checks::{min_distance, registry, Kind};
use wpbm_harness::instance::{Instance, InstanceError};
use wpbm_harness::report::summary_table;
use wpbm_harness::suite::{self, Settings};

#[derive(Parser)]
#[command(name = "wpbm", version, about = "Weighted poset block metric codes: parameters, constructions and verification")]
struct Cli {
    /// Largest ambient space a command may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SPACE)]
    max_space: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weight of a vector in the instance's space.
    Weight {
        instance: PathBuf,
        /// Coordinates separated by commas; `|` may separate blocks.
        #[arg(long)]
        vector: String,
    },
    /// Distance between two vectors.
    Distance {
        instance: PathBuf,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Minimum distance of the instance's code.
    Mindist { instance: PathBuf },
    /// Covering radius by full scan.
    CoveringRadius { instance: PathBuf },
    /// Packing radius, and whether the code is perfect.
    PackingRadius { instance: PathBuf },
    /// Coset leaders of a linear code, one line per coset.
    Cosets { instance: PathBuf },
    /// Vectors within a radius of a center.
    Ball {
        instance: PathBuf,
        #[arg(long)]
        center: String,
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        count_only: bool,
    },
    /// Builds a new code from one or two instances and prints its instance file.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        a: PathBuf,
        b: Option<PathBuf>,
        #[arg(long, value_enum)]
        order: Option<Order>,
        /// Block to delete, 1-based.
        #[arg(long)]
        block: Option<usize>,
        /// Store the linear span of a tensor product instead of the word set.
        #[arg(long)]
        span: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Runs the verification suite; one JSON report per line on stdout, a summary on stderr.
    Verify {
        /// Check ids or tags (comma separated); `all`, `hard` and `soft` also work.
        #[arg(long, default_value = "all", value_delimiter = ',')]
        suite: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trials per random check (defaults vary per check).
        #[arg(long)]
        trials: Option<u64>,
        /// Restrict generated instances to one field size.
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        threads: Option<usize>,
        /// Add elapsed microseconds to reports (makes output run-dependent).
        #[arg(long)]
        timings: bool,
        /// Evaluate on these instances instead of generated ones.
        #[arg(long)]
        instance: Vec<PathBuf>,
        /// Rerun a single trial of a single check from its seed.
        #[arg(long)]
        replay: Option<u64>,
        /// Print only the summary table.
        #[arg(long)]
        quiet: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    DirectSum,
    Plotkin,
    Extend,
    Puncture,
    Tensor,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Disjoint,
    Linear,
    Cartesian,
    Lex,
}

#[derive(Debug)]
enum CliError {
    Instance(InstanceError),
    Core(wpbm_core::Error),
    Usage(String),
}

impl From<InstanceError> for CliError {
    fn from(e: InstanceError) -> Self {
        CliError::Instance(e)
    }
}

impl From<wpbm_core::Error> for CliError {
    fn from(e: wpbm_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Instance(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(s) => f.write_str(s),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_space(path: &Path, max_space: u64) -> Result<BlockSpace, CliError> {
    Ok(Instance::load(path)?.space(max_space)?)
}

fn load_code(path: &Path, max_space: u64) -> Result<Code, CliError> {
    Ok(Instance::load(path)?.code(max_space)?)
}

fn parse_vector(space: &BlockSpace, text: &str) -> Result<Vec<Elem>, CliError> {
    let v = text
        .split([',', '|'])
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let x: u32 = t.parse().map_err(|_| CliError::Usage(format!("not a number: {t:?}")))?;
            Ok(space.field().element(x)?)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    space.check_vector(&v)?;
    Ok(v)
}

fn print(value: serde_json::Value) {
    println!("{value}");
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let max = cli.max_space;
    match cli.command {
        Command::Weight { instance, vector } => {
            let space = load_space(&instance, max)?;
            let u = parse_vector(&space, &vector)?;
            print(json!({ "weight": space.weight(&u)? }));
        }
        Command::Distance { instance, u, v } => {
            let space = load_space(&instance, max)?;
            let (u, v) = (parse_vector(&space, &u)?, parse_vector(&space, &v)?);
            print(json!({ "distance": space.distance(&u, &v)? }));
        }
        Command::Mindist { instance } => {
            let code = load_code(&instance, max)?;
            print(json!({ "size": code.size() as u64, "min_distance": min_distance(&code)? }));
        }
        Command::CoveringRadius { instance } => {
            let code = load_code(&instance, max)?;
            print(json!({ "covering_radius": code.covering_radius()? }));
        }
        Command::PackingRadius { instance } => {
            let code = load_code(&instance, max)?;
            let rho = code.packing_radius()?;
            print(json!({ "packing_radius": rho, "perfect": code.is_r_perfect(rho)? }));
        }
        Command::Cosets { instance } => {
            let code = load_code(&instance, max)?;
            let table = code.coset_table()?;
            for (leader, w) in table.leaders.iter().zip(&table.weights) {
                print(json!({ "leader": leader, "weight": w }));
            }
            eprintln!("{} cosets, covering radius {}", table.len(), table.max_weight);
        }
        Command::Ball { instance, center, radius, count_only } => {
            let space = load_space(&instance, max)?;
            let c = parse_vector(&space, &center)?;
            if count_only {
                print(json!({ "count": space.ball_size(&c, radius)? }));
            } else {
                for v in space.ball(&c, radius)? {
                    print(json!(v));
                }
            }
        }
        Command::Construct { kind, a, b, order, block, span, output } => {
            let c1 = load_code(&a, max)?;
            let second = || -> Result<Code, CliError> {
                let b = b.as_ref().ok_or_else(|| CliError::Usage("this construction needs two instances".into()))?;
                load_code(b, max)
            };
            let sum = || match order {
                None | Some(Order::Disjoint) => Ok(SumOrder::Disjoint),
                Some(Order::Linear) => Ok(SumOrder::Linear),
                _ => Err(CliError::Usage("sums take --order disjoint or linear".into())),
            };
            let result = match kind {
                ConstructKind::DirectSum => direct_sum_code(&c1, &second()?, sum()?)?,
                ConstructKind::Plotkin => plotkin_code(&c1, &second()?, sum()?)?,
                ConstructKind::Extend => extended_code(&c1)?,
                ConstructKind::Puncture => {
                    let i = block.ok_or_else(|| CliError::Usage("puncture needs --block".into()))?;
                    if i == 0 {
                        return Err(CliError::Usage("blocks are numbered from 1".into()));
                    }
                    punctured_code(&c1, i - 1)?
                }
                ConstructKind::Tensor => {
                    let o = match order {
                        None | Some(Order::Cartesian) => ProductOrder::Cartesian,
                        Some(Order::Lex) => ProductOrder::Lex,
                        _ => return Err(CliError::Usage("tensor takes --order cartesian or lex".into())),
                    };
                    tensor_code(&c1, &second()?, o, span)?
                }
            };
            let inst = Instance::from_code(&result.code);
            eprintln!("{}: {} words, n = {}", result.provenance, result.code.size(), result.space().n());
            match output {
                Some(path) => inst.save(path)?,
                None => println!("{}", inst.canonical()?.to_pretty()),
            }
        }
        Command::Verify { suite: filters, seed, trials, q, threads, timings, instance, replay, quiet } => {
            if let Some(n) = threads {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .map_err(|e| CliError::Usage(e.to_string()))?;
            }
            let settings = Settings { seed, trials, q, max_space: max, timings };
            let checks = suite::select(&filters);
            if checks.is_empty() {
                let known: Vec<_> = registry().iter().map(|c| c.id).collect();
                return Err(CliError::Usage(format!("no check matches {filters:?}; known ids: {}", known.join(", "))));
            }
            let reports = if let Some(s) = replay {
                let [check] = checks.as_slice() else {
                    return Err(CliError::Usage("--replay needs --suite naming exactly one check".into()));
                };
                if matches!(check.kind, Kind::Exhaustive { .. }) {
                    eprintln!("{}: exhaustive check, seed is the case index", check.id);
                }
                vec![suite::replay(check, s, &settings)?]
            } else if !instance.is_empty() {
                let codes = instance.iter().map(|p| load_code(p, max)).collect::<Result<Vec<_>, _>>()?;
                suite::run_on(&checks, &codes, &settings)
            } else {
                suite::run(&checks, &settings)
            };
            if !quiet {
                for r in &reports {
                    println!("{}", r.to_json_line());
                }
            }
            eprint!("{}", summary_table(&reports));
            if suite::any_hard_failure(&reports) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
