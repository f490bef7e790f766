use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use idemkit::capacity::{maxplus_integral, possibility_integral, profile_of, PossibilityProfile};
use idemkit::convex::{barycenter_of_density, combine, hull_member_with};
use idemkit::doc::{self, AnyCapacity, AnyDensity, ToDocument};
use idemkit::iso::{density_exp, density_log};
use idemkit::laws::{self, LawConfig, Mutation, Suite};
use idemkit::score::DEFAULT_TOLERANCE;
use idemkit::{Density, Error, ExtendedScore, FiniteSpace};

/// Idempotent measures, max-plus integrals and max-plus convexity.
#[derive(Parser)]
#[command(name = "idemkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Max-plus integral of a function against a capacity.
    Integrate(IntegrateArgs),
    /// Max-plus hull membership and combinations.
    #[command(subcommand)]
    Hull(HullCommand),
    /// Idempotent barycenter of a density over generator points.
    Barycenter(BarycenterArgs),
    /// Run randomized law suites.
    Laws(LawsArgs),
    /// Convert between max-plus, max-times and possibility documents.
    Convert(ConvertArgs),
}

/// Documents are file paths or inline JSON.
#[derive(Args)]
struct IntegrateArgs {
    #[arg(long)]
    space: Option<String>,
    #[arg(long)]
    capacity: String,
    #[arg(long)]
    function: String,
    /// Also print the singleton formula and its distance to the integral.
    #[arg(long)]
    both: bool,
}

#[derive(Subcommand)]
enum HullCommand {
    /// Print whether a point lies in the hull of the generators.
    Member {
        #[arg(long)]
        generators: String,
        #[arg(long)]
        point: String,
    },
    /// Print the combination of the generators with the given weights.
    Combine {
        #[arg(long)]
        generators: String,
        #[arg(long)]
        weights: String,
    },
}

#[derive(Args)]
struct BarycenterArgs {
    #[arg(long)]
    generators: String,
    /// A weights document, or a maxplus density over `g0, g1, ...`.
    #[arg(long)]
    density: String,
}

#[derive(Args)]
struct LawsArgs {
    /// A suite name or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..=20))]
    max_space: u64,
    /// Print the JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Corrupt the density multiplication, to test the harness itself.
    #[arg(long, value_name = "MUTATION")]
    mutate: Option<String>,
    /// List the suites and the laws they check.
    #[arg(long)]
    list: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Maxplus,
    Maxtimes,
    Possibility,
}

#[derive(Args)]
struct ConvertArgs {
    #[arg(long, value_enum)]
    from: Kind,
    #[arg(long, value_enum)]
    to: Kind,
    #[arg(long)]
    input: String,
    /// Write here instead of standard output.
    #[arg(long)]
    output: Option<String>,
}

enum Failure {
    /// Rejected input: exit 2.
    Input(String),
    /// A law or computation failed: exit 1.
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Integrate(args) => integrate(args),
        Command::Hull(cmd) => hull(cmd),
        Command::Barycenter(args) => barycenter(args),
        Command::Laws(args) => run_laws(args),
        Command::Convert(args) => convert(args),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn load(arg: &str, what: &str) -> Result<Value, Failure> {
    doc::load(arg).map_err(|e| Failure::Input(format!("{what}: {e}")))
}

fn tolerance() -> Result<f64, Failure> {
    let config = LawConfig::default().with_env_tolerance().map_err(Failure::Input)?;
    Ok(config.tolerance.unwrap_or(DEFAULT_TOLERANCE))
}

fn integrate(args: IntegrateArgs) -> CmdResult {
    let space = match &args.space {
        Some(s) => Some(doc::parse_space(&load(s, "--space")?)?),
        None => None,
    };
    let capacity = doc::parse_capacity(&load(&args.capacity, "--capacity")?, space.as_ref())?;
    let space: FiniteSpace = capacity.space().clone();
    let phi = doc::parse_function(&load(&args.function, "--function")?, Some(&space))?;
    let value = maxplus_integral(&capacity.to_capacity(), &phi).map_err(|e| Failure::Internal(e.to_string()))?;
    println!("{value}");
    if args.both {
        let profile: PossibilityProfile = match &capacity {
            AnyCapacity::Possibility(p) => p.clone(),
            AnyCapacity::Capacity(c) => {
                profile_of(c).ok_or_else(|| Failure::Input("--both needs a possibility capacity".into()))?
            }
        };
        let direct = possibility_integral(&profile, &phi).map_err(|e| Failure::Internal(e.to_string()))?;
        println!("iX: {direct}");
        println!("difference: {}", ExtendedScore::finite(distance(value, direct)));
    }
    Ok(ExitCode::SUCCESS)
}

fn distance(a: ExtendedScore, b: ExtendedScore) -> f64 {
    match (a.value(), b.value()) {
        (Some(x), Some(y)) => (x - y).abs(),
        (None, None) => 0.0,
        _ => f64::INFINITY,
    }
}

fn hull(cmd: HullCommand) -> CmdResult {
    match cmd {
        HullCommand::Member { generators, point } => {
            let gens = doc::parse_points(&load(&generators, "--generators")?)?;
            let p = doc::parse_point(&load(&point, "--point")?)?;
            println!("{}", hull_member_with(&p, &gens, tolerance()?)?);
        }
        HullCommand::Combine { generators, weights } => {
            let gens = doc::parse_points(&load(&generators, "--generators")?)?;
            let w = doc::parse_weights(&load(&weights, "--weights")?)?;
            println!("{}", doc::format_point(&combine(&gens, &w)?));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn barycenter(args: BarycenterArgs) -> CmdResult {
    let gens = doc::parse_points(&load(&args.generators, "--generators")?)?;
    let raw = load(&args.density, "--density")?;
    let index = gens.index_space();
    let density = if raw.get("kind").is_some() {
        doc::parse_maxplus_density(&raw, Some(&index))?
    } else {
        let weights = doc::parse_weight_list(&raw)?;
        if weights.len() != gens.len() {
            return Err(Error::LengthMismatch { expected: gens.len(), found: weights.len() }.into());
        }
        Density::new(&index, weights)?
    };
    println!("{}", doc::format_point(&barycenter_of_density(&gens, &density)?));
    Ok(ExitCode::SUCCESS)
}

fn run_laws(args: LawsArgs) -> CmdResult {
    if args.list {
        for s in Suite::ALL {
            println!("{:<10} {}", s.name(), s.statement());
        }
        return Ok(ExitCode::SUCCESS);
    }
    let suites = Suite::parse_selection(&args.suite)
        .ok_or_else(|| Failure::Input(format!("unknown suite {:?}; see `laws --list`", args.suite)))?;
    let mutation = match &args.mutate {
        Some(m) => m.parse::<Mutation>().map_err(Failure::Input)?,
        None => Mutation::None,
    };
    let config = LawConfig {
        trials: args.trials,
        seed: args.seed,
        max_space: args.max_space as usize,
        tolerance: None,
        mutation,
    }
    .with_env_tolerance()
    .map_err(Failure::Input)?;

    let reports = laws::run_suites(&suites, &config);
    if args.json {
        let json = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])
        } else {
            serde_json::to_string_pretty(&reports)
        };
        println!("{}", json.map_err(|e| Failure::Internal(e.to_string()))?);
    } else {
        for r in &reports {
            println!("{r}");
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        if !args.json {
            eprintln!("{failed} of {} suites failed", reports.len());
        }
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn convert(args: ConvertArgs) -> CmdResult {
    let raw = load(&args.input, "--input")?;
    let kind = raw.get("kind").and_then(Value::as_str).unwrap_or("");
    let expected = match args.from {
        Kind::Maxplus => "maxplus",
        Kind::Maxtimes => "maxtimes",
        Kind::Possibility => "possibility",
    };
    if kind != expected {
        return Err(Failure::Input(format!("--from {expected} but the input document has kind {kind:?}")));
    }
    // Everything passes through the max-times density, which carries the
    // same data as a possibility profile.
    let times = match args.from {
        Kind::Maxplus => density_exp(&doc::parse_maxplus_density(&raw, None)?),
        Kind::Maxtimes => match doc::parse_density(&raw, None)? {
            AnyDensity::MaxTimes(g) => g,
            AnyDensity::MaxPlus(_) => unreachable!("kind checked above"),
        },
        Kind::Possibility => doc::parse_profile(&raw, None)?.into_density(),
    };
    let out = match args.to {
        Kind::Maxplus => density_log(&times).to_document(),
        Kind::Maxtimes => times.to_document(),
        Kind::Possibility => doc::profile_to_json(&PossibilityProfile::from(times)),
    };
    let text = serde_json::to_string_pretty(&out).map_err(|e| Failure::Internal(e.to_string()))?;
    match args.output {
        Some(path) => std::fs::write(&path, text + "\n").map_err(|e| Failure::Internal(format!("{path}: {e}")))?,
        None => println!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}
