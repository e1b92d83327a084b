//! `cubesum`: construct, derive, verify, and search for representations of
//! integers as sums of cubes of integer-coefficient polynomials.
//!
//! Exit codes: 0 success/verified, 1 verification failed, 2 usage or parse
//! error, 3 budget or bound exceeded.

use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use cubesum_core::{
    catalog_fixed, derive_five_residue, derive_four_even, derive_four_pq, derive_one_bivariate,
    derive_two_trivariate, families, represent_five, represent_four, search_shard, verifier_check,
    DerivationTrace, Polynomial, RepresentError, Representation, SearchError, SearchSpace,
    SymmetryMode, FIXED_IDS,
};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BOUND: u8 = 3;

#[derive(Parser)]
#[command(
    name = "cubesum",
    about = "Sums of cubes of integer-coefficient polynomials",
    version
)]
struct Cli {
    /// Output format for identities and reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Accepted for interface stability; enumeration order is deterministic
    /// and the seed changes nothing.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Represent an integer as a sum of 4 or 5 cubes of polynomials.
    #[command(allow_negative_numbers = true)]
    Represent {
        n: i64,
        /// Number of cubes: 5 always works; 4 needs a matching family.
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u8).range(4..=5))]
        cubes: u8,
    },
    /// Verify a serialized representation (`-` reads stdin).
    Verify { path: String },
    /// Re-derive an identity family from its ansatz.
    #[command(allow_negative_numbers = true)]
    Derive {
        #[arg(value_enum)]
        family: Family,
        /// Residue class for the five-cube family.
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=5))]
        j: u8,
        /// Shift for the five-cube family; must be congruent to j mod 6.
        /// Defaults to the catalog's representative for the class.
        #[arg(long)]
        shift: Option<i64>,
        /// Print the numbered derivation steps.
        #[arg(long)]
        explain: bool,
    },
    /// List the catalog or show one entry.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Exhaustive bounded search for cube representations of an integer.
    #[command(allow_negative_numbers = true)]
    Search {
        n: i64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(3..=5))]
        cubes: u8,
        #[arg(long, default_value_t = 2)]
        max_degree: u32,
        #[arg(long, default_value_t = 2)]
        coeff_bound: u32,
        /// Restrict leading coefficients to pair-cancelling shapes.
        #[arg(long, value_enum, default_value_t = Symmetry::None)]
        symmetry: Symmetry,
        /// Run one shard, written as `index/total` (e.g. `0/4`).
        #[arg(long)]
        shard: Option<String>,
        /// State budget; `CUBESUM_BUDGET` overrides the default.
        #[arg(long, env = "CUBESUM_BUDGET")]
        budget: Option<u64>,
        /// Write the result as a checkpoint JSON file.
        #[arg(long)]
        out: Option<String>,
    },
    /// Evaluate a polynomial at an integer point.
    Eval {
        /// Polynomial in canonical text form, e.g. "2*t^2 - 4*t - 1".
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Comma-separated bindings, e.g. "t=2,m=-3".
        #[arg(long, default_value = "")]
        at: String,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List fixed identities and parametrized families.
    List,
    /// Show one fixed identity by id.
    Show { id: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "four_pq", alias = "four-pq")]
    FourPq,
    #[value(name = "four_even", alias = "four-even")]
    FourEven,
    #[value(name = "one_bivariate", alias = "one-bivariate")]
    OneBivariate,
    #[value(name = "two_trivariate", alias = "two-trivariate")]
    TwoTrivariate,
    #[value(name = "five_residue", alias = "five-residue")]
    FiveResidue,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Symmetry {
    None,
    #[value(name = "pair_cancellation", alias = "pair-cancellation")]
    PairCancellation,
}

struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { message: message.into(), code: EXIT_USAGE }
    }

    fn bound(message: impl Into<String>) -> Self {
        Failure { message: message.into(), code: EXIT_BOUND }
    }
}

fn main() -> ExitCode {
    // Die quietly on closed pipes (`cubesum search ... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Represent { n, cubes } => cmd_represent(*n, *cubes, cli.format),
        Command::Verify { path } => cmd_verify(path, cli.format),
        Command::Derive { family, j, shift, explain } => {
            cmd_derive(*family, *j, *shift, *explain, cli.format)
        }
        Command::Catalog { action } => cmd_catalog(action, cli.format),
        Command::Search { n, cubes, max_degree, coeff_bound, symmetry, shard, budget, out } => {
            cmd_search(
                *n,
                *cubes,
                *max_degree,
                *coeff_bound,
                *symmetry,
                shard,
                *budget,
                out,
                cli.format,
            )
        }
        Command::Eval { poly, at } => cmd_eval(poly, at),
    }
}

fn print_representation(rep: &Representation, format: Format) {
    match format {
        Format::Text => println!("{}", rep.to_text()),
        Format::Json => println!("{}", rep.to_json()),
        Format::Latex => println!("{}", rep.to_latex()),
    }
}

fn cmd_represent(n: i64, cubes: u8, format: Format) -> Result<u8, Failure> {
    let rep = if cubes == 5 {
        represent_five(n)
    } else {
        match represent_four(n) {
            Ok(rep) => rep,
            Err(err @ RepresentError::NoFourCubeFamilyMatch { .. }) => {
                return Err(Failure::bound(err.to_string()));
            }
        }
    };
    if !verifier_check(&rep).ok {
        eprintln!("constructed representation failed verification");
        return Ok(EXIT_VERIFY_FAILED);
    }
    print_representation(&rep, format);
    Ok(0)
}

fn cmd_verify(path: &str, format: Format) -> Result<u8, Failure> {
    let data = if path == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| Failure::usage(format!("cannot read stdin: {e}")))?;
        buffer
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))?
    };
    let rep: Representation = serde_json::from_str(&data)
        .map_err(|e| Failure::usage(format!("parse error in {path}: {e}")))?;
    let report = verifier_check(&rep);
    match format {
        Format::Json => println!("{}", report.to_json()),
        _ => print!("{}", report.render_text()),
    }
    Ok(if report.ok { 0 } else { EXIT_VERIFY_FAILED })
}

fn print_trace(trace: &DerivationTrace, format: Format) {
    match format {
        Format::Text => print!("{}", trace.render_text()),
        Format::Latex => {
            for (i, step) in trace.steps.iter().enumerate() {
                println!("{}. {}\n   {}", i + 1, step.description, step.snapshot.render_latex());
            }
        }
        Format::Json => {}
    }
}

fn cmd_derive(
    family: Family,
    j: u8,
    shift: Option<i64>,
    explain: bool,
    format: Format,
) -> Result<u8, Failure> {
    let (rep, trace) = match family {
        Family::FourPq => derive_four_pq().map_err(|e| Failure::usage(e.to_string()))?,
        Family::FourEven => derive_four_even(),
        Family::OneBivariate => {
            derive_one_bivariate().map_err(|e| Failure::usage(e.to_string()))?
        }
        Family::TwoTrivariate => {
            derive_two_trivariate().map_err(|e| Failure::usage(e.to_string()))?
        }
        Family::FiveResidue => {
            let shift = shift.unwrap_or_else(|| cubesum_core::derivation::default_shift(j));
            derive_five_residue(j, shift).map_err(|e| Failure::usage(e.to_string()))?
        }
    };
    if format == Format::Json {
        let mut payload = serde_json::json!({ "representation": rep.to_json() });
        if explain {
            payload["trace"] = serde_json::to_value(&trace)
                .map_err(|e| Failure::usage(format!("trace serialization failed: {e}")))?;
        }
        println!("{payload}");
        return Ok(0);
    }
    print_representation(&rep, format);
    if explain {
        print_trace(&trace, format);
    }
    Ok(0)
}

fn cmd_catalog(action: &CatalogAction, format: Format) -> Result<u8, Failure> {
    match action {
        CatalogAction::List => {
            let fams = families();
            if format == Format::Json {
                let fixed: Vec<serde_json::Value> = FIXED_IDS
                    .iter()
                    .map(|id| {
                        let rep = catalog_fixed(id).expect("fixed ids resolve");
                        serde_json::json!({
                            "id": id,
                            "arity": rep.arity(),
                            "target": rep.target().to_string(),
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({ "fixed": fixed, "families": fams })
                );
                return Ok(0);
            }
            println!("fixed identities:");
            for id in FIXED_IDS {
                let rep = catalog_fixed(id).expect("fixed ids resolve");
                println!("  {id:<15} {} cubes, target {}", rep.arity(), rep.target());
            }
            println!("families:");
            for family in fams {
                println!(
                    "  {:<15} {} cubes, params ({}): {}",
                    family.id,
                    family.arity,
                    family.symbolic_params.join(", "),
                    family.description
                );
            }
            Ok(0)
        }
        CatalogAction::Show { id } => {
            let rep = catalog_fixed(id).map_err(|e| Failure::usage(e.to_string()))?;
            print_representation(&rep, format);
            Ok(0)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    n: i64,
    cubes: u8,
    max_degree: u32,
    coeff_bound: u32,
    symmetry: Symmetry,
    shard: &Option<String>,
    budget: Option<u64>,
    out: &Option<String>,
    format: Format,
) -> Result<u8, Failure> {
    let mut space = SearchSpace::new(n, cubes, max_degree, coeff_bound);
    if symmetry == Symmetry::PairCancellation {
        space.symmetry = SymmetryMode::PairCancellation;
    }
    if let Some(budget) = budget {
        space.budget = budget;
    }
    let (index, total) = match shard {
        None => (0, 1),
        Some(spec) => parse_shard(spec)?,
    };
    let result = match search_shard(&space, index, total) {
        Ok(result) => result,
        Err(err @ SearchError::BudgetExceeded { .. }) => {
            return Err(Failure::bound(err.to_string()));
        }
        Err(err) => return Err(Failure::usage(err.to_string())),
    };

    let checkpoint = result.checkpoint(&space, (index, total));
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string(&checkpoint).expect("checkpoint serialization is infallible")
            );
        }
        _ => {
            println!(
                "examined {} states in {:?}; {} representation(s) found",
                result.states_examined,
                result.elapsed,
                result.found.len()
            );
            for rep in &result.found {
                let marker =
                    if rep.has_zero_cube() { "  [degenerate: contains a zero cube]" } else { "" };
                match format {
                    Format::Latex => println!("{}{}", rep.to_latex(), marker),
                    _ => println!("{}{}", rep.to_text(), marker),
                }
            }
        }
    }
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(&checkpoint)
            .expect("checkpoint serialization is infallible");
        std::fs::write(path, json)
            .map_err(|e| Failure::usage(format!("cannot write {path}: {e}")))?;
        if format != Format::Json {
            println!("checkpoint written to {path}");
        }
    }
    Ok(0)
}

fn parse_shard(spec: &str) -> Result<(u32, u32), Failure> {
    let (index, total) = spec
        .split_once('/')
        .ok_or_else(|| Failure::usage(format!("shard must look like `0/4`, got `{spec}`")))?;
    let index = index
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("invalid shard index `{index}`")))?;
    let total = total
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("invalid shard total `{total}`")))?;
    Ok((index, total))
}

fn cmd_eval(poly: &str, at: &str) -> Result<u8, Failure> {
    let poly =
        Polynomial::parse(poly).map_err(|e| Failure::usage(format!("invalid polynomial: {e}")))?;
    let mut point: BTreeMap<String, BigInt> = BTreeMap::new();
    for binding in at.split(',').filter(|s| !s.trim().is_empty()) {
        let (var, value) = binding
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("binding must look like `t=2`, got `{binding}`")))?;
        let value: BigInt = value
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("invalid integer `{}`", value.trim())))?;
        point.insert(var.trim().to_string(), value);
    }
    let value = poly.eval(&point).map_err(|e| Failure::usage(e.to_string()))?;
    println!("{value}");
    Ok(0)
}
