//! Command-line surface for the concordia toolkit.
//!
//! Exit codes: 0 success, 1 verdict failure (invalid certificate, failed
//! selection), 2 usage error, 3 resource cap exceeded.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use concordia::certificate::verify_certificate;
use concordia::error::{CapError, FoxError};
use concordia::fox::{FoxEngine, Level};
use concordia::limits::Limits;
use concordia::parse::{parse_word, split_top_level_commas};
use concordia::planner::{parse_rational, plan};
use concordia::seifert::SeifertMatrix;
use concordia::signature::{lambda_j, CirclePoint, HermitianLaurentMatrix, RhoValue};
use concordia::special::{select_special_pair, SolutionMap, SpecialPairError};
use concordia::words::Word;
use concordia::{axes, generate_pair_set};

#[derive(Parser)]
#[command(
    name = "concordia",
    about = "Fox calculus, derived-series word problems, special pairs, and knot signature invariants",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fox derivatives of a word, at a quotient level or in the free group
    Fox(FoxArgs),
    /// Decide membership in a derived-series subgroup F^(k)
    Member(MemberArgs),
    /// Generate the recursive pair set P_n
    Pairs(PairsArgs),
    /// List the infection axes (components of P_{n-1})
    Axes(AxesArgs),
    /// Select a special pair for a solution map and emit a certificate
    #[command(name = "special-pair")]
    SpecialPair(SpecialPairArgs),
    /// Re-derive and re-check a certificate file
    #[command(name = "verify-cert")]
    VerifyCert(VerifyCertArgs),
    /// Alexander polynomial of a Seifert matrix
    Alex(SeifertFileArgs),
    /// Levine-Tristram signature profile over the unit circle
    Ltsig(LtsigArgs),
    /// Von Neumann rho-invariant over the infinite cyclic cover
    Rho(RhoArgs),
    /// Arf invariant of a Seifert matrix
    Arf(SeifertFileArgs),
    /// Assemble infection-plan numerics against a bound C
    Plan(PlanArgs),
}

#[derive(Args)]
struct FoxArgs {
    /// Word in the generators x1…x<rank>
    #[arg(long)]
    word: String,
    /// Coordinate i of the derivative; all coordinates when omitted
    #[arg(long)]
    i: Option<u32>,
    /// Quotient level k, or "inf" for the free group itself
    #[arg(long, default_value = "inf")]
    level: String,
    #[arg(long, default_value_t = 4)]
    rank: u32,
}

#[derive(Args)]
struct MemberArgs {
    #[arg(long)]
    word: String,
    /// Derived-series depth k
    #[arg(long)]
    k: u32,
    #[arg(long, default_value_t = 4)]
    rank: u32,
}

#[derive(Args)]
struct PairsArgs {
    #[arg(long)]
    n: u32,
    /// Print only the pair count
    #[arg(long, default_value_t = false)]
    count: bool,
}

#[derive(Args)]
struct AxesArgs {
    #[arg(long)]
    n: u32,
}

#[derive(Args)]
struct SpecialPairArgs {
    /// Target level of the induction
    #[arg(long)]
    n: u32,
    #[arg(long = "target-rank")]
    target_rank: u32,
    /// Comma-separated images of x1…x4 in the target generators
    #[arg(long)]
    images: String,
    /// Also write the certificate to this file
    #[arg(long)]
    cert: Option<String>,
}

#[derive(Args)]
struct VerifyCertArgs {
    #[arg(long)]
    cert: String,
}

#[derive(Args)]
struct SeifertFileArgs {
    /// Seifert matrix file: integer rows, comma-separated, one per line
    #[arg(long)]
    seifert: String,
}

#[derive(Args)]
struct LtsigArgs {
    #[arg(long)]
    seifert: Option<String>,
    /// Use the built-in reference form instead of a Seifert file
    #[arg(long = "lambda-j", default_value_t = false)]
    lambda_j: bool,
    #[arg(long, default_value_t = 1024)]
    samples: usize,
    /// Write a theta,omega_re,omega_im,signature profile to this file
    #[arg(long)]
    csv: Option<String>,
}

#[derive(Args)]
struct RhoArgs {
    #[arg(long)]
    seifert: Option<String>,
    #[arg(long = "lambda-j", default_value_t = false)]
    lambda_j: bool,
    /// Also run the sampling-based numeric route with this many samples
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Args)]
struct PlanArgs {
    #[arg(long)]
    n: u32,
    /// The Cheeger-Gromov bound, as an integer, fraction, or decimal
    #[arg(long = "C")]
    c: String,
}

enum Failure {
    /// A computed verdict of "no": invalid certificate, failed selection.
    Verdict(String),
    Usage(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verdict(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Verdict(m) | Failure::Usage(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<CapError> for Failure {
    fn from(e: CapError) -> Self {
        Failure::Cap(e.to_string())
    }
}

impl From<FoxError> for Failure {
    fn from(e: FoxError) -> Self {
        match e {
            FoxError::Cap(c) => c.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    let limits = Limits::from_env();
    match command {
        Command::Fox(args) => {
            let word = parse_word_arg(&args.word, args.rank)?;
            let level = parse_level(&args.level)?;
            let engine = FoxEngine::new(args.rank, limits);
            match args.i {
                Some(i) => {
                    if i == 0 || i > args.rank {
                        return Err(Failure::Usage(format!(
                            "coordinate {i} out of range for rank {}",
                            args.rank
                        )));
                    }
                    let d = engine.fox_derivative(i, &word, level)?;
                    println!("{d}");
                }
                None => {
                    let v = engine.fox_vector(&word, level)?;
                    for (i, entry) in v.entries.iter().enumerate() {
                        println!("d{} = {}", i + 1, entry);
                    }
                }
            }
            Ok(())
        }
        Command::Member(args) => {
            let word = parse_word_arg(&args.word, args.rank)?;
            let engine = FoxEngine::new(args.rank, limits);
            let verdict = engine.derived_member(&word, args.k)?;
            println!("{verdict}");
            Ok(())
        }
        Command::Pairs(args) => {
            let set = generate_pair_set(args.n)?;
            if args.count {
                println!("{}", set.len());
            } else {
                print!("{}", set.serialize());
            }
            Ok(())
        }
        Command::Axes(args) => {
            if args.n == 0 {
                return Err(Failure::Usage("axes are indexed from n = 1".into()));
            }
            for axis in axes(args.n)? {
                println!("{axis}");
            }
            Ok(())
        }
        Command::SpecialPair(args) => {
            let images = parse_images(&args.images, args.target_rank)?;
            let map = SolutionMap::new(args.target_rank, images)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            if args.n == 0 {
                return Err(Failure::Usage("the level n must be positive".into()));
            }
            let cert = select_special_pair(&map, args.n, limits).map_err(|e| match e {
                SpecialPairError::Cap(c) => Failure::Cap(c.to_string()),
                other => Failure::Verdict(other.to_string()),
            })?;
            let text = cert.serialize();
            if let Some(path) = &args.cert {
                fs::write(path, &text)
                    .map_err(|e| Failure::Usage(format!("cannot write {path}: {e}")))?;
            }
            print!("{text}");
            Ok(())
        }
        Command::VerifyCert(args) => {
            let text = fs::read_to_string(&args.cert)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", args.cert)))?;
            match verify_certificate(&text, limits) {
                Ok(()) => {
                    println!("certificate OK");
                    Ok(())
                }
                Err(e) => Err(Failure::Verdict(format!("certificate rejected: {e}"))),
            }
        }
        Command::Alex(args) => {
            let v = read_seifert(&args.seifert)?;
            println!("{}", v.alexander_poly());
            Ok(())
        }
        Command::Ltsig(args) => {
            let form = load_form(args.seifert.as_deref(), args.lambda_j)?;
            let profile = form
                .signature_profile()
                .map_err(|e| Failure::Cap(e.to_string()))?;
            for jump in &profile.jumps {
                match &jump.pi_fraction {
                    Some(frac) => println!("jump theta={} (pi*{frac})", jump.theta),
                    None => println!("jump theta={}", jump.theta),
                }
            }
            println!("arc_signatures = {:?}", profile.arc_values);
            println!("integral = {}", profile.integral);
            if let Some(path) = &args.csv {
                let mut out = String::from("theta,omega_re,omega_im,signature\n");
                let n = args.samples.max(1);
                for i in 0..n {
                    let theta = (i as f64 + 0.5) * 2.0 * std::f64::consts::PI / n as f64;
                    let sig = form
                        .lt_signature(CirclePoint::Angle(theta))
                        .map_err(|e| Failure::Cap(e.to_string()))?;
                    out.push_str(&format!(
                        "{theta},{},{},{sig}\n",
                        theta.cos(),
                        theta.sin()
                    ));
                }
                let rho = form.rho_z().map_err(|e| Failure::Cap(e.to_string()))?;
                out.push_str(&format!("rho_z={rho}\n"));
                fs::write(path, out)
                    .map_err(|e| Failure::Usage(format!("cannot write {path}: {e}")))?;
            }
            Ok(())
        }
        Command::Rho(args) => {
            let form = load_form(args.seifert.as_deref(), args.lambda_j)?;
            let rho = form.rho_z().map_err(|e| Failure::Cap(e.to_string()))?;
            match &rho {
                RhoValue::Exact(q) => println!("rho_z={q}"),
                RhoValue::Approx { value, bound } => println!("rho_z={value:.12}±{bound:.2e}"),
            }
            if let Some(samples) = args.samples {
                let (value, bound) = form
                    .rho_z_numeric(samples)
                    .map_err(|e| Failure::Cap(e.to_string()))?;
                println!("rho_z_numeric={value:.12}±{bound:.2e}");
            }
            Ok(())
        }
        Command::Arf(args) => {
            let v = read_seifert(&args.seifert)?;
            println!("{}", v.arf());
            Ok(())
        }
        Command::Plan(args) => {
            if args.n == 0 {
                return Err(Failure::Usage("the level n must be positive".into()));
            }
            let c = parse_rational(&args.c)
                .ok_or_else(|| Failure::Usage(format!("cannot parse C from {:?}", args.c)))?;
            let p = plan(args.n, c).map_err(|e| match e {
                concordia::planner::PlanError::Cap(c) => Failure::Cap(c.to_string()),
                other => Failure::Usage(other.to_string()),
            })?;
            print!("{}", p.serialize());
            Ok(())
        }
    }
}

fn parse_word_arg(text: &str, rank: u32) -> Result<Word, Failure> {
    parse_word(text, rank).map_err(|e| Failure::Usage(format!("bad word {text:?}: {e}")))
}

fn parse_level(text: &str) -> Result<Level, Failure> {
    match text {
        "inf" | "infinity" => Ok(Level::Infinity),
        _ => text
            .parse::<u32>()
            .map(Level::Finite)
            .map_err(|_| Failure::Usage(format!("bad level {text:?}"))),
    }
}

fn parse_images(text: &str, target_rank: u32) -> Result<Vec<Word>, Failure> {
    let parts = split_top_level_commas(text);
    if parts.len() != 4 {
        return Err(Failure::Usage(format!(
            "expected 4 comma-separated images, got {}",
            parts.len()
        )));
    }
    parts
        .iter()
        .map(|p| parse_word_arg(p, target_rank))
        .collect()
}

fn read_seifert(path: &str) -> Result<SeifertMatrix, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
    SeifertMatrix::parse(&text).map_err(|e| Failure::Usage(e.to_string()))
}

fn load_form(seifert: Option<&str>, use_lambda_j: bool) -> Result<HermitianLaurentMatrix, Failure> {
    match (seifert, use_lambda_j) {
        (Some(_), true) => Err(Failure::Usage(
            "--seifert and --lambda-j are mutually exclusive".into(),
        )),
        (Some(path), false) => Ok(HermitianLaurentMatrix::from_seifert(&read_seifert(path)?)),
        (None, true) => Ok(lambda_j()),
        (None, false) => Err(Failure::Usage(
            "one of --seifert or --lambda-j is required".into(),
        )),
    }
}
