use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use relcat::fincat::RawCategory;
use relcat::report::{self, Command, Config, Construction, Document, InputSpec, Leg};
use relcat::{Error, Limits, BUDGET_ENV};
use serde::Deserialize;

#[derive(Parser)]
#[command(
    name = "relcat",
    version,
    about = "Certificates for finite relative categories"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and validate a category; report two-out-of-three.
    Validate(Common),
    /// Integral homology of the nerve through degree d.
    NerveHomology(Common),
    /// The zigzag category C^k(X, Y).
    Zigzag(Common),
    /// Grothendieck (op)fibration check of dom or codom.
    CheckFibration(Common),
    /// Canonical isomorphism of weq RelFun(k, C) with the two-sided construction.
    TwoSided(Common),
    /// Homotopical three-arrow calculus up to K.
    Htac(Common),
    /// Hom-space homotopy pullback square for (X, Y).
    HomSpace(Common),
    /// Nerve homology of the classification levels 0..=n.
    Classify(Common),
    /// Segal condition certificate for n.
    Segal(Common),
    /// Bounded zigzag classes in Ho C(X, Y).
    HoHom(Common),
    /// Search for invertible non-weak-equivalences.
    Saturation(Common),
    /// Saturation plus the degeneracy certificate.
    Completeness(Common),
    /// Re-check a JSON report or certificate.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LegArg {
    Dom,
    Codom,
}

#[derive(Args)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Object budget for constructed categories (morphisms and simplices get ten times as much).
    #[arg(long, env = BUDGET_ENV)]
    budget: Option<usize>,
}

#[derive(Args)]
struct Common {
    /// Category JSON, or a construction such as {"construction": "arrow", "base": "c2of3.json"}.
    input: PathBuf,
    /// Homology degree.
    #[arg(long, default_value_t = 2)]
    d: usize,
    /// Bound on k and l for the three-arrow calculus.
    #[arg(long = "K", default_value_t = 2)]
    k: usize,
    /// Bound on zigzag length in Ho C.
    #[arg(long = "L", default_value_t = 4)]
    l: usize,
    /// Simplicial level.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Source object.
    #[arg(long)]
    x: Option<String>,
    /// Target object.
    #[arg(long)]
    y: Option<String>,
    /// Zigzag type, e.g. "-1,1,-1".
    #[arg(long = "type", value_delimiter = ',', allow_hyphen_values = true)]
    zigzag_type: Option<Vec<i64>>,
    /// Functor leg for check-fibration.
    #[arg(long, value_enum)]
    leg: Option<LegArg>,
    /// Longest natural-transformation zigzag tried for weak equivalences.
    #[arg(long, default_value_t = 2)]
    max_zigzag: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct VerifyArgs {
    /// A report written with --format json.
    report: PathBuf,
    #[command(flatten)]
    output: Output,
}

/// A failure before any report exists; always exit status 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(match e {
            Error::SizeBudgetExceeded { what, limit } => format!(
                "{what} exceeds the size budget of {limit}; raise it with --budget or {BUDGET_ENV}"
            ),
            e => e.to_string(),
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstructionFile {
    construction: Construction,
    base: PathBuf,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("cannot read {}: {e}", path.display())))
}

fn load_input(path: &Path) -> Result<InputSpec, Failure> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure(format!("{}: invalid JSON: {e}", path.display())))?;
    if value.get("construction").is_some() {
        let spec: ConstructionFile = serde_json::from_value(value)
            .map_err(|e| Failure(format!("{}: invalid construction: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new(".")).join(&spec.base);
        let category = RawCategory::from_json(&read(&base)?)?;
        return Ok(InputSpec {
            construction: Some(spec.construction),
            category,
        });
    }
    Ok(InputSpec {
        construction: None,
        category: RawCategory::from_json(&text)?,
    })
}

fn setup(output: &Output) -> Result<Limits, Failure> {
    if let Some(jobs) = output.jobs {
        if jobs == 0 {
            return Err(Failure("--jobs must be positive".into()));
        }
        // a second initialization in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match output.budget {
        Some(0) => Err(Failure("--budget must be positive".into())),
        Some(b) => Ok(Limits::default().with_budget(b)),
        None => Ok(Limits::default()),
    }
}

fn emit(output: &Output, text: &str) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure(format!("cannot write output: {e}"))),
    }
}

fn run_command(command: Command, args: &Common) -> Result<bool, Failure> {
    let limits = setup(&args.output)?;
    if args.d == 0
        && matches!(
            command,
            Command::Htac | Command::HomSpace | Command::Segal | Command::Completeness
        )
    {
        return Err(Failure("--d must be positive".into()));
    }
    let input = load_input(&args.input)?;
    let config = Config {
        d: args.d,
        k: args.k,
        l: args.l,
        n: args.n,
        max_zigzag: args.max_zigzag,
        x: args.x.clone(),
        y: args.y.clone(),
        zigzag_type: args.zigzag_type.clone(),
        leg: args.leg.map(|l| match l {
            LegArg::Dom => Leg::Dom,
            LegArg::Codom => Leg::Codom,
        }),
        limits,
    };
    let doc = report::run(command, &input, &config)?;
    let text = match args.output.format {
        Format::Json => doc.to_json(),
        Format::Text => report::text_summary(&doc),
    };
    emit(&args.output, &text)?;
    Ok(doc.passed())
}

fn run_verify(args: &VerifyArgs) -> Result<bool, Failure> {
    setup(&args.output)?;
    let doc = Document::from_json(&read(&args.report)?)?;
    let kind = serde_json::to_value(&doc.body)
        .ok()
        .and_then(|v| v.get("kind").and_then(|k| k.as_str().map(String::from)))
        .unwrap_or_default();
    let outcome = report::verify(&doc);
    let ok = match &outcome {
        Ok(()) => true,
        Err(Error::Verification(_)) => false,
        Err(e) => return Err(Failure(e.to_string())),
    };
    let text = match args.output.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&serde_json::json!({
                "kind": kind,
                "verified": ok,
                "error": outcome.err().map(|e| e.to_string()),
            }))
            .expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => match outcome {
            Ok(()) => format!("verified: {kind} report re-checks\n"),
            Err(e) => format!("not verified: {e}\n"),
        },
    };
    emit(&args.output, &text)?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Cmd::Validate(a) => run_command(Command::Validate, a),
        Cmd::NerveHomology(a) => run_command(Command::NerveHomology, a),
        Cmd::Zigzag(a) => run_command(Command::Zigzag, a),
        Cmd::CheckFibration(a) => run_command(Command::CheckFibration, a),
        Cmd::TwoSided(a) => run_command(Command::TwoSided, a),
        Cmd::Htac(a) => run_command(Command::Htac, a),
        Cmd::HomSpace(a) => run_command(Command::HomSpace, a),
        Cmd::Classify(a) => run_command(Command::Classify, a),
        Cmd::Segal(a) => run_command(Command::Segal, a),
        Cmd::HoHom(a) => run_command(Command::HoHom, a),
        Cmd::Saturation(a) => run_command(Command::Saturation, a),
        Cmd::Completeness(a) => run_command(Command::Completeness, a),
        Cmd::Verify(a) => run_verify(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
