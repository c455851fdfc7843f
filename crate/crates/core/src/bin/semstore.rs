use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use semstore_core::session::{Session, SessionError};

#[derive(Parser)]
#[command(name = "semstore", version, about = "In-memory RDF triple store")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load data files and report what was inserted.
    Load(Common),
    /// Run a SELECT query against the loaded data.
    Query(QueryArgs),
    /// Saturate the loaded data and report derivations and merges.
    Infer(InferArgs),
    /// Print triple, term and index statistics.
    Stats(StatsArgs),
}

#[derive(Args)]
struct Common {
    /// Data files: .trp, .nt or .pfx.
    #[arg(long = "data", num_args = 1..)]
    data: Vec<PathBuf>,
    /// Prefix file applied before any data file.
    #[arg(long)]
    prefixes: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Table,
    Tsv,
}

#[derive(Args)]
struct QueryArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    query: PathBuf,
    #[arg(long, value_enum, default_value = "table")]
    format: OutputFormat,
    /// Saturate before querying; terms then compare by sameAs class.
    #[arg(long)]
    infer: bool,
    /// Cross-check results with the brute-force evaluator, capped at this
    /// many candidate assignments.
    #[arg(long)]
    oracle_budget: Option<u128>,
}

#[derive(Args)]
struct InferArgs {
    #[command(flatten)]
    common: Common,
    /// Exit with status 1 if any inconsistency is found.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    infer: bool,
}

enum Failure {
    Usage(String),
    Inconsistent,
}

impl From<SessionError> for Failure {
    fn from(e: SessionError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn open(common: &Common, show_report: bool) -> Result<Session, Failure> {
    let mut session = Session::new();
    let mut paths = Vec::new();
    paths.extend(common.prefixes.iter().cloned());
    paths.extend(common.data.iter().cloned());
    let report = session.load(&paths)?;
    if show_report {
        print!("{report}");
    }
    if report.has_errors() {
        if !show_report {
            eprint!("{report}");
        }
        return Err(Failure::Usage(format!(
            "{} parse error(s) while loading",
            report.error_count()
        )));
    }
    Ok(session)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Load(common) => {
            open(&common, true)?;
        }
        Command::Query(args) => {
            let mut session = open(&args.common, false)?;
            if args.infer {
                session.infer()?;
            }
            let text = std::fs::read_to_string(&args.query)
                .map_err(|e| Failure::Usage(format!("{}: {e}", args.query.display())))?;
            let query = session
                .parse_query(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", args.query.display())))?;
            let table = match args.oracle_budget {
                Some(budget) => session.query_checked(&query, budget)?,
                None => session.query(&query),
            };
            match args.format {
                OutputFormat::Table => print!("{}", table.render_table(&session.prefixes)),
                OutputFormat::Tsv => print!("{}", table.render_tsv(&session.prefixes)),
            }
        }
        Command::Infer(args) => {
            let mut session = open(&args.common, false)?;
            let report = session.infer()?;
            print!("{}", report.render(&session.prefixes));
            if args.strict && !report.result.inconsistencies.is_empty() {
                return Err(Failure::Inconsistent);
            }
        }
        Command::Stats(args) => {
            let mut session = open(&args.common, false)?;
            if args.infer {
                session.infer()?;
            }
            print!("{}", session.stats());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Inconsistent) => ExitCode::from(1),
        Err(Failure::Usage(message)) => {
            eprintln!("semstore: {message}");
            ExitCode::from(2)
        }
    }
}
