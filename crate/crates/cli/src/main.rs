mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use movoid::gf::Elem;
use movoid::pointfile::SpaceKind;
use movoid::Error;

use commands::Outcome;

#[derive(Debug, Parser)]
#[command(
    name = "movoid",
    version,
    about = "Constructions, checks and classification of m-ovoids of symplectic polar spaces"
)]
pub struct Cli {
    /// Print machine-readable JSON instead of a summary.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an m-ovoid and write it as a point file.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Check that a point file is an m-ovoid and report its spectra.
    Verify(VerifyArgs),
    /// Run a lemma suite.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Enumerate all m-ovoids and split them into isomorphism classes.
    Classify(ClassifyArgs),
    /// Export data for external tools.
    #[command(subcommand)]
    Export(ExportCmd),
}

#[derive(Debug, Subcommand)]
enum ConstructCmd {
    /// Zero set of a quadric from the pencil construction.
    Pencil {
        #[command(flatten)]
        params: PencilParams,
        #[arg(long)]
        out: PathBuf,
    },
    /// The orbit construction inside the Baer subgeometry.
    Glued {
        #[command(flatten)]
        params: GluedParams,
        #[arg(long)]
        out: PathBuf,
        /// Also write the group as permutation lists.
        #[arg(long)]
        emit_group: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct PencilParams {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u32,
    #[arg(long)]
    mu: Elem,
    /// Encoding of δ; defaults to the smallest valid element.
    #[arg(long)]
    delta: Option<Elem>,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct GluedParams {
    #[arg(long)]
    q: u32,
    /// Encoding of ω in GF(q²).
    #[arg(long)]
    omega: Option<Elem>,
    /// Encoding of γ in GF(q²).
    #[arg(long)]
    gamma: Option<Elem>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_space)]
    space: SpaceKind,
    #[arg(long)]
    q: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    points: PathBuf,
    /// Also count over every line of the ambient projective space.
    #[arg(long)]
    all_lines: bool,
}

#[derive(Debug, Subcommand)]
enum CheckCmd {
    PencilLemmas {
        #[command(flatten)]
        params: PencilParams,
    },
    GluedLemmas {
        #[command(flatten)]
        params: GluedParams,
    },
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// Split the solutions into isomorphism classes.
    #[arg(long)]
    iso: bool,
    /// Branch on the most constrained generator.
    #[arg(long)]
    heuristic: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Subcommand)]
enum ExportCmd {
    /// Point–generator incidence of W(2n+1, q).
    Incidence {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = ExportFormat::Text)]
        format: ExportFormat,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Text,
    Json,
}

fn parse_space(s: &str) -> Result<SpaceKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Usage(_) | Error::Config(_) | Error::ScaleCap(_) | Error::Io(_) | Error::Json(_) => {
            2
        }
        _ => 1,
    }
}

fn run(cli: Cli) -> movoid::Result<Outcome> {
    let jobs = cli.jobs as usize;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    pool.install(|| match cli.command {
        Command::Construct(ConstructCmd::Pencil { params, out }) => {
            commands::construct_pencil(params, &out)
        }
        Command::Construct(ConstructCmd::Glued {
            params,
            out,
            emit_group,
        }) => commands::construct_glued(params, &out, emit_group.as_deref()),
        Command::Verify(args) => commands::verify(&args),
        Command::Check(CheckCmd::PencilLemmas { params }) => commands::check_pencil(params),
        Command::Check(CheckCmd::GluedLemmas { params }) => commands::check_glued(params),
        Command::Classify(args) => commands::classify(&args, jobs),
        Command::Export(ExportCmd::Incidence { q, n, format, out }) => {
            commands::export_incidence(q, n, format, out.as_deref())
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(outcome) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&outcome.json).expect("json output")
                );
            } else {
                print!("{}", outcome.summary);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
