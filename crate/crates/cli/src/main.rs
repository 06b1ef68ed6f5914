mod commands;
mod corpus;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use commands::{CliError, Outcome};

/// Weak and strong Lefschetz properties of Artinian monomial algebras.
#[derive(Debug, Parser)]
#[command(name = "lefschetz", version)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for randomized harness runs; recorded in the report.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixKind {
    Incidence,
    Multiplication,
    Slp1,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// f-vector of a complex.
    Fvector { file: PathBuf },
    /// Labeled matrix in one degree.
    Matrix {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        /// Defaults to incidence for complexes, multiplication for ideals.
        #[arg(long, value_enum)]
        kind: Option<MatrixKind>,
    },
    /// Generators of the incidence ideal in one degree.
    IncidenceIdeal {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
    },
    /// Analytic spread of an equigenerated monomial ideal.
    Spread {
        file: PathBuf,
        #[arg(long, conflicts_with = "facet_skeleton")]
        degree: Option<usize>,
        #[arg(long)]
        facet_skeleton: Option<usize>,
    },
    /// Weak Lefschetz verdicts per degree.
    Wlp {
        file: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
        /// 0, a prime, or `all` for the failing primes of every degree.
        #[arg(long = "char", default_value = "0")]
        characteristic: String,
        /// Also evaluate the normalized-volume route.
        #[arg(long)]
        mixed_multiplicity: bool,
    },
    /// Strong Lefschetz property in degree one, with ranks per power.
    Slp1 { file: PathBuf },
    /// Characteristics where the map in one degree loses full rank.
    CharAnalysis {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        /// Cross-check against the gcd of all maximal minors.
        #[arg(long)]
        oracle: bool,
    },
    /// Determinant and Cremona verdict for a square monomial system.
    Birational {
        file: PathBuf,
        /// Use the rows of the matrix in this degree as the system.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Component classification and the degree-one graph criteria.
    GraphCriteria { file: PathBuf },
    /// Last mixed multiplicity and positivity pattern.
    MixedMult {
        file: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Run every fixture in a directory against its `.expected` sidecar.
    Corpus { dir: PathBuf },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Fvector { .. } => "fvector",
            Command::Matrix { .. } => "matrix",
            Command::IncidenceIdeal { .. } => "incidence-ideal",
            Command::Spread { .. } => "spread",
            Command::Wlp { .. } => "wlp",
            Command::Slp1 { .. } => "slp1",
            Command::CharAnalysis { .. } => "char-analysis",
            Command::Birational { .. } => "birational",
            Command::GraphCriteria { .. } => "graph-criteria",
            Command::MixedMult { .. } => "mixed-mult",
            Command::Corpus { .. } => "corpus",
        }
    }
}

pub fn versions() -> Value {
    json!({
        "lefschetz": lefschetz::VERSION,
        "cli": env!("CARGO_PKG_VERSION"),
        "schema": 1,
    })
}

fn envelope(cli: &Cli, args: &[String], input: Value) -> serde_json::Map<String, Value> {
    let mut top = serde_json::Map::new();
    top.insert("input".into(), input);
    top.insert(
        "command".into(),
        json!({ "name": cli.command.name(), "args": args, "seed": cli.seed }),
    );
    top.insert("versions".into(), versions());
    top
}

fn json_text(top: serde_json::Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("report serializes");
    s.push('\n');
    s
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let args: Vec<String> = argv.iter().skip(1).cloned().collect();

    let (input, result) = match &cli.command {
        Command::Corpus { dir } => (
            json!({ "path": dir.display().to_string(), "kind": "corpus" }),
            corpus::run(dir),
        ),
        _ => commands::execute(&cli.command),
    };
    let mut top = envelope(&cli, &args, input);

    match result {
        Ok(Outcome {
            results,
            crosschecks,
            text,
            exit,
        }) => {
            match cli.format {
                Format::Text => emit(&text),
                Format::Json => {
                    top.insert("results".into(), results);
                    top.insert("crosschecks".into(), Value::Object(crosschecks));
                    emit(&json_text(top));
                }
            }
            ExitCode::from(exit)
        }
        Err(err) => {
            eprintln!("error: {}", err.message);
            if cli.format == Format::Json {
                top.insert(
                    "error".into(),
                    json!({ "class": err.class, "message": err.message }),
                );
                emit(&json_text(top));
            }
            ExitCode::from(err.exit_code())
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self.class {
            "input" => 1,
            "precondition" => 2,
            _ => 3,
        }
    }
}
