use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use syssig::convert::{convert, Representation, Route, SystemVector};
use syssig::document::{
    looks_like_vector, parse_quality, parse_structure, parse_vector, rational_strings,
};
use syssig::oracle::BOLAND_CAP;
use syssig::report::{analyze, dependent, AnalyzeReport};
use syssig::verify::{verify_system, verify_vector, VerifyReport};
use syssig::{Error, ErrorKind};

/// Exact signature, tail signature, domination and reliability-polynomial
/// conversions for semicoherent systems.
#[derive(Parser)]
#[command(name = "syssig", version)]
struct Cli {
    /// Formula family for conversion steps that offer more than one.
    #[arg(long, global = true, value_parser = parse_route)]
    route: Option<Route>,

    /// Write the result here instead of stdout (`-` is stdout).
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Largest n for which verification runs the brute-force oracles.
    #[arg(long, global = true, default_value_t = BOLAND_CAP)]
    verify_caps: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every representation of a system.
    Analyze {
        /// System document (`-` for stdin).
        system: PathBuf,
        /// Also cross-check every route and the oracles.
        #[arg(long)]
        verify: bool,
    },
    /// Convert a vector document between representations.
    Convert {
        /// signature, tail, domination, polynomial, phi or dual-domination.
        #[arg(long, value_parser = parse_representation)]
        from: Representation,
        /// Target representation; same names as `--from`.
        #[arg(long, value_parser = parse_representation)]
        to: Representation,
        /// Vector document (`-` for stdin).
        vector: PathBuf,
    },
    /// Probability signature of a system with dependent lifetimes.
    Dependent { system: PathBuf, quality: PathBuf },
    /// Cross-check all routes on a system or vector document.
    Verify { input: PathBuf },
}

fn parse_route(s: &str) -> Result<Route, Error> {
    s.parse()
}

fn parse_representation(s: &str) -> Result<Representation, Error> {
    s.parse()
}

enum Failure {
    Io(String),
    Library(Error),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
}

#[derive(Serialize)]
struct ErrorDocument {
    error: ErrorBody,
}

#[derive(Serialize)]
struct VectorOutput {
    representation: &'static str,
    n: usize,
    values: Vec<String>,
}

#[derive(Serialize)]
struct AnalyzeOutput {
    #[serde(flatten)]
    report: AnalyzeReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<VerifyReport>,
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
    }
}

fn emit<T: Serialize>(cli: &Cli, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    match &cli.output {
        Some(path) if path.as_os_str() != "-" => {
            fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
        }
        _ => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("stdout: {e}"))),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Analyze { system, verify } => {
            let phi = parse_structure(&read_input(system)?)?;
            let verification = if *verify {
                Some(verify_system(&phi, cli.verify_caps)?)
            } else {
                None
            };
            let failed = verification.as_ref().is_some_and(|v| !v.passed);
            emit(
                cli,
                &AnalyzeOutput {
                    report: analyze(&phi)?,
                    verification,
                },
            )?;
            if failed {
                return Err(Failure::Mismatch);
            }
        }
        Command::Convert { from, to, vector } => {
            let doc = parse_vector(&read_input(vector)?)?;
            let value = SystemVector::from_document(&doc, Some(*from))?;
            let out = convert(&value, *to, cli.route)?;
            emit(
                cli,
                &VectorOutput {
                    representation: out.representation().name(),
                    n: out.n(),
                    values: rational_strings(out.values()),
                },
            )?;
        }
        Command::Dependent { system, quality } => {
            let phi = parse_structure(&read_input(system)?)?;
            let q = parse_quality(&read_input(quality)?)?;
            if q.n() != phi.n() {
                return Err(Error::DimensionMismatch {
                    expected: phi.n(),
                    found: q.n(),
                }
                .into());
            }
            emit(cli, &dependent(&phi, &q.quality()?)?)?;
        }
        Command::Verify { input } => {
            let text = read_input(input)?;
            let report = if looks_like_vector(&text)? {
                let value = SystemVector::from_document(&parse_vector(&text)?, None)?;
                verify_vector(&value)
            } else {
                verify_system(&parse_structure(&text)?, cli.verify_caps)?
            };
            emit(cli, &report)?;
            if !report.passed {
                if let Some(first) = report.failures().next() {
                    eprintln!(
                        "{}",
                        serde_json::to_string(&ErrorDocument {
                            error: ErrorBody {
                                kind: "mismatch",
                                message: format!(
                                    "{}: {}",
                                    first.name,
                                    first.detail.as_deref().unwrap_or("")
                                ),
                            },
                        })
                        .expect("error serializes")
                    );
                }
                return Err(Failure::Mismatch);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(failure) => {
            let (code, kind, message) = match failure {
                Failure::Io(message) => (2, "io", message),
                Failure::Library(e) => match e.kind() {
                    ErrorKind::Parse => (2, "parse", e.to_string()),
                    ErrorKind::Validation => (3, "validation", e.to_string()),
                    ErrorKind::ResourceCap => (4, "resource-cap", e.to_string()),
                },
                Failure::Mismatch => unreachable!(),
            };
            let doc = ErrorDocument {
                error: ErrorBody { kind, message },
            };
            eprintln!("{}", serde_json::to_string(&doc).expect("error serializes"));
            ExitCode::from(code)
        }
    }
}
