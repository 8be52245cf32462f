use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hopf_join::certificate::{replay, run, Certificate, Request};
use hopf_join::io::{read_document, Document, Loader};
use hopf_join::{par, Error, Exec};

/// Exact checks and certificates for finite Hopf algebras, comodule
/// algebras, strong connections and fusion constructions.
#[derive(Parser)]
#[command(name = "hopf-join", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the certificate here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Run everything on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of an algebra, Hopf algebra, or comodule algebra file.
    Check { path: PathBuf },
    /// Solve for a strong connection on a comodule algebra.
    SolveConnection {
        path: PathBuf,
        /// Require ℓ(1) = 1⊗1.
        #[arg(long)]
        unital: bool,
    },
    /// Run fusion, equivariant-fusion, theorem-main or pullback scenarios.
    Fusion {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Run scenarios about finite group actions and joins.
    Classical {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Re-derive every verdict of a certificate without solving.
    VerifyCertificate { path: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

const EXIT_AXIOM: u8 = 1;
const EXIT_MALFORMED: u8 = 2;
const EXIT_PRECONDITION: u8 = 4;

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Precondition(_) => EXIT_PRECONDITION,
        Error::CheckFailed(_) | Error::NotInvertible(_) | Error::NotClosed { .. } | Error::NotWellDefined(_) => {
            EXIT_AXIOM
        }
        _ => EXIT_MALFORMED,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    match dispatch(&cli, exec) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}

fn dispatch(cli: &Cli, exec: Exec) -> Result<u8, Error> {
    match &cli.command {
        Command::Check { path } => {
            let cert = run(
                &Request::Check {
                    document: read_document(path)?,
                },
                &Loader::for_file(path),
                exec,
            )?;
            emit(cli, &[cert])
        }
        Command::SolveConnection { path, unital } => {
            let request = Request::SolveConnection {
                comodule: read_document(path)?,
                unital: *unital,
            };
            let cert = run(&request, &Loader::for_file(path), exec)?;
            emit(cli, &[cert])
        }
        Command::Fusion { paths } => scenarios(cli, paths, false, exec),
        Command::Classical { paths } => scenarios(cli, paths, true, exec),
        Command::VerifyCertificate { path } => verify(cli, path),
    }
}

fn load_scenario(path: &Path, classical: bool) -> Result<Request, Error> {
    let scenario = match read_document(path)? {
        Document::Scenario(s) => s,
        other => {
            return Err(Error::Parse(format!(
                "{}: expected a scenario document, found {}",
                path.display(),
                other.kind()
            )))
        }
    };
    if scenario.operation.is_classical() != classical {
        let right = if classical { "fusion" } else { "classical" };
        return Err(Error::Invalid(format!(
            "operation {} belongs to the {right} command",
            scenario.operation.name()
        )));
    }
    Request::Scenario { scenario }.inlined(&Loader::for_file(path))
}

/// Independent scenarios run concurrently; each one is single-threaded.
fn scenarios(cli: &Cli, paths: &[PathBuf], classical: bool, exec: Exec) -> Result<u8, Error> {
    let requests = paths
        .iter()
        .map(|p| load_scenario(p, classical))
        .collect::<Result<Vec<_>, _>>()?;
    let inner = if requests.len() > 1 { Exec::Sequential } else { exec };
    let results = par::map_slice(exec, &requests, |r| run(r, &Loader::new("."), inner));
    let certs = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    emit(cli, &certs)
}

fn emit(cli: &Cli, certs: &[Certificate]) -> Result<u8, Error> {
    let text = match cli.format {
        Format::Json if certs.len() == 1 => certs[0].to_json(),
        Format::Json => {
            let values = certs
                .iter()
                .map(|c| serde_json::to_value(c).expect("certificate serializes"))
                .collect::<Vec<_>>();
            let mut s = serde_json::to_string_pretty(&values).expect("certificate serializes");
            s.push('\n');
            s
        }
        Format::Text => certs.iter().map(Certificate::to_text).collect::<Vec<_>>().join("\n"),
    };
    write_out(cli, &text)?;
    if let Some(failed) = certs.iter().find(|c| !c.passed()) {
        if matches!(cli.format, Format::Json) || cli.output.is_some() {
            for r in &failed.reports {
                if let Some(c) = r.first_failure() {
                    eprintln!(
                        "{}: {} failed ({})",
                        r.subject,
                        c.name,
                        c.witness.as_deref().unwrap_or("-")
                    );
                }
            }
        }
    }
    Ok(certs.iter().map(|c| c.outcome.exit_code() as u8).max().unwrap_or(0))
}

fn write_out(cli: &Cli, text: &str) -> Result<(), Error> {
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify(cli: &Cli, path: &Path) -> Result<u8, Error> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let items = match value {
        serde_json::Value::Array(items) => items,
        single => vec![single],
    };
    let mut worst = 0;
    let mut summary = String::new();
    for item in items {
        let cert = Certificate::from_json(&item.to_string())?;
        let r = replay(&cert)?;
        if r.reproduced() {
            summary.push_str(&format!(
                "{}: reproduced {} verdicts, outcome {:?}\n",
                cert.id,
                cert.verdicts.len(),
                cert.outcome
            ));
        } else {
            worst = EXIT_AXIOM;
            summary.push_str(&format!("{}: NOT reproduced\n", cert.id));
            for d in &r.differences {
                summary.push_str(&format!("  {d}\n"));
            }
        }
    }
    write_out(cli, &summary)?;
    Ok(worst)
}
