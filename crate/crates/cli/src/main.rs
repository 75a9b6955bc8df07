//! `hochserre`: Hochschild invariants of weighted hypersurfaces from the command line.

mod commands;
mod input;
mod report;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use hochserre_core::linalg::modular::is_prime;
use hochserre_core::{MultiplyOptions, RankMethod};

use commands::RunOptions;
use input::{Format, InputFile};
use report::{CommandEcho, Failure, Report};

#[derive(Debug, Parser)]
#[command(name = "hochserre", version, about = "Hochschild–Serre invariants of weighted hypersurfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Args)]
struct Flags {
    /// Emit the versioned JSON report instead of text tables.
    #[arg(long, global = true)]
    json: bool,
    /// Try ranks modulo this prime first; non-maximal results fall back to exact elimination.
    #[arg(long, global = true, value_name = "P")]
    modulus: Option<u64>,
    /// Resolve untwisted-times-twisted terms by restriction to the fixed locus (not part of the default model).
    #[arg(long, global = true)]
    assume_restriction_action: bool,
    /// Skip the Hilbert-series cross-check.
    #[arg(long, global = true)]
    no_oracle: bool,
    /// Include the nonzero matrix entries in `gamma` and `pairing` output.
    #[arg(long, global = true)]
    show_matrix: bool,
    /// Report wall-clock time; the JSON output is then no longer reproducible.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Quasi-homogeneity, Milnor number, Hilbert function and the sector table.
    Analyze { file: PathBuf },
    /// Dimensions of HH^k and HH_k with their sector decompositions.
    Hh {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        kmin: i64,
        #[arg(long, allow_hyphen_values = true)]
        kmax: i64,
    },
    /// One Hom space Hom(Id, S^0(m)[t]) with monomial bases.
    Hom {
        file: PathBuf,
        #[arg(short, allow_hyphen_values = true)]
        m: i64,
        #[arg(short, allow_hyphen_values = true)]
        t: i64,
    },
    /// The map HH^2 -> Hom(HH_-1, HH_1): rank, kernel and the rule audit.
    Gamma { file: PathBuf },
    /// Rank of Jac_e1 -> Hom(Jac_e2, Jac_{e1+e2}).
    Pairing {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        e1: i64,
        #[arg(long, allow_hyphen_values = true)]
        e2: i64,
    },
}

impl Command {
    fn file(&self) -> &PathBuf {
        match self {
            Command::Analyze { file }
            | Command::Hh { file, .. }
            | Command::Hom { file, .. }
            | Command::Gamma { file }
            | Command::Pairing { file, .. } => file,
        }
    }

    fn echo(&self) -> CommandEcho {
        let file = self.file().display().to_string();
        let (name, args) = match self {
            Command::Analyze { .. } => ("analyze", vec![]),
            Command::Hh { kmin, kmax, .. } => ("hh", vec![("kmin", *kmin), ("kmax", *kmax)]),
            Command::Hom { m, t, .. } => ("hom", vec![("m", *m), ("t", *t)]),
            Command::Gamma { .. } => ("gamma", vec![]),
            Command::Pairing { e1, e2, .. } => ("pairing", vec![("e1", *e1), ("e2", *e2)]),
        };
        CommandEcho::new(name, file, &args)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let echo = cli.command.echo();
    let input = InputFile::load(cli.command.file());
    let json = cli.flags.json
        || matches!(&input, Ok(s) if s.options.format == Some(Format::Json));
    let outcome = input
        .map_err(Failure::from)
        .and_then(|input| run(&cli, &input, echo.clone()));
    let elapsed = cli.flags.timing.then(|| start.elapsed());
    match outcome {
        Ok(mut report) => {
            report.set_timing(elapsed);
            if json {
                emit(&format!("{}\n", report.to_json()));
            } else {
                emit(&report.to_text());
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            if json {
                emit(&format!("{}\n", failure.to_json(echo)));
            }
            ExitCode::from(failure.exit_code())
        }
    }
}

/// Writes to stdout; a reader that hung up early is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn run(cli: &Cli, input: &InputFile, echo: CommandEcho) -> Result<Report, Failure> {
    let flags = &cli.flags;
    let file_opts = &input.options;
    let modulus = flags.modulus.or(file_opts.modulus);
    if let Some(p) = modulus {
        if !is_prime(p) {
            return Err(Failure::invalid(format!("modulus {p} is not a prime")));
        }
    }
    let opts = RunOptions {
        oracle: !flags.no_oracle && file_opts.oracle.unwrap_or(true),
        multiply: MultiplyOptions {
            assume_restriction_action: flags.assume_restriction_action
                || file_opts.assume_restriction_action.unwrap_or(false),
        },
        rank_method: modulus.map_or(RankMethod::Exact, RankMethod::Modular),
        show_matrix: flags.show_matrix,
    };
    let (vars, omega, model) = input.build()?;
    let mut report = Report::new(echo, input, &omega.render(&vars), &opts, model.warnings());
    if opts.oracle {
        let checks = commands::oracle_checks(&model)?;
        if let Some(bad) = checks.iter().find(|c| !c.agrees) {
            return Err(Failure::oracle(bad));
        }
    }
    match &cli.command {
        Command::Analyze { .. } => {
            let r = commands::analyze(&model, &opts)?;
            report.set_result(&r, commands::analyze_text(&r));
        }
        Command::Hh { kmin, kmax, .. } => {
            let r = commands::hh(&model, *kmin, *kmax);
            report.set_result(&r, commands::hh_text(&r));
        }
        Command::Hom { m, t, .. } => {
            let r = commands::hom(&model, *m, *t);
            report.set_result(&r, commands::hom_text(&r));
        }
        Command::Gamma { .. } => {
            let r = commands::gamma(&model, &opts)?;
            report.set_result(&r, commands::gamma_text(&r));
        }
        Command::Pairing { e1, e2, .. } => {
            let r = commands::pairing(&model, *e1, *e2, &opts);
            report.set_result(&r, commands::pairing_text(&r));
        }
    }
    Ok(report)
}
