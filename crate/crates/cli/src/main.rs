//! Command-line driver for word-map experiments.

mod config;
mod run;

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use config::{ExperimentConfig, Format};
use run::{Report, Row, COMMANDS};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] wordmap::Error),
    #[error("{0}")]
    Input(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_budget() => 2,
            _ => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "wordmap", version, about = "Word maps on groups: images, invariants and root-system checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Image of a word map on a finite group.
    Image(ExperimentConfig),
    /// Image of a word with constants.
    ImageConst(ExperimentConfig),
    /// Traces (or tr^2/det) taken on the image.
    TraceImage(ExperimentConfig),
    /// Unipotent, semisimple and class statistics of the image.
    Stats(ExperimentConfig),
    /// Magnus polynomial f_w.
    Magnus(ExperimentConfig),
    /// Primes dividing every coefficient of f_w.
    Primeset(ExperimentConfig),
    /// SL_2 trace polynomial.
    TracePoly(ExperimentConfig),
    /// Point counts of w = 1 and tr w = 2.
    Counts(ExperimentConfig),
    /// Commutator width.
    Width(ExperimentConfig),
    /// Covering numbers.
    Covering(ExperimentConfig),
    /// Classes C with C^2 = G.
    Thompson(ExperimentConfig),
    /// Search short words with one constant for identities.
    IdentityScan(ExperimentConfig),
    /// Coxeter elements of a root system.
    Coxeter(ExperimentConfig),
    /// Fixed-point-freeness table.
    Fpf(ExperimentConfig),
    /// Strictly firm parabolic test.
    Firm(ExperimentConfig),
    /// Surjectivity of the power map.
    PowerSurj(ExperimentConfig),
    /// Singularity of the N_g operator.
    Ng(ExperimentConfig),
    /// Run JSON-lines configs, one report per line.
    Batch(BatchArgs),
}

#[derive(clap::Args)]
struct BatchArgs {
    /// Config file, or - for stdin.
    file: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Command {
    fn split(self) -> Result<(&'static str, ExperimentConfig), BatchArgs> {
        use Command::*;
        Ok(match self {
            Image(c) => ("image", c),
            ImageConst(c) => ("image-const", c),
            TraceImage(c) => ("trace-image", c),
            Stats(c) => ("stats", c),
            Magnus(c) => ("magnus", c),
            Primeset(c) => ("primeset", c),
            TracePoly(c) => ("trace-poly", c),
            Counts(c) => ("counts", c),
            Width(c) => ("width", c),
            Covering(c) => ("covering", c),
            Thompson(c) => ("thompson", c),
            IdentityScan(c) => ("identity-scan", c),
            Coxeter(c) => ("coxeter", c),
            Fpf(c) => ("fpf", c),
            Firm(c) => ("firm", c),
            PowerSurj(c) => ("power-surj", c),
            Ng(c) => ("ng", c),
            Batch(b) => return Err(b),
        })
    }
}

fn open_out(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn write_csv(out: &mut dyn Write, rows: &[Row]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Input(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

fn emit(cfg: &ExperimentConfig, report: &Report) -> Result<(), CliError> {
    let mut out = open_out(&cfg.out)?;
    match cfg.format.unwrap_or_default() {
        Format::Json => writeln!(out, "{}", report.json)?,
        Format::Csv => match &report.rows {
            Some(rows) => write_csv(&mut *out, rows)?,
            None => return Err(CliError::Input("csv output is only available for table commands".into())),
        },
    }
    out.flush()?;
    Ok(())
}

fn error_record(line: usize, command: Option<&str>, e: &CliError) -> serde_json::Value {
    json!({
        "schema": 1,
        "line": line,
        "command": command,
        "error": { "message": e.to_string(), "exit_code": e.exit_code() },
    })
}

fn run_batch(args: &BatchArgs) -> Result<(), CliError> {
    let reader: Box<dyn BufRead> = if args.file.as_os_str() == "-" {
        Box::new(BufReader::new(io::stdin()))
    } else {
        Box::new(BufReader::new(File::open(&args.file)?))
    };
    let mut out = open_out(&args.out)?;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record = match serde_json::from_str::<ExperimentConfig>(&line) {
            Err(e) => error_record(i + 1, None, &CliError::Input(format!("invalid config: {e}"))),
            Ok(cfg) => match cfg.command.clone() {
                None => error_record(i + 1, None, &CliError::Input("config has no \"command\"".into())),
                Some(cmd) if !COMMANDS.contains(&cmd.as_str()) => {
                    error_record(i + 1, Some(&cmd), &CliError::Input(format!("unknown command {cmd:?}")))
                }
                Some(cmd) => match run::run(&cmd, &cfg) {
                    Ok(report) => report.json,
                    Err(e) => error_record(i + 1, Some(&cmd), &e),
                },
            },
        };
        writeln!(out, "{record}")?;
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match cli.command.split() {
        Ok((name, cfg)) => run::run(name, &cfg).and_then(|report| emit(&cfg, &report)),
        Err(batch) => run_batch(&batch),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
