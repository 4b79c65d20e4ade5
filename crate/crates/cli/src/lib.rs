//! Command-line driver for the `msdep` independence test.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code: 0 on success, 1 on internal failures, 2 on invalid input.

pub mod args;
pub mod error;
pub mod report;
pub mod smooth;
pub mod svg;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;

use clap::Parser;
use msdep::io::{read_csv, write_csv};
use msdep::{
    empirical_power_with, run_test_with, sample_distribution, BivariateSample, PowerConfig, Seed,
    TestReport,
};

use crate::args::{
    Cli, Command, Format, InputArgs, PowerArgs, SimulateArgs, TestArgs, ZprofileArgs,
};
pub use crate::error::{CliError, Result};
use crate::report::{PowerDoc, ReportDoc};

pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = match cli.command {
        Command::Test(a) => cmd_test(&a, stdout),
        Command::Zprofile(a) => cmd_zprofile(&a, stdout, stderr),
        Command::Simulate(a) => cmd_simulate(&a, stdout),
        Command::Power(a) => cmd_power(&a, stdout),
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn load(io_args: &InputArgs) -> Result<BivariateSample> {
    match &io_args.input {
        Some(path) => {
            let file = File::open(path).map_err(|source| CliError::Read {
                path: path.clone(),
                source,
            })?;
            Ok(read_csv(file)?)
        }
        None => {
            let mut text = Vec::new();
            io::stdin()
                .read_to_end(&mut text)
                .map_err(|source| CliError::Read {
                    path: "<stdin>".into(),
                    source,
                })?;
            Ok(read_csv(text.as_slice())?)
        }
    }
}

fn emit(path: Option<&Path>, stdout: &mut dyn Write, bytes: &[u8]) -> Result<()> {
    let (what, res) = match path {
        Some(p) => (p.display().to_string(), std::fs::write(p, bytes)),
        None => ("standard output".to_string(), stdout.write_all(bytes)),
    };
    res.map_err(|source| CliError::Write { what, source })
}

fn json(value: &impl serde::Serialize) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn analyse(io_args: &InputArgs, engine: &args::EngineArgs) -> Result<TestReport> {
    let perms = engine.perms_or(args::EngineArgs::DEFAULT_PERMS);
    if perms < 2 {
        return Err(CliError::Usage("--perms must be at least 2".into()));
    }
    let sample = load(io_args)?;
    Ok(run_test_with(
        &sample,
        engine.stat,
        perms,
        Seed::new(engine.seed),
        &engine.engine(),
    )?)
}

fn cmd_test(a: &TestArgs, stdout: &mut dyn Write) -> Result<()> {
    let report = analyse(&a.io, &a.engine)?;
    let doc = ReportDoc::new(&report, a.io.verbose);
    let bytes = match a.io.format {
        Format::Json => json(&doc)?,
        Format::Csv => {
            let mut buf = Vec::new();
            doc.write_summary_csv(&mut buf).expect("writing to memory");
            buf
        }
    };
    emit(a.io.output.as_deref(), stdout, &bytes)
}

fn cmd_zprofile(a: &ZprofileArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    if a.smooth_window == 0 {
        return Err(CliError::Usage("--smooth-window must be at least 1".into()));
    }
    let report = analyse(&a.io, &a.engine)?;
    let mut doc = ReportDoc::new(&report, a.io.verbose);
    let smoothed = smooth::moving_average(&doc.z, a.smooth_window).unwrap_or_else(|| {
        let _ = writeln!(
            stderr,
            "warning: smoothing window {} exceeds the {} z-scores; writing the raw series",
            a.smooth_window,
            doc.z.len()
        );
        doc.z.clone()
    });
    doc.z_smoothed = Some(smoothed);

    if let Some(path) = &a.svg {
        let chart = svg::zprofile_svg(&doc.z, doc.z_smoothed.as_deref());
        emit(Some(path), stdout, chart.as_bytes())?;
    }
    let bytes = match a.io.format {
        Format::Json => json(&doc)?,
        Format::Csv => {
            let mut buf = Vec::new();
            doc.write_profile_csv(&mut buf).expect("writing to memory");
            buf
        }
    };
    emit(a.io.output.as_deref(), stdout, &bytes)
}

fn cmd_simulate(a: &SimulateArgs, stdout: &mut dyn Write) -> Result<()> {
    let spec = a.dist.spec()?;
    if a.dist.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let sample = sample_distribution(&spec, a.dist.n, Seed::new(a.seed))?;
    let mut buf = Vec::new();
    write_csv(&sample, &mut buf).expect("writing to memory");
    emit(a.output.as_deref(), stdout, &buf)
}

fn cmd_power(a: &PowerArgs, stdout: &mut dyn Write) -> Result<()> {
    let cfg = PowerConfig {
        spec: a.dist.spec()?,
        n: a.dist.n,
        replicates: a.reps,
        perms: a.engine.perms_or(args::EngineArgs::DEFAULT_POWER_PERMS),
        level: a.level,
        kind: a.engine.stat,
        seed: Seed::new(a.engine.seed),
    };
    cfg.validate()?;
    let engine = a.engine.engine();
    let result = empirical_power_with(&cfg, &engine)?;
    emit(
        a.output.as_deref(),
        stdout,
        &json(&PowerDoc::new(&cfg, &engine, result))?,
    )
}
