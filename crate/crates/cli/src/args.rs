use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use msdep::{DistributionSpec, EngineConfig, NullVariant, PValueRule, StatisticKind};

use crate::error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(
    name = "msdep",
    version,
    about = "Multiscale permutation test of independence"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test a two-column CSV sample for dependence.
    Test(TestArgs),
    /// Write the per-scale z-scores and their moving average.
    Zprofile(ZprofileArgs),
    /// Draw a sample from a named distribution as CSV.
    Simulate(SimulateArgs),
    /// Estimate the rejection rate on repeated simulated samples.
    Power(PowerArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    /// Base statistic: phi, cor or dcor.
    #[arg(long, default_value = "phi")]
    pub stat: StatisticKind,
    /// Number of permutations B [default: 1000; 200 for `power`].
    #[arg(long)]
    pub perms: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Standardization of permuted replicates: box or leave-one-out.
    #[arg(long, default_value = "box")]
    pub null_variant: NullVariant,
    /// p-value rule: none or add-one.
    #[arg(long, default_value = "none")]
    pub p_smoothing: PValueRule,
}

impl EngineArgs {
    pub const DEFAULT_PERMS: usize = 1000;
    pub const DEFAULT_POWER_PERMS: usize = 200;

    pub fn perms_or(&self, default: usize) -> usize {
        self.perms.unwrap_or(default)
    }

    pub fn engine(&self) -> EngineConfig {
        EngineConfig {
            null_variant: self.null_variant,
            p_value: self.p_smoothing,
            ..EngineConfig::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Two-column CSV file; standard input when omitted.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Destination file; standard output when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include the permuted psi values in JSON output.
    #[arg(long)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct ZprofileArgs {
    #[command(flatten)]
    pub io: InputArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[arg(long, default_value_t = 4)]
    pub smooth_window: usize,
    /// Also draw the profile as an SVG line chart.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    /// Family name, optionally with its parameter (`bex:3`, `bvn:0.8`).
    #[arg(long)]
    pub dist: String,
    /// Depth of the bex family.
    #[arg(long)]
    pub d: Option<u32>,
    /// Noise level of the `-l` families.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Correlation of the bvn family.
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long)]
    pub n: usize,
}

impl DistArgs {
    pub fn spec(&self) -> Result<DistributionSpec> {
        if self.dist.contains(':') {
            if self.d.is_some() || self.lambda.is_some() || self.rho.is_some() {
                return Err(CliError::Usage(format!(
                    "--dist {} already carries its parameter",
                    self.dist
                )));
            }
            return Ok(self.dist.parse()?);
        }
        let takes = |flag: &str| match (self.dist.as_str(), flag) {
            ("bex", "d") | ("bvn", "rho") => true,
            (name, "lambda") => name.ends_with("-l"),
            _ => false,
        };
        for (flag, given) in [
            ("d", self.d.is_some()),
            ("lambda", self.lambda.is_some()),
            ("rho", self.rho.is_some()),
        ] {
            if given && !takes(flag) {
                return Err(CliError::Usage(format!(
                    "--{flag} does not apply to --dist {}",
                    self.dist
                )));
            }
        }
        Ok(DistributionSpec::from_parts(
            &self.dist,
            self.d,
            self.lambda.or(self.rho),
        )?)
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PowerArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Number of simulated samples R.
    #[arg(long, default_value_t = 200)]
    pub reps: usize,
    #[arg(long, default_value_t = 0.05)]
    pub level: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
}
