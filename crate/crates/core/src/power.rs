//! Monte Carlo size and power estimation.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{sample_distribution, DistributionSpec};
use crate::engine::{run_test_with, EngineConfig, TestReport};
use crate::error::{Error, Result};
use crate::sample::Seed;
use crate::statistics::StatisticKind;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerConfig {
    pub spec: DistributionSpec,
    pub n: usize,
    pub replicates: usize,
    pub perms: usize,
    pub level: f64,
    pub kind: StatisticKind,
    pub seed: Seed,
}

impl PowerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.replicates < 1 {
            return Err(Error::invalid("at least one replicate is required"));
        }
        if self.perms < 2 {
            return Err(Error::invalid("number of permutations must be at least 2"));
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(Error::invalid(format!(
                "level must lie in (0, 1), got {}",
                self.level
            )));
        }
        if self.n < 2 {
            return Err(Error::invalid("sample size must be at least 2"));
        }
        self.spec.validate()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerResult {
    pub rejections: usize,
    pub replicates: usize,
    pub power: f64,
    pub per_replicate_p: Vec<f64>,
}

impl PowerResult {
    /// Rejects replicate `r` when `p_values[r] < level`.
    pub fn from_p_values(p_values: Vec<f64>, level: f64) -> Self {
        let rejections = p_values.iter().filter(|&&p| p < level).count();
        Self {
            rejections,
            replicates: p_values.len(),
            power: rejections as f64 / p_values.len() as f64,
            per_replicate_p: p_values,
        }
    }
}

/// Runs the full test on `cfg.replicates` fresh samples. Replicate `r` draws
/// its sample from `seed.derive(r).derive(0)` and tests it with
/// `seed.derive(r).derive(1)`; reports come back in replicate order.
pub fn run_replicates(cfg: &PowerConfig, engine: &EngineConfig) -> Result<Vec<TestReport>> {
    cfg.validate()?;
    let one = |r: usize| -> Result<TestReport> {
        let rep = cfg.seed.derive(r as u64);
        let sample = sample_distribution(&cfg.spec, cfg.n, rep.derive(0))?;
        run_test_with(&sample, cfg.kind, cfg.perms, rep.derive(1), engine)
    };
    if engine.parallel {
        (0..cfg.replicates).into_par_iter().map(one).collect()
    } else {
        (0..cfg.replicates).map(one).collect()
    }
}

pub fn empirical_power(cfg: &PowerConfig) -> Result<PowerResult> {
    empirical_power_with(cfg, &EngineConfig::default())
}

pub fn empirical_power_with(cfg: &PowerConfig, engine: &EngineConfig) -> Result<PowerResult> {
    let reports = run_replicates(cfg, engine)?;
    let p = reports.into_iter().map(|r| r.p_value).collect();
    Ok(PowerResult::from_p_values(p, cfg.level))
}
