//! The multiscale permutation test.
//!
//! For every observation `i` and every rank `k`, the base statistic is
//! evaluated on the neighborhood whose vertex is the `k`-th nearest neighbor
//! of `i`. Averaging over centers gives one value per scale; those values are
//! standardized against `B` y-permuted copies of the sample, and the positive
//! parts of the standardized scores are squared and summed into `psi`. The
//! p-value compares `psi` with the same quantity computed for every permuted
//! copy.
//!
//! Seeds: `run_test` gives the observed analysis stream `seed.derive(0)` and
//! the permutation null `seed.derive(1)`; within the null, replicate `b` uses
//! `derive(b)`, whose child `0` draws the permutation and child `1` breaks
//! distance ties. Within one analysis, center `i` uses `derive(i)`. Results
//! therefore do not depend on scheduling or thread count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fast_phi::FastPhi;
use crate::neighborhood::order_into;
use crate::sample::{permute_y, random_permutation, BivariateSample, Seed};
use crate::statistics::{
    abs_pearson_slices, counts_brute_center, dcor_slices, phi_from_counts, QuadrantCounts,
    StatisticKind,
};

/// How permuted replicates are standardized when computing their `psi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum NullVariant {
    /// Every replicate uses the mean and sd pooled over all `B` replicates.
    #[default]
    #[serde(rename = "box")]
    Pooled,
    /// Replicate `b` uses the mean and sd of the other `B - 1` replicates.
    #[serde(rename = "leave-one-out")]
    LeaveOneOut,
}

/// How the p-value is formed from the count `c` of replicates with
/// `psi <= psi_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum PValueRule {
    /// `c / B`; can be exactly zero.
    #[default]
    #[serde(rename = "none")]
    Plain,
    /// `(c + 1) / (B + 1)`.
    #[serde(rename = "add-one")]
    AddOne,
}

impl fmt::Display for NullVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pooled => "box",
            Self::LeaveOneOut => "leave-one-out",
        })
    }
}

impl FromStr for NullVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "box" => Ok(Self::Pooled),
            "leave-one-out" => Ok(Self::LeaveOneOut),
            other => Err(Error::invalid(format!("unknown null variant {other:?}"))),
        }
    }
}

impl fmt::Display for PValueRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Plain => "none",
            Self::AddOne => "add-one",
        })
    }
}

impl FromStr for PValueRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Self::Plain),
            "add-one" => Ok(Self::AddOne),
            other => Err(Error::invalid(format!(
                "unknown p-value smoothing {other:?}"
            ))),
        }
    }
}

/// Quadrant counting strategy for [`StatisticKind::Phi`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhiCounting {
    /// Sort-based counting when the sample is tie-free, direct counting
    /// otherwise.
    #[default]
    Auto,
    /// Always count directly (O(n²) per center).
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    pub null_variant: NullVariant,
    pub p_value: PValueRule,
    pub phi_counting: PhiCounting,
    /// Spread centers and replicates over the rayon pool. Output is identical
    /// either way.
    pub parallel: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        Self {
            null_variant: NullVariant::default(),
            p_value: PValueRule::default(),
            phi_counting: PhiCounting::default(),
            parallel: true,
        }
    }
}

/// `T_[k]` for `k = 1..n-1`, stored zero-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScaleAverages(pub Vec<f64>);

impl ScaleAverages {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PermutationNull {
    pub per_perm: Vec<ScaleAverages>,
    pub mean: Vec<f64>,
    /// Sample standard deviation with divisor `B - 1`.
    pub sd: Vec<f64>,
}

impl PermutationNull {
    pub fn from_replicates(per_perm: Vec<ScaleAverages>) -> Result<Self> {
        if per_perm.len() < 2 {
            return Err(Error::invalid(
                "at least 2 permutation replicates are required",
            ));
        }
        let len = per_perm[0].len();
        if let Some(bad) = per_perm.iter().find(|r| r.len() != len) {
            return Err(Error::LengthMismatch {
                expected: len,
                actual: bad.len(),
            });
        }
        let mut mean = Vec::with_capacity(len);
        let mut sd = Vec::with_capacity(len);
        let mut column = Vec::with_capacity(per_perm.len());
        for k in 0..len {
            column.clear();
            column.extend(per_perm.iter().map(|r| r.0[k]));
            let (m, s) = mean_sd(&column);
            mean.push(m);
            sd.push(s);
        }
        Ok(Self { per_perm, mean, sd })
    }

    pub fn replicates(&self) -> usize {
        self.per_perm.len()
    }
}

/// Mean and sd (divisor `len - 1`) of at least two values. A constant column
/// gets its value as mean and an sd of exactly zero.
fn mean_sd(values: &[f64]) -> (f64, f64) {
    let first = values[0];
    if values.iter().all(|&v| v == first) {
        return (first, 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (n - 1.0)).sqrt())
}

/// Observed scale averages together with the null moments used to
/// standardize them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZProfile {
    pub t_bracket: Vec<f64>,
    pub null_mean: Vec<f64>,
    pub null_sd: Vec<f64>,
    pub z: Vec<f64>,
}

impl ZProfile {
    pub fn psi(&self) -> f64 {
        psi(&self.z)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestReport {
    pub kind: StatisticKind,
    pub n: usize,
    pub perms: usize,
    pub seed: Seed,
    pub psi: f64,
    pub psi_perm: Vec<f64>,
    pub p_value: f64,
    pub profile: ZProfile,
    pub null_variant: NullVariant,
    pub p_value_rule: PValueRule,
}

impl TestReport {
    /// Number of replicates with `psi <= psi_perm[b]`.
    pub fn exceedances(&self) -> usize {
        exceedances(self.psi, &self.psi_perm)
    }
}

fn exceedances(psi: f64, psi_perm: &[f64]) -> usize {
    psi_perm.iter().filter(|&&p| psi <= p).count()
}

pub fn p_value(psi: f64, psi_perm: &[f64], rule: PValueRule) -> f64 {
    let count = exceedances(psi, psi_perm) as f64;
    let b = psi_perm.len() as f64;
    match rule {
        PValueRule::Plain => count / b,
        PValueRule::AddOne => (count + 1.0) / (b + 1.0),
    }
}

pub fn scale_averages(
    sample: &BivariateSample,
    kind: StatisticKind,
    seed: Seed,
) -> Result<ScaleAverages> {
    scale_averages_with(sample, kind, seed, &EngineConfig::default())
}

const CENTER_CHUNK: usize = 64;

pub fn scale_averages_with(
    sample: &BivariateSample,
    kind: StatisticKind,
    seed: Seed,
    cfg: &EngineConfig,
) -> Result<ScaleAverages> {
    sample.require_len(2)?;
    let n = sample.len();
    let fast =
        kind == StatisticKind::Phi && cfg.phi_counting == PhiCounting::Auto && sample.is_tie_free();

    // Centers are processed in fixed-size chunks and their rows are added in
    // center order, so the floating-point sums do not depend on scheduling.
    let mut sums = vec![0.0; n - 1];
    let row_of =
        |ws: &mut Workspace, i: usize| ws.row(sample, i, kind, fast, seed.derive(i as u64));
    for start in (0..n).step_by(CENTER_CHUNK) {
        let centers = start..n.min(start + CENTER_CHUNK);
        let rows: Vec<Vec<f64>> = if cfg.parallel {
            centers
                .into_par_iter()
                .map_init(Workspace::default, row_of)
                .collect()
        } else {
            let mut ws = Workspace::default();
            centers.map(|i| row_of(&mut ws, i)).collect()
        };
        for row in rows {
            for (s, v) in sums.iter_mut().zip(row) {
                *s += v;
            }
        }
    }
    let nf = n as f64;
    Ok(ScaleAverages(sums.into_iter().map(|s| s / nf).collect()))
}

#[derive(Default)]
struct Workspace {
    keys: Vec<(f64, u64, usize)>,
    order: Vec<usize>,
    fast_phi: FastPhi,
    counts: Vec<QuadrantCounts>,
    dx: Vec<f64>,
    dy: Vec<f64>,
    sub_x: Vec<f64>,
    sub_y: Vec<f64>,
    dcor_rows: Vec<f64>,
}

impl Workspace {
    /// `T_{i, pi_i(k)}` for `k = 1..n-1`.
    fn row(
        &mut self,
        sample: &BivariateSample,
        i: usize,
        kind: StatisticKind,
        fast: bool,
        seed: Seed,
    ) -> Vec<f64> {
        order_into(sample, i, seed, &mut self.keys, &mut self.order);
        match kind {
            StatisticKind::Phi => {
                let counted = fast && self.fast_phi.counts(sample, i, &mut self.counts).is_ok();
                if !counted {
                    counts_brute_center(sample, i, &mut self.counts);
                }
                self.order
                    .iter()
                    .map(|&j| phi_from_counts(self.counts[j]))
                    .collect()
            }
            StatisticKind::AbsPearson | StatisticKind::Dcor => {
                let (xs, ys) = (sample.xs(), sample.ys());
                let (xi, yi) = sample.point(i);
                self.dx.clear();
                self.dx.extend(xs.iter().map(|&x| (x - xi).abs()));
                self.dy.clear();
                self.dy.extend(ys.iter().map(|&y| (y - yi).abs()));
                let mut row = Vec::with_capacity(self.order.len());
                for &j in &self.order {
                    let (ex, ey) = (self.dx[j], self.dy[j]);
                    self.sub_x.clear();
                    self.sub_y.clear();
                    for k in 0..xs.len() {
                        if self.dx[k] <= ex && self.dy[k] <= ey {
                            self.sub_x.push(xs[k]);
                            self.sub_y.push(ys[k]);
                        }
                    }
                    row.push(if kind == StatisticKind::AbsPearson {
                        abs_pearson_slices(&self.sub_x, &self.sub_y)
                    } else {
                        dcor_slices(&self.sub_x, &self.sub_y, &mut self.dcor_rows)
                    });
                }
                row
            }
        }
    }
}

pub fn permutation_null(
    sample: &BivariateSample,
    kind: StatisticKind,
    perms: usize,
    seed: Seed,
) -> Result<PermutationNull> {
    permutation_null_with(sample, kind, perms, seed, &EngineConfig::default())
}

pub fn permutation_null_with(
    sample: &BivariateSample,
    kind: StatisticKind,
    perms: usize,
    seed: Seed,
    cfg: &EngineConfig,
) -> Result<PermutationNull> {
    if perms < 2 {
        return Err(Error::invalid("number of permutations must be at least 2"));
    }
    sample.require_len(2)?;
    let replicate = |b: usize| -> Result<ScaleAverages> {
        let rep = seed.derive(b as u64);
        let tau = random_permutation(sample.len(), rep.derive(0))?;
        let permuted = permute_y(sample, &tau)?;
        scale_averages_with(&permuted, kind, rep.derive(1), cfg)
    };
    let per_perm = if cfg.parallel {
        (0..perms)
            .into_par_iter()
            .map(replicate)
            .collect::<Result<Vec<_>>>()?
    } else {
        (0..perms).map(replicate).collect::<Result<Vec<_>>>()?
    };
    PermutationNull::from_replicates(per_perm)
}

/// `(t - mean) / sd` elementwise, 0 wherever `sd` is 0.
pub fn standardize(values: &[f64], mean: &[f64], sd: &[f64]) -> Vec<f64> {
    values
        .iter()
        .zip(mean)
        .zip(sd)
        .map(|((&t, &m), &s)| if s == 0.0 { 0.0 } else { (t - m) / s })
        .collect()
}

pub fn z_scores(observed: &ScaleAverages, null: &PermutationNull) -> Result<ZProfile> {
    for len in [null.mean.len(), null.sd.len()] {
        if len != observed.len() {
            return Err(Error::LengthMismatch {
                expected: observed.len(),
                actual: len,
            });
        }
    }
    Ok(ZProfile {
        z: standardize(&observed.0, &null.mean, &null.sd),
        t_bracket: observed.0.clone(),
        null_mean: null.mean.clone(),
        null_sd: null.sd.clone(),
    })
}

/// Sum of squared positive parts.
pub fn psi(z: &[f64]) -> f64 {
    z.iter().map(|&v| v.max(0.0)).map(|v| v * v).sum()
}

pub fn run_test(
    sample: &BivariateSample,
    kind: StatisticKind,
    perms: usize,
    seed: Seed,
) -> Result<TestReport> {
    run_test_with(sample, kind, perms, seed, &EngineConfig::default())
}

pub fn run_test_with(
    sample: &BivariateSample,
    kind: StatisticKind,
    perms: usize,
    seed: Seed,
    cfg: &EngineConfig,
) -> Result<TestReport> {
    sample.require_len(2)?;
    if cfg.null_variant == NullVariant::LeaveOneOut && perms < 3 {
        return Err(Error::invalid(
            "leave-one-out standardization needs at least 3 permutations",
        ));
    }
    let observed = scale_averages_with(sample, kind, seed.derive(0), cfg)?;
    let null = permutation_null_with(sample, kind, perms, seed.derive(1), cfg)?;
    let profile = z_scores(&observed, &null)?;
    let psi_obs = profile.psi();
    let psi_perm = replicate_psi(&null, cfg.null_variant);
    Ok(TestReport {
        kind,
        n: sample.len(),
        perms,
        seed,
        psi: psi_obs,
        p_value: p_value(psi_obs, &psi_perm, cfg.p_value),
        psi_perm,
        profile,
        null_variant: cfg.null_variant,
        p_value_rule: cfg.p_value,
    })
}

/// `psi` of every permuted replicate under the chosen standardization.
pub fn replicate_psi(null: &PermutationNull, variant: NullVariant) -> Vec<f64> {
    match variant {
        NullVariant::Pooled => null
            .per_perm
            .iter()
            .map(|t| psi(&standardize(&t.0, &null.mean, &null.sd)))
            .collect(),
        NullVariant::LeaveOneOut => {
            let b_total = null.per_perm.len();
            let len = null.mean.len();
            let mut column = Vec::with_capacity(b_total - 1);
            let mut out = Vec::with_capacity(b_total);
            for b in 0..b_total {
                let mut total = 0.0;
                for k in 0..len {
                    column.clear();
                    column.extend(
                        null.per_perm
                            .iter()
                            .enumerate()
                            .filter(|&(c, _)| c != b)
                            .map(|(_, r)| r.0[k]),
                    );
                    let (m, s) = mean_sd(&column);
                    let z = if s == 0.0 {
                        0.0
                    } else {
                        (null.per_perm[b].0[k] - m) / s
                    };
                    total += z.max(0.0) * z.max(0.0);
                }
                out.push(total);
            }
            out
        }
    }
}
