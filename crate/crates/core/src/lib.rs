//! Multiscale permutation test of independence for two univariate variables.
//!
//! A base statistic (absolute phi coefficient of quadrant counts, absolute
//! Pearson correlation or distance correlation) is evaluated on rectangular
//! neighborhoods of every size around every observation. Per-scale averages
//! are standardized against a y-permutation null and combined into a single
//! statistic `psi` with a permutation p-value.
//!
//! ```
//! use msdep::{run_test, sample_distribution, DistributionSpec, Seed, StatisticKind};
//!
//! let sample = sample_distribution(&DistributionSpec::Circle, 30, Seed::new(1)).unwrap();
//! let report = run_test(&sample, StatisticKind::Phi, 50, Seed::new(2)).unwrap();
//! assert!(report.p_value <= 1.0);
//! ```

pub mod distributions;
pub mod engine;
pub mod error;
pub mod fast_phi;
pub mod io;
pub mod neighborhood;
pub mod power;
pub mod sample;
pub mod statistics;

pub use distributions::{sample_bex, sample_distribution, DistributionSpec};
pub use engine::{
    p_value, permutation_null, permutation_null_with, psi, run_test, run_test_with, scale_averages,
    scale_averages_with, z_scores, EngineConfig, NullVariant, PValueRule, PermutationNull,
    PhiCounting, ScaleAverages, TestReport, ZProfile,
};
pub use error::{Error, Result};
pub use fast_phi::{counts_for_center, surpasser_count, trail_count};
pub use neighborhood::{
    neighborhood_rect, order_neighbors, points_in_rect, NeighborOrdering, Rect,
};
pub use power::{empirical_power, empirical_power_with, run_replicates, PowerConfig, PowerResult};
pub use sample::{permute_y, random_permutation, BivariateSample, Permutation, Seed};
pub use statistics::{
    abs_pearson, counts_brute, dcor, phi_from_counts, QuadrantCounts, StatisticKind,
};
