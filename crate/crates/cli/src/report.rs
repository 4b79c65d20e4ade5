//! Serialized documents written by the subcommands.

use std::io::Write;

use msdep::{DistributionSpec, NullVariant, PValueRule, PowerResult, StatisticKind, TestReport};
use serde::{Deserialize, Serialize};

fn is_default<T: Default + PartialEq>(v: &T) -> bool {
    *v == T::default()
}

/// Output of `test` and `zprofile`. The engine switches are only written when
/// they differ from the defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub stat: StatisticKind,
    pub n: usize,
    #[serde(rename = "B")]
    pub perms: usize,
    pub seed: u64,
    pub psi: f64,
    pub p_value: f64,
    pub z: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_smoothed: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi_perm: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub null_variant: NullVariant,
    #[serde(default, skip_serializing_if = "is_default")]
    pub p_smoothing: PValueRule,
}

impl ReportDoc {
    pub fn new(report: &TestReport, verbose: bool) -> Self {
        Self {
            stat: report.kind,
            n: report.n,
            perms: report.perms,
            seed: report.seed.master,
            psi: report.psi,
            p_value: report.p_value,
            z: report.profile.z.clone(),
            z_smoothed: None,
            psi_perm: verbose.then(|| report.psi_perm.clone()),
            null_variant: report.null_variant,
            p_smoothing: report.p_value_rule,
        }
    }

    /// One header row and one value row.
    pub fn write_summary_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "stat,n,B,seed,psi,p_value,null_variant,p_smoothing")?;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            self.stat,
            self.n,
            self.perms,
            self.seed,
            self.psi,
            self.p_value,
            self.null_variant,
            self.p_smoothing
        )
    }

    /// `k,z,z_smoothed`; the smoothed column is empty past the end of the
    /// smoothed series.
    pub fn write_profile_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "k,z,z_smoothed")?;
        for (idx, z) in self.z.iter().enumerate() {
            match self.z_smoothed.as_ref().and_then(|s| s.get(idx)) {
                Some(s) => writeln!(out, "{},{},{}", idx + 1, z, s)?,
                None => writeln!(out, "{},{},", idx + 1, z)?,
            }
        }
        Ok(())
    }
}

/// Output of `power`: the configuration followed by the outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerDoc {
    pub dist: DistributionSpec,
    pub n: usize,
    pub stat: StatisticKind,
    #[serde(rename = "B")]
    pub perms: usize,
    pub level: f64,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "is_default")]
    pub null_variant: NullVariant,
    #[serde(default, skip_serializing_if = "is_default")]
    pub p_smoothing: PValueRule,
    pub power: f64,
    pub rejections: usize,
    #[serde(rename = "R")]
    pub replicates: usize,
    pub per_replicate_p: Vec<f64>,
}

impl PowerDoc {
    pub fn new(
        cfg: &msdep::PowerConfig,
        engine: &msdep::EngineConfig,
        result: PowerResult,
    ) -> Self {
        Self {
            dist: cfg.spec,
            n: cfg.n,
            stat: cfg.kind,
            perms: cfg.perms,
            level: cfg.level,
            seed: cfg.seed.master,
            null_variant: engine.null_variant,
            p_smoothing: engine.p_value,
            power: result.power,
            rejections: result.rejections,
            replicates: result.replicates,
            per_replicate_p: result.per_replicate_p,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc() -> ReportDoc {
        ReportDoc {
            stat: StatisticKind::Dcor,
            n: 5,
            perms: 10,
            seed: 3,
            psi: 1.25,
            p_value: 0.1,
            z: vec![0.1, -2.0, 1e-300, 0.30000000000000004],
            z_smoothed: Some(vec![-0.95, -0.5]),
            psi_perm: None,
            null_variant: NullVariant::Pooled,
            p_smoothing: PValueRule::AddOne,
        }
    }

    #[test]
    fn json_field_names() {
        let text = serde_json::to_string(&doc()).unwrap();
        let keys = [
            "stat",
            "n",
            "B",
            "seed",
            "psi",
            "p_value",
            "z",
            "z_smoothed",
            "p_smoothing",
        ];
        let at: Vec<usize> = keys
            .iter()
            .map(|k| text.find(&format!("\"{k}\":")).unwrap())
            .collect();
        assert!(at.windows(2).all(|w| w[0] < w[1]));
        assert!(!text.contains("psi_perm") && !text.contains("null_variant"));
        assert!(text.contains(r#""stat":"dcor""#) && text.contains(r#""p_smoothing":"add-one""#));
    }

    #[test]
    fn json_round_trip() {
        let text = serde_json::to_string_pretty(&doc()).unwrap();
        let back: ReportDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back, doc());
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text);
    }

    #[test]
    fn profile_csv_pads_smoothed_column() {
        let mut buf = Vec::new();
        doc().write_profile_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "k,z,z_smoothed");
        assert_eq!(lines[1], "1,0.1,-0.95");
        assert_eq!(lines[4], "4,0.30000000000000004,");
    }
}
