//! Seeded samplers for the synthetic bivariate families.
//!
//! Normal noise is written `N(mean, variance)`: the bare-decimal noise levels
//! of the illustration families are variances (`N(0, 0.1)` has sd `√0.1`).
//! The curve families use noise with sd 1/30, the noise-level families sd
//! 1/60 scaled by `λ`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI, TAU};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample::{BivariateSample, Seed};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum DistributionSpec {
    /// X, Y i.i.d. U(-1, 1).
    Square,
    /// X ~ U(-1, 1), Y = X.
    StraightLine,
    NoisyStraightLine,
    /// X ~ U(0, 2π), Y = sin(5X).
    Sine5,
    /// Noiseless unit circle.
    Circle,
    NoisyParabola,
    /// Uniform on the crossing diagonals of a `2^(d-1) × 2^(d-1)` grid of
    /// cells tiling the unit square.
    Bex {
        d: u32,
    },
    /// Standard bivariate normal with correlation `rho`.
    Bvn {
        rho: f64,
    },
    Doppler,
    LissajousA,
    LissajousB,
    Rose,
    Spiral,
    TiltedSquare,
    FiveClouds,
    ParabolaL {
        lambda: f64,
    },
    CircleL {
        lambda: f64,
    },
    SineL {
        lambda: f64,
    },
    LemniscateL {
        lambda: f64,
    },
    /// X, Y i.i.d. U(0, 1).
    IndependentUniform,
    /// X, Y i.i.d. N(0, 1).
    IndependentNormal,
}

/// Family names accepted by [`DistributionSpec::from_parts`].
pub const FAMILY_NAMES: &[&str] = &[
    "square",
    "line",
    "noisy-line",
    "sine",
    "circle",
    "noisy-parabola",
    "bex",
    "bvn",
    "doppler",
    "lissajous-a",
    "lissajous-b",
    "rose",
    "spiral",
    "tilted-square",
    "five-clouds",
    "parabola-l",
    "circle-l",
    "sine-l",
    "lemniscate-l",
    "indep-uniform",
    "indep-normal",
];

impl DistributionSpec {
    pub fn name(&self) -> &'static str {
        use DistributionSpec::*;
        match self {
            Square => "square",
            StraightLine => "line",
            NoisyStraightLine => "noisy-line",
            Sine5 => "sine",
            Circle => "circle",
            NoisyParabola => "noisy-parabola",
            Bex { .. } => "bex",
            Bvn { .. } => "bvn",
            Doppler => "doppler",
            LissajousA => "lissajous-a",
            LissajousB => "lissajous-b",
            Rose => "rose",
            Spiral => "spiral",
            TiltedSquare => "tilted-square",
            FiveClouds => "five-clouds",
            ParabolaL { .. } => "parabola-l",
            CircleL { .. } => "circle-l",
            SineL { .. } => "sine-l",
            LemniscateL { .. } => "lemniscate-l",
            IndependentUniform => "indep-uniform",
            IndependentNormal => "indep-normal",
        }
    }

    /// Builds a spec from a family name and its optional parameters: `d` for
    /// `bex` (default 2), `param` as `rho` for `bvn` (default 0.5) or `λ` for
    /// the noise-level families (default 0).
    pub fn from_parts(name: &str, d: Option<u32>, param: Option<f64>) -> Result<Self> {
        use DistributionSpec::*;
        let lambda = param.unwrap_or(0.0);
        let spec = match name {
            "square" => Square,
            "line" => StraightLine,
            "noisy-line" => NoisyStraightLine,
            "sine" => Sine5,
            "circle" => Circle,
            "noisy-parabola" => NoisyParabola,
            "bex" => Bex { d: d.unwrap_or(2) },
            "bvn" => Bvn {
                rho: param.unwrap_or(0.5),
            },
            "doppler" => Doppler,
            "lissajous-a" => LissajousA,
            "lissajous-b" => LissajousB,
            "rose" => Rose,
            "spiral" => Spiral,
            "tilted-square" => TiltedSquare,
            "five-clouds" => FiveClouds,
            "parabola-l" => ParabolaL { lambda },
            "circle-l" => CircleL { lambda },
            "sine-l" => SineL { lambda },
            "lemniscate-l" => LemniscateL { lambda },
            "indep-uniform" => IndependentUniform,
            "indep-normal" => IndependentNormal,
            other => return Err(Error::invalid(format!("unknown distribution {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        use DistributionSpec::*;
        match *self {
            Bex { d } if !(1..=52).contains(&d) => Err(Error::invalid(format!(
                "bex depth must be in 1..=52, got {d}"
            ))),
            Bvn { rho } if !(rho > -1.0 && rho < 1.0) => Err(Error::invalid(format!(
                "bvn correlation must be in (-1, 1), got {rho}"
            ))),
            ParabolaL { lambda }
            | CircleL { lambda }
            | SineL { lambda }
            | LemniscateL { lambda }
                if !(lambda >= 0.0 && lambda.is_finite()) =>
            {
                Err(Error::invalid(format!(
                    "noise level must be finite and >= 0, got {lambda}"
                )))
            }
            _ => Ok(()),
        }
    }

    /// True for the families whose coordinates are independent.
    pub fn is_null(&self) -> bool {
        matches!(
            self,
            Self::Square | Self::IndependentUniform | Self::IndependentNormal
        )
    }
}

/// `name`, `name:d` for bex, `name:param` for bvn and the `λ` families.
impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DistributionSpec::*;
        match *self {
            Bex { d } => write!(f, "bex:{d}"),
            Bvn { rho } => write!(f, "bvn:{rho}"),
            ParabolaL { lambda }
            | CircleL { lambda }
            | SineL { lambda }
            | LemniscateL { lambda } => {
                write!(f, "{}:{lambda}", self.name())
            }
            _ => f.write_str(self.name()),
        }
    }
}

impl FromStr for DistributionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let bad = || Error::invalid(format!("invalid parameter in distribution {s:?}"));
        match (name, arg) {
            (_, None) => Self::from_parts(name, None, None),
            ("bex", Some(a)) => Self::from_parts(name, Some(a.parse().map_err(|_| bad())?), None),
            ("bvn" | "parabola-l" | "circle-l" | "sine-l" | "lemniscate-l", Some(a)) => {
                Self::from_parts(name, None, Some(a.parse().map_err(|_| bad())?))
            }
            _ => Err(bad()),
        }
    }
}

impl From<DistributionSpec> for String {
    fn from(spec: DistributionSpec) -> String {
        spec.to_string()
    }
}

impl TryFrom<String> for DistributionSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

struct Draw {
    rng: ChaCha8Rng,
}

impl Draw {
    fn unit(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    /// Normal with mean 0 and the given standard deviation.
    fn normal(&mut self, sd: f64) -> f64 {
        sd * self.rng.sample::<f64, _>(StandardNormal)
    }

    fn angle(&mut self) -> f64 {
        self.uniform(0.0, TAU)
    }
}

const CURVE_NOISE_SD: f64 = 1.0 / 30.0;
const LEVEL_NOISE_SD: f64 = 1.0 / 60.0;

/// `n` i.i.d. observations from `spec`.
pub fn sample_distribution(
    spec: &DistributionSpec,
    n: usize,
    seed: Seed,
) -> Result<BivariateSample> {
    use DistributionSpec::*;
    if n == 0 {
        return Err(Error::invalid("sample size must be positive"));
    }
    spec.validate()?;
    if let Bex { d } = *spec {
        return sample_bex(d, n, seed);
    }
    let mut g = Draw { rng: seed.rng() };
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for _ in 0..n {
        let (x, y) = match *spec {
            Square => (g.uniform(-1.0, 1.0), g.uniform(-1.0, 1.0)),
            StraightLine => {
                let x = g.uniform(-1.0, 1.0);
                (x, x)
            }
            NoisyStraightLine => {
                let u = g.uniform(-1.0, 1.0);
                let sd = 0.1f64.sqrt();
                (u + g.normal(sd), u + g.normal(sd))
            }
            Sine5 => {
                let x = g.angle();
                (x, (5.0 * x).sin())
            }
            Circle => {
                let t = g.angle();
                (t.cos(), t.sin())
            }
            NoisyParabola => {
                let u = g.uniform(-1.0, 1.0);
                (u * u + g.normal(0.5), u + g.normal(0.5))
            }
            Bvn { rho } => {
                let a = g.normal(1.0);
                let b = g.normal(1.0);
                (a, rho * a + (1.0 - rho * rho).sqrt() * b)
            }
            Doppler => {
                let mut u = g.unit();
                while u == 0.0 {
                    u = g.unit();
                }
                let x = u / 2.0;
                (x, x.sqrt() * (1.0 / x).sin())
            }
            LissajousA => {
                let t = g.angle();
                let ex = g.normal(CURVE_NOISE_SD);
                let ey = g.normal(CURVE_NOISE_SD);
                ((3.0 * t + 3.0 * PI / 4.0).sin() + ex, t.sin() + ey)
            }
            LissajousB => {
                let t = g.angle();
                let ex = g.normal(CURVE_NOISE_SD);
                let ey = g.normal(CURVE_NOISE_SD);
                ((4.0 * t + FRAC_PI_2).sin() + ex, (3.0 * t).sin() + ey)
            }
            Rose => {
                let t = g.angle();
                let r = (4.0 * t).cos();
                let ex = g.normal(CURVE_NOISE_SD);
                let ey = g.normal(CURVE_NOISE_SD);
                (r * t.cos() + ex / 2.0, r * t.sin() + ey / 2.0)
            }
            Spiral => {
                let t = g.uniform(0.0, 2.0 * TAU);
                let r = t / TAU;
                let ex = g.normal(CURVE_NOISE_SD);
                let ey = g.normal(CURVE_NOISE_SD);
                (r * t.cos() + ex, r * t.sin() + ey)
            }
            TiltedSquare => {
                let u = g.uniform(-1.0, 1.0);
                let v = g.uniform(-1.0, 1.0);
                let (s, c) = FRAC_PI_3.sin_cos();
                (c * u - s * v, s * u + c * v)
            }
            FiveClouds => {
                const CENTERS: [(f64, f64); 5] =
                    [(0., 0.), (0., 1.), (0.5, 0.5), (1., 0.), (1., 1.)];
                let (u, v) = CENTERS[g.rng.random_range(0..5u32) as usize];
                let ex = g.normal(CURVE_NOISE_SD);
                let ey = g.normal(CURVE_NOISE_SD);
                (u + 2.0 * ex, v + 2.0 * ey)
            }
            ParabolaL { lambda } => {
                let u = g.uniform(-1.0, 1.0);
                let ex = g.normal(LEVEL_NOISE_SD);
                let ey = g.normal(LEVEL_NOISE_SD);
                (u * u + 2.0 * lambda * ex, u + 2.0 * lambda * ey)
            }
            CircleL { lambda } => {
                let t = g.angle();
                let ex = g.normal(LEVEL_NOISE_SD);
                let ey = g.normal(LEVEL_NOISE_SD);
                (t.cos() + 6.0 * lambda * ex, t.sin() + 6.0 * lambda * ey)
            }
            SineL { lambda } => {
                let t = g.angle();
                let ex = g.normal(LEVEL_NOISE_SD);
                let ey = g.normal(LEVEL_NOISE_SD);
                (t + 3.0 * lambda * ex, t.sin() + 3.0 * lambda * ey)
            }
            LemniscateL { lambda } => {
                let (s, c) = loop {
                    let (s, c) = g.angle().sin_cos();
                    if 1.0 + s != 0.0 {
                        break (s, c);
                    }
                };
                let den = (1.0 + s) * (1.0 + s);
                let ex = g.normal(LEVEL_NOISE_SD);
                let ey = g.normal(LEVEL_NOISE_SD);
                (c / den + 2.0 * lambda * ex, s * c / den + 2.0 * lambda * ey)
            }
            IndependentUniform => (g.unit(), g.unit()),
            IndependentNormal => (g.normal(1.0), g.normal(1.0)),
            Bex { .. } => unreachable!(),
        };
        xs.push(x);
        ys.push(y);
    }
    BivariateSample::new(xs, ys)
}

/// Uniform on the union of the two diagonals of every cell of a
/// `2^(d-1) × 2^(d-1)` grid over the unit square. All segments have the same
/// length, so drawing a cell, a diagonal and a position along it uniformly is
/// uniform on the union.
pub fn sample_bex(d: u32, n: usize, seed: Seed) -> Result<BivariateSample> {
    DistributionSpec::Bex { d }.validate()?;
    if n == 0 {
        return Err(Error::invalid("sample size must be positive"));
    }
    let cells = 1u64 << (d - 1);
    let side = 1.0 / cells as f64;
    let mut g = Draw { rng: seed.rng() };
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for _ in 0..n {
        let ci = g.rng.random_range(0..cells);
        let cj = g.rng.random_range(0..cells);
        let cx = (ci as f64 + 0.5) * side;
        let cy = (cj as f64 + 0.5) * side;
        let t = g.uniform(-0.5, 0.5) * side;
        let sign = if g.rng.random::<bool>() { 1.0 } else { -1.0 };
        xs.push(cx + t);
        ys.push(cy + sign * t);
    }
    BivariateSample::new(xs, ys)
}
