//! Base statistics evaluated on neighborhood subsamples.
//!
//! Every statistic is nonnegative and bounded by one. Whenever a statistic is
//! undefined on a subsample (fewer than two points, a constant coordinate, a
//! zero denominator) its value is 0.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::neighborhood::neighborhood_rect;
use crate::sample::BivariateSample;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StatisticKind {
    /// Absolute phi coefficient of the quadrant contingency table.
    #[serde(rename = "phi")]
    Phi,
    /// Absolute Pearson correlation.
    #[serde(rename = "cor")]
    AbsPearson,
    /// Distance correlation (V-statistic form).
    #[serde(rename = "dcor")]
    Dcor,
}

impl StatisticKind {
    pub const ALL: [StatisticKind; 3] = [Self::Phi, Self::AbsPearson, Self::Dcor];

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Phi => "phi",
            Self::AbsPearson => "cor",
            Self::Dcor => "dcor",
        }
    }
}

impl fmt::Display for StatisticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatisticKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi" => Ok(Self::Phi),
            "cor" => Ok(Self::AbsPearson),
            "dcor" => Ok(Self::Dcor),
            other => Err(Error::invalid(format!(
                "unknown statistic {other:?} (expected phi, cor or dcor)"
            ))),
        }
    }
}

/// Counts of neighborhood observations strictly inside each quadrant around
/// the center:
///
/// ```text
///            x < xi   x > xi
///   y > yi     a        b
///   y < yi     c        d
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct QuadrantCounts {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl QuadrantCounts {
    pub fn new(a: usize, b: usize, c: usize, d: usize) -> Self {
        Self { a, b, c, d }
    }

    pub fn total(&self) -> usize {
        self.a + self.b + self.c + self.d
    }
}

pub fn abs_pearson(sub: &BivariateSample) -> f64 {
    abs_pearson_slices(sub.xs(), sub.ys())
}

pub(crate) fn abs_pearson_slices(xs: &[f64], ys: &[f64]) -> f64 {
    let m = xs.len();
    if m < 2 || is_constant(xs) || is_constant(ys) {
        return 0.0;
    }
    let mx = xs.iter().sum::<f64>() / m as f64;
    let my = ys.iter().sum::<f64>() / m as f64;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    let den = (sxx * syy).sqrt();
    if den == 0.0 {
        return 0.0;
    }
    (sxy / den).abs().min(1.0)
}

fn is_constant(v: &[f64]) -> bool {
    v.iter().all(|&x| x == v[0])
}

pub fn dcor(sub: &BivariateSample) -> f64 {
    dcor_slices(sub.xs(), sub.ys(), &mut Vec::new())
}

/// Biased sample distance correlation in O(m²) time and O(m) memory.
///
/// Uses the expansion of the double-centered product
/// `mean(A∘B) = mean(a∘b) - 2/m Σ_k ā_k b̄_k + ā b̄`, where `a`, `b` are the raw
/// pairwise distance matrices, `ā_k` their row means and `ā` the grand mean,
/// so the centered matrices are never formed.
pub(crate) fn dcor_slices(xs: &[f64], ys: &[f64], rows: &mut Vec<f64>) -> f64 {
    let m = xs.len();
    if m < 2 {
        return 0.0;
    }
    rows.clear();
    rows.resize(2 * m, 0.0);
    let (ra, rb) = rows.split_at_mut(m);
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for k in 0..m {
        for l in (k + 1)..m {
            let a = (xs[k] - xs[l]).abs();
            let b = (ys[k] - ys[l]).abs();
            sab += a * b;
            saa += a * a;
            sbb += b * b;
            ra[k] += a;
            ra[l] += a;
            rb[k] += b;
            rb[l] += b;
        }
    }
    let mf = m as f64;
    let m2 = mf * mf;
    let centered = |s: f64, r1: &[f64], r2: &[f64]| -> f64 {
        let cross: f64 = r1.iter().zip(r2).map(|(p, q)| p * q).sum();
        let t1: f64 = r1.iter().sum();
        let t2: f64 = r2.iter().sum();
        (2.0 * s / m2 - 2.0 * cross / (m2 * mf) + (t1 / m2) * (t2 / m2)).max(0.0)
    };
    let v_xy = centered(sab, ra, rb);
    let v_xx = centered(saa, ra, ra);
    let v_yy = centered(sbb, rb, rb);
    let den = (v_xx * v_yy).sqrt();
    if den <= 0.0 {
        return 0.0;
    }
    (v_xy / den).sqrt().min(1.0)
}

pub fn phi_from_counts(q: QuadrantCounts) -> f64 {
    let QuadrantCounts { a, b, c, d } = q;
    let rows = ((a + b) as u128 * (c + d) as u128) as f64;
    let cols = ((a + c) as u128 * (b + d) as u128) as f64;
    let den = rows * cols;
    if den == 0.0 {
        return 0.0;
    }
    let num = (a as i128 * d as i128 - b as i128 * c as i128).unsigned_abs() as f64;
    (num / den.sqrt()).min(1.0)
}

/// Quadrant counts of the neighborhood centered at `i` with corner `j`, by
/// direct inspection of every observation.
pub fn counts_brute(sample: &BivariateSample, i: usize, j: usize) -> Result<QuadrantCounts> {
    for idx in [i, j] {
        if idx >= sample.len() {
            return Err(Error::IndexOutOfRange {
                index: idx,
                len: sample.len(),
            });
        }
    }
    if i == j {
        return Err(Error::invalid("center and corner must differ"));
    }
    let rect = neighborhood_rect(sample.point(i), sample.point(j));
    let (xi, yi) = sample.point(i);
    let mut q = QuadrantCounts::default();
    for p in sample.points() {
        if rect.contains(p) {
            tally(&mut q, p, xi, yi);
        }
    }
    Ok(q)
}

#[inline]
pub(crate) fn tally(q: &mut QuadrantCounts, (x, y): (f64, f64), xi: f64, yi: f64) {
    if y > yi {
        if x < xi {
            q.a += 1;
        } else if x > xi {
            q.b += 1;
        }
    } else if y < yi {
        if x < xi {
            q.c += 1;
        } else if x > xi {
            q.d += 1;
        }
    }
}

/// Brute-force counts for every corner of center `i`; O(n²). The entry at
/// index `i` is all zeros.
pub(crate) fn counts_brute_center(
    sample: &BivariateSample,
    i: usize,
    out: &mut Vec<QuadrantCounts>,
) {
    let n = sample.len();
    let (xi, yi) = sample.point(i);
    let (xs, ys) = (sample.xs(), sample.ys());
    out.clear();
    out.resize(n, QuadrantCounts::default());
    for j in (0..n).filter(|&j| j != i) {
        let ex = (xs[j] - xi).abs();
        let ey = (ys[j] - yi).abs();
        let mut q = QuadrantCounts::default();
        for k in 0..n {
            if (xs[k] - xi).abs() <= ex && (ys[k] - yi).abs() <= ey {
                tally(&mut q, (xs[k], ys[k]), xi, yi);
            }
        }
        out[j] = q;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::neighborhood::points_in_rect;

    fn s(points: &[(f64, f64)]) -> BivariateSample {
        BivariateSample::from_points(points).unwrap()
    }

    /// Distance correlation with explicitly double-centered matrices.
    fn dcor_oracle(xs: &[f64], ys: &[f64]) -> f64 {
        let m = xs.len();
        let center = |v: &[f64]| -> Vec<Vec<f64>> {
            let d: Vec<Vec<f64>> = (0..m)
                .map(|k| (0..m).map(|l| (v[k] - v[l]).abs()).collect())
                .collect();
            let row: Vec<f64> = d.iter().map(|r| r.iter().sum::<f64>() / m as f64).collect();
            let grand = row.iter().sum::<f64>() / m as f64;
            (0..m)
                .map(|k| (0..m).map(|l| d[k][l] - row[k] - row[l] + grand).collect())
                .collect()
        };
        let (a, b) = (center(xs), center(ys));
        let dot = |p: &Vec<Vec<f64>>, q: &Vec<Vec<f64>>| -> f64 {
            let mut t = 0.0;
            for k in 0..m {
                for l in 0..m {
                    t += p[k][l] * q[k][l];
                }
            }
            t / (m * m) as f64
        };
        let den = (dot(&a, &a) * dot(&b, &b)).sqrt();
        if den <= 0.0 {
            0.0
        } else {
            (dot(&a, &b).max(0.0) / den).sqrt()
        }
    }

    #[test]
    fn pearson_examples() {
        assert_eq!(abs_pearson(&s(&[(1., 1.), (2., 2.), (3., 3.)])), 1.0);
        assert_eq!(abs_pearson(&s(&[(1., 1.), (2., -1.), (3., 1.)])), 0.0);
        assert_eq!(abs_pearson(&s(&[(5., 7.)])), 0.0);
        assert_eq!(abs_pearson(&s(&[(5., 7.), (5., 8.)])), 0.0);
        assert_eq!(abs_pearson(&s(&[(1., 3.), (2., 2.), (3., 1.)])), 1.0);
    }

    #[test]
    fn dcor_examples() {
        let two = dcor(&s(&[(0.3, -4.0), (2.0, 1.5)]));
        assert!((two - 1.0).abs() < 1e-14, "{two}");
        assert_eq!(dcor(&s(&[(1., 2.), (2., 2.), (3., 2.)])), 0.0);
        let line = s(&[(0., 1.), (1., 3.), (2., 5.), (3., 7.)]);
        assert!((dcor_oracle(line.xs(), line.ys()) - 1.0).abs() < 1e-12);
        assert!((dcor(&line) - 1.0).abs() < 1e-12);
        assert_eq!(dcor(&s(&[(1., 1.)])), 0.0);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_from_counts(QuadrantCounts::new(1, 0, 0, 1)), 1.0);
        assert!((phi_from_counts(QuadrantCounts::new(2, 1, 1, 2)) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(phi_from_counts(QuadrantCounts::default()), 0.0);
        assert_eq!(phi_from_counts(QuadrantCounts::new(3, 0, 4, 0)), 0.0);
    }

    #[test]
    fn brute_counts_examples() {
        let cross = s(&[(0., 0.), (1., 1.), (-1., 1.), (1., -1.), (-1., -1.)]);
        let q = counts_brute(&cross, 0, 1).unwrap();
        assert_eq!(q, QuadrantCounts::new(1, 1, 1, 1));
        assert_eq!(phi_from_counts(q), 0.0);

        let pair = s(&[(0., 0.), (1., 1.)]);
        assert_eq!(
            counts_brute(&pair, 0, 1).unwrap(),
            QuadrantCounts::new(0, 1, 0, 0)
        );

        let tied = s(&[(0., 0.), (0., 1.), (1., 0.)]);
        assert_eq!(
            counts_brute(&tied, 0, 1).unwrap(),
            QuadrantCounts::default()
        );

        assert!(counts_brute(&pair, 1, 1).is_err());
        assert!(counts_brute(&pair, 0, 2).is_err());
    }

    #[test]
    fn kind_parsing() {
        for k in StatisticKind::ALL {
            assert_eq!(k.as_str().parse::<StatisticKind>().unwrap(), k);
        }
        assert!("pearson".parse::<StatisticKind>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn points(max: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
            prop::collection::vec((-50f64..50.0, -50f64..50.0), 0..max)
        }

        fn small_int_points(max: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
            prop::collection::vec((-3i32..4, -3i32..4), 0..max)
                .prop_map(|v| v.into_iter().map(|(x, y)| (x as f64, y as f64)).collect())
        }

        proptest! {
            #[test]
            fn statistics_are_bounded_and_symmetric(p in points(25)) {
                let a = s(&p);
                let b = a.swapped();
                for v in [abs_pearson(&a), dcor(&a)] {
                    prop_assert!((0.0..=1.0).contains(&v));
                }
                prop_assert_eq!(abs_pearson(&a), abs_pearson(&b));
                prop_assert_eq!(dcor(&a), dcor(&b));
            }

            #[test]
            fn dcor_matches_double_centering(p in points(25)) {
                let a = s(&p);
                let fast = dcor(&a);
                let slow = if a.len() < 2 { 0.0 } else { dcor_oracle(a.xs(), a.ys()) };
                prop_assert!((fast - slow).abs() < 1e-9, "{} vs {}", fast, slow);
            }

            #[test]
            fn dcor_zero_only_when_degenerate(p in small_int_points(4)) {
                let a = s(&p);
                let degenerate = a.len() < 2 || is_constant(a.xs()) || is_constant(a.ys());
                prop_assert_eq!(dcor(&a) == 0.0, degenerate);
                let slow = if a.len() < 2 { 0.0 } else { dcor_oracle(a.xs(), a.ys()) };
                prop_assert_eq!(slow.abs() < 1e-12, degenerate);
            }

            #[test]
            fn phi_symmetries(a in 0usize..20, b in 0usize..20, c in 0usize..20, d in 0usize..20) {
                let v = phi_from_counts(QuadrantCounts::new(a, b, c, d));
                prop_assert!((0.0..=1.0).contains(&v));
                prop_assert_eq!(v, phi_from_counts(QuadrantCounts::new(a, c, b, d)));
                prop_assert_eq!(v, phi_from_counts(QuadrantCounts::new(b, a, d, c)));
                prop_assert_eq!(v, phi_from_counts(QuadrantCounts::new(c, d, a, b)));
            }

            #[test]
            fn quadrants_cover_rectangle_without_ties(p in points(20)) {
                let a = s(&p);
                prop_assume!(a.len() >= 2 && a.is_tie_free());
                for i in 0..a.len() {
                    for j in (0..a.len()).filter(|&j| j != i) {
                        let q = counts_brute(&a, i, j).unwrap();
                        let inside = points_in_rect(&a, &neighborhood_rect(a.point(i), a.point(j)));
                        prop_assert_eq!(q.total(), inside.len() - 1);
                    }
                }
            }
        }
    }
}
