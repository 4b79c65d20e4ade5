//! Minimal line chart of a z-score profile.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 40.0;

/// Renders `z` against `k = 1..` as a polyline, plus the smoothed series when
/// given (plotted at the first index of each window). A dashed line marks
/// `z = 0` when it falls inside the plotted range.
pub fn zprofile_svg(z: &[f64], smoothed: Option<&[f64]>) -> String {
    let all = z.iter().chain(smoothed.into_iter().flatten());
    let (mut lo, mut hi) = all.fold((0.0f64, 0.0f64), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if hi - lo < 1e-12 {
        lo -= 1.0;
        hi += 1.0;
    }
    let k_max = z.len().max(2) as f64;
    let px = |k: f64| MARGIN + (k - 1.0) / (k_max - 1.0) * (WIDTH - 2.0 * MARGIN);
    let py = |v: f64| HEIGHT - MARGIN - (v - lo) / (hi - lo) * (HEIGHT - 2.0 * MARGIN);
    let points = |series: &[f64]| {
        let mut s = String::new();
        for (idx, &v) in series.iter().enumerate() {
            if idx > 0 {
                s.push(' ');
            }
            write!(s, "{:.2},{:.2}", px(idx as f64 + 1.0), py(v)).unwrap();
        }
        s
    };

    let (x0, x1) = (MARGIN, WIDTH - MARGIN);
    let (y0, y1) = (HEIGHT - MARGIN, MARGIN);
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(
        svg,
        r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#
    )
    .unwrap();
    writeln!(
        svg,
        r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#
    )
    .unwrap();
    if lo < 0.0 && hi > 0.0 {
        let y = py(0.0);
        writeln!(
            svg,
            r#"<line x1="{x0}" y1="{y:.2}" x2="{x1}" y2="{y:.2}" stroke="gray" stroke-dasharray="4 4"/>"#
        )
        .unwrap();
    }
    writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle">k</text>"#,
        WIDTH / 2.0,
        HEIGHT - 8.0
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="12" y="{}" text-anchor="middle">z</text>"#,
        HEIGHT / 2.0
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{x0}" y="{}" text-anchor="middle">1</text>"#,
        y0 + 16.0
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{x1}" y="{}" text-anchor="middle">{}</text>"#,
        y0 + 16.0,
        z.len()
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{}" y="{y1}" text-anchor="end">{hi:.2}</text>"#,
        x0 - 4.0
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{}" y="{y0}" text-anchor="end">{lo:.2}</text>"#,
        x0 - 4.0
    )
    .unwrap();
    writeln!(
        svg,
        r#"<polyline fill="none" stroke="steelblue" points="{}"/>"#,
        points(z)
    )
    .unwrap();
    if let Some(s) = smoothed {
        writeln!(
            svg,
            r#"<polyline fill="none" stroke="firebrick" points="{}"/>"#,
            points(s)
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_point_per_value() {
        let svg = zprofile_svg(&[1.0, -2.0, 0.5], Some(&[0.0, -0.5]));
        let polylines: Vec<&str> = svg.lines().filter(|l| l.starts_with("<polyline")).collect();
        assert_eq!(polylines.len(), 2);
        assert_eq!(polylines[0].matches(',').count(), 3);
        assert_eq!(polylines[1].matches(',').count(), 2);
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn flat_and_short_series() {
        let svg = zprofile_svg(&[0.0], None);
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
        assert_eq!(
            svg.lines().filter(|l| l.starts_with("<polyline")).count(),
            1
        );
    }
}
