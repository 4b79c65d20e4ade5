//! Simple moving average over a z-score profile.

/// Means of every run of `window` consecutive values, so the output has
/// `len - window + 1` entries. Returns `None` when the window is longer than
/// the series; callers then fall back to the raw values.
pub fn moving_average(values: &[f64], window: usize) -> Option<Vec<f64>> {
    assert!(window > 0, "window must be positive");
    if window > values.len() {
        return None;
    }
    let w = window as f64;
    Some(
        values
            .windows(window)
            .map(|run| run.iter().sum::<f64>() / w)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_point_average() {
        assert_eq!(
            moving_average(&[1., 2., 3., 4., 5.], 4),
            Some(vec![2.5, 3.5])
        );
    }

    #[test]
    fn constant_series_is_unchanged() {
        let c = [0.7; 9];
        for w in 1..=9 {
            let s = moving_average(&c, w).unwrap();
            assert_eq!(s.len(), 10 - w);
            assert!(s.iter().all(|&v| (v - 0.7).abs() < 1e-15));
        }
    }

    #[test]
    fn window_one_is_identity() {
        let v = [3., -1., 2.5];
        assert_eq!(moving_average(&v, 1).unwrap(), v);
    }

    #[test]
    fn oversized_window() {
        assert_eq!(moving_average(&[1., 2., 3.], 4), None);
        assert_eq!(moving_average(&[1., 2., 3.], 3), Some(vec![2.0]));
    }
}
