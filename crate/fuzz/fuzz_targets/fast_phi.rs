#![no_main]

use libfuzzer_sys::fuzz_target;
use msdep::{counts_brute, counts_for_center, BivariateSample, Error};

// Pairs of little-endian u16 form the points; duplicated coordinates must be
// reported as ties rather than miscounted.
fuzz_target!(|data: &[u8]| {
    let words: Vec<f64> = data
        .chunks_exact(2)
        .map(|c| f64::from(u16::from_le_bytes([c[0], c[1]])))
        .collect();
    let points: Vec<(f64, f64)> = words.chunks_exact(2).map(|p| (p[0], p[1])).collect();
    if points.len() < 2 || points.len() > 200 {
        return;
    }
    let sample = BivariateSample::from_points(&points).unwrap();
    for i in 0..sample.len() {
        match counts_for_center(&sample, i) {
            Ok(fast) => {
                for j in (0..sample.len()).filter(|&j| j != i) {
                    assert_eq!(fast[j], counts_brute(&sample, i, j).unwrap());
                }
            }
            Err(Error::TiesPresent) => assert!(!sample.is_tie_free()),
            Err(e) => panic!("{e}"),
        }
    }
});
