#![no_main]

use libfuzzer_sys::fuzz_target;
use msdep::{surpasser_count, trail_count};

// Each byte is one value, so short inputs are dense with ties.
fuzz_target!(|data: &[u8]| {
    let s: Vec<f64> = data.iter().map(|&b| f64::from(b)).collect();
    let trail: Vec<usize> = (0..s.len())
        .map(|j| (0..=j).filter(|&k| s[k] <= s[j]).count())
        .collect();
    let surpass: Vec<usize> = (0..s.len())
        .map(|j| (j + 1..s.len()).filter(|&k| s[j] < s[k]).count())
        .collect();
    assert_eq!(trail_count(&s), trail);
    assert_eq!(surpasser_count(&s), surpass);
});
