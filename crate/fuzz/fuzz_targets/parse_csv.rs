#![no_main]

use libfuzzer_sys::fuzz_target;
use msdep::io::{read_csv, write_csv};

// Anything that parses must survive a write/read round trip unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(sample) = read_csv(data) else {
        return;
    };
    let mut buf = Vec::new();
    write_csv(&sample, &mut buf).unwrap();
    let again = read_csv(buf.as_slice()).expect("re-reading written csv");
    assert_eq!(again, sample);
});
