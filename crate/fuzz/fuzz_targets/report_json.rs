#![no_main]

use libfuzzer_sys::fuzz_target;
use msdep_cli::report::{PowerDoc, ReportDoc};

fuzz_target!(|data: &[u8]| {
    if let Ok(doc) = serde_json::from_slice::<ReportDoc>(data) {
        let text = serde_json::to_string(&doc).unwrap();
        let back: ReportDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
    if let Ok(doc) = serde_json::from_slice::<PowerDoc>(data) {
        let text = serde_json::to_string(&doc).unwrap();
        let back: PowerDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
});
