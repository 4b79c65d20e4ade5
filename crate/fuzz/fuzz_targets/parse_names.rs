#![no_main]

use libfuzzer_sys::fuzz_target;
use msdep::{DistributionSpec, NullVariant, PValueRule, StatisticKind};

fn round_trips<T>(s: &str)
where
    T: std::str::FromStr + std::fmt::Display + PartialEq + std::fmt::Debug,
{
    if let Ok(v) = s.parse::<T>() {
        let shown = v.to_string();
        assert_eq!(shown.parse::<T>().ok(), Some(v), "{shown}");
    }
}

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    round_trips::<DistributionSpec>(s);
    round_trips::<StatisticKind>(s);
    round_trips::<NullVariant>(s);
    round_trips::<PValueRule>(s);
});
