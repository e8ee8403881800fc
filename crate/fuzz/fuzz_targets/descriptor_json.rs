#![no_main]

use chabauty_core::catalog::{descriptor_from_json, descriptor_to_json, descriptor_from_value};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(d) = descriptor_from_json(text) {
        // Accepted descriptors survive a round trip.
        let back = descriptor_from_value(&descriptor_to_json(&d)).expect("re-encoded descriptor parses");
        assert_eq!(back.family.tag(), d.family.tag());
    }
});
