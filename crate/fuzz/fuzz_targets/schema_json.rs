#![no_main]

use chabauty_core::schema::ConjugatorSchema;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = ConjugatorSchema::from_json(text) {
        // Evaluation may reject an index but must not panic.
        for n in [1, 2, 10, 1000, u64::MAX] {
            let _ = s.at(n);
        }
    }
});
