#![no_main]

use chabauty_core::config::ExperimentConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = ExperimentConfig::from_json(text) {
        let back = ExperimentConfig::from_value(&cfg.to_json()).expect("re-encoded config parses");
        assert_eq!(back.indices, cfg.indices);
        assert_eq!(back.seed, cfg.seed);
    }
});
