#![no_main]

use libfuzzer_sys::fuzz_target;
use typesched::harness::ExperimentConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(config) = ExperimentConfig::from_json(text) else { return };
    let again = ExperimentConfig::from_json(&config.to_json()).unwrap();
    assert_eq!(again, config);
    assert!(!config.grid().unwrap().is_empty());
});
