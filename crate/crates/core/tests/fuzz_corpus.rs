//! Replays the checked-in fuzz corpus through the parsers on stable, with
//! the same round-trip checks the fuzz targets assert.

use std::fs;
use std::path::Path;

use typesched::harness::ExperimentConfig;
use typesched::model::{parse_instance_csv, parse_lambda_list, write_instance_csv};

fn corpus(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut files: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert!(!files.is_empty(), "no seeds for {target}");
    files.iter().map(|p| fs::read_to_string(p).unwrap()).collect()
}

#[test]
fn instance_seeds_parse_and_round_trip() {
    for text in corpus("instance_csv") {
        let instance = parse_instance_csv(&text).unwrap();
        let mut out = Vec::new();
        write_instance_csv(&instance, &mut out).unwrap();
        assert_eq!(parse_instance_csv(std::str::from_utf8(&out).unwrap()).unwrap(), instance);
    }
}

#[test]
fn config_seeds_parse_and_round_trip() {
    for text in corpus("experiment_config") {
        let config = ExperimentConfig::from_json(&text).unwrap();
        assert_eq!(ExperimentConfig::from_json(&config.to_json()).unwrap(), config);
        assert!(!config.grid().unwrap().is_empty());
    }
}

#[test]
fn lambda_seeds_parse() {
    for text in corpus("lambda_list") {
        let values = parse_lambda_list(&text).unwrap();
        let joined = values.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
        assert_eq!(parse_lambda_list(&joined).unwrap(), values);
    }
}
