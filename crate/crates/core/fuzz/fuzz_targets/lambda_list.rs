#![no_main]

use libfuzzer_sys::fuzz_target;
use typesched::model::parse_lambda_list;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(values) = parse_lambda_list(text) {
        assert!(!values.is_empty());
        let joined = values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        let again = parse_lambda_list(&joined).unwrap();
        // Bitwise, so NaN entries compare equal to themselves.
        let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&again), bits(&values));
    }
});
