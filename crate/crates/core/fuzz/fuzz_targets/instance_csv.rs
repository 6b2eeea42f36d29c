#![no_main]

use libfuzzer_sys::fuzz_target;
use typesched::model::{parse_instance_csv, write_instance_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(instance) = parse_instance_csv(text) else { return };
    // Anything accepted must survive a write/parse round trip unchanged.
    let mut out = Vec::new();
    write_instance_csv(&instance, &mut out).unwrap();
    let again = parse_instance_csv(std::str::from_utf8(&out).unwrap()).unwrap();
    assert_eq!(again, instance);
});
