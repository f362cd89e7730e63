#![no_main]

use fssp_core::parse_config;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = parse_config(text) {
        assert!(c.violation().is_none());
        let again = parse_config(&c.to_string()).expect("serialized form parses");
        assert_eq!(again, c);
    }
});
