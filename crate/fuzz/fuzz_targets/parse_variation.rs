#![no_main]

use fssp_core::Variation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = text.parse::<Variation>() {
        assert_eq!(v.to_string().parse::<Variation>().unwrap(), v);
    }
});
