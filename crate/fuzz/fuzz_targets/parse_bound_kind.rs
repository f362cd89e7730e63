#![no_main]

use fssp_core::solution::StateBoundKind;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(kind) = text.parse::<StateBoundKind>() {
        assert_eq!(kind.to_string().parse::<StateBoundKind>().unwrap(), kind);
    }
});
