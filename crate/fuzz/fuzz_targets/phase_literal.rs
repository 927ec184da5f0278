#![no_main]

use franson::cli::parse_phase;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(angle) = parse_phase(text) {
        assert!(angle.is_finite(), "{text:?} parsed to {angle}");
    }
});
