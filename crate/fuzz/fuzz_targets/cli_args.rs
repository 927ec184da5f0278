#![no_main]

use franson::cli::{parse_config_with, CliRequest};
use libfuzzer_sys::fuzz_target;

// NUL-separated argv; the run file, if requested, is the last segment.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let mut parts: Vec<&str> = text.split('\0').collect();
    let file = if parts.len() > 1 { parts.pop().unwrap_or_default() } else { "" };
    let result = parse_config_with(parts, text.split('\0').next(), |_| Ok(file.to_string()));
    match result {
        Ok(CliRequest::Run(config)) => {
            assert!(config.i0 > 0.0);
            assert!(config.source.mean_photon_number > 0.0);
        }
        Ok(CliRequest::Info(_)) => {}
        Err(e) => assert!(matches!(e.exit_code(), 2 | 3 | 4)),
    }
});
