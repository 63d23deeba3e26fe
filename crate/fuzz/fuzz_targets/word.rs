#![no_main]
use libfuzzer_sys::fuzz_target;

use sextic_core::braid::{format_braid, parse_braid};
use sextic_core::word::FreeWord;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(w) = FreeWord::parse(s) {
        assert_eq!(FreeWord::parse(&w.to_string()).unwrap(), w);
    }
    if let Ok(b) = parse_braid(s) {
        // σ₃ is expanded on parse, so the output only uses s1, s2
        assert_eq!(parse_braid(&format_braid(&b)).unwrap(), b);
    }
});
