#![no_main]
use libfuzzer_sys::fuzz_target;

use sextic_core::fpgroup::Presentation;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = Presentation::parse(s) {
            let p2 = Presentation::parse(&p.to_string()).unwrap();
            assert_eq!(p, p2);
            let _ = p.abelianization();
        }
    }
});
