#![no_main]
use libfuzzer_sys::fuzz_target;

use sextic_core::map::{parse_skeleton, validate_skeleton};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(map) = parse_skeleton(s) {
        let _ = validate_skeleton(&map);
        let again = parse_skeleton(&map.to_string()).expect("formatted skeleton must parse");
        assert_eq!(map, again);
    }
});
