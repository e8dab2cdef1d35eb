#![no_main]

use fluxatom::Half;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(h) = text.parse::<Half>() {
        let again: Half = h.to_string().parse().expect("displayed half-integer parses");
        assert_eq!(h, again);
    }
});
