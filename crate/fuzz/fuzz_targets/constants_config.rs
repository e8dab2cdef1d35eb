#![no_main]

use fluxatom::constants::{apply_overrides, parse_config};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(pairs) = parse_config(text) {
        if let Ok(consts) = apply_overrides(pairs.iter().map(|(k, v)| (k.as_str(), *v))) {
            consts.check_consistency().expect("accepted constants are consistent");
        }
    }
});
