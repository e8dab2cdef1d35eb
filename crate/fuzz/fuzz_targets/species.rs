#![no_main]

use fluxatom::reference::parse_species;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(species) = parse_species(text) {
        for s in species {
            assert!(s.z >= 1);
            assert!(s.g_i.is_finite());
        }
    }
});
