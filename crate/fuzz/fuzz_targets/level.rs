#![no_main]

use fluxatom::Level;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(level) = text.parse::<Level>() {
        let again: Level = level.to_string().parse().expect("displayed level parses");
        assert_eq!(level, again);
        assert!(level.l < level.n);
    }
});
