#![no_main]

use fluxatom_cli::Report;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(report) = Report::from_json(text) {
        let canonical = report.recomputed().to_json();
        assert!(Report::roundtrips(&canonical));
    }
});
