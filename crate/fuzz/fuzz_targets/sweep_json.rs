#![no_main]

use libfuzzer_sys::fuzz_target;
use qweights_cli::sweep::{parse_json, recompute_mismatches, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(rows) = parse_json(text) else { return };
    assert_eq!(parse_json(&to_json(&rows)).unwrap(), rows);
    if rows.len() <= 8 && rows.iter().all(|r| r.n <= 32 && r.d <= 128 && r.q <= 64) {
        let _ = recompute_mismatches(&rows, 6);
    }
});
