#![no_main]

use libfuzzer_sys::fuzz_target;
use qweights_cli::format::{parse_ratio, ratio};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(value) = parse_ratio(text) {
        let shown = ratio(&value);
        assert_eq!(parse_ratio(&shown).as_ref(), Ok(&value));
        assert_eq!(ratio(&parse_ratio(&shown).unwrap()), shown);
    }
});
