#![no_main]

use libfuzzer_sys::fuzz_target;
use qweights_cli::format::parse_q_list;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(list) = parse_q_list(text) {
        assert!(!list.is_empty());
        assert!(list.iter().all(|&q| q >= 1));
        let joined = list.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        assert_eq!(parse_q_list(&joined), Ok(list));
    }
});
