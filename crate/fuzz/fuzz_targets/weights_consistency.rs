#![no_main]

use libfuzzer_sys::fuzz_target;
use qweights::{oracle, weights, CurveFamily};

fuzz_target!(|data: [u8; 3]| {
    let n = 2 + u64::from(data[0] % 15);
    let d = n + 1 + u64::from(data[1] % 48);
    let q = 1 + u64::from(data[2] % 16);
    let Ok(family) = CurveFamily::new(n, d) else { return };
    let expected = oracle::oracle_report(&family, q).unwrap();
    let report = weights::branch_weight_report(&family, q).unwrap();
    assert_eq!(report.affine_weight, expected.affine_weight);
    assert_eq!(report.infinity_weight, expected.infinity_weight);
    if q >= 2 {
        let parts = weights::breakdown(&family, q).unwrap();
        assert_eq!((parts.w1, parts.w2), (expected.w1, expected.w2));
    }
});
