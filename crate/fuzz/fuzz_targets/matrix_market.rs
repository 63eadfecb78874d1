#![no_main]

use libfuzzer_sys::fuzz_target;
use spm_core::matrix::market::{parse_matrix_market, to_matrix_market_string};
use spm_core::matrix::is_symmetric;
use spm_core::SpdOperator;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(matrix) = parse_matrix_market(text) else { return };

    // Anything accepted must be a symmetric operator that survives a
    // write/read round trip unchanged.
    if matrix.dim() <= 64 {
        assert!(is_symmetric(&matrix));
    }
    let written = to_matrix_market_string(&matrix);
    let back = parse_matrix_market(&written).expect("writer output parses");
    assert_eq!(back, matrix);
});
