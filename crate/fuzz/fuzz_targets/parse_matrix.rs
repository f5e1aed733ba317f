#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(m) = omf_core::parse_matrix(text) {
            // anything accepted must round-trip exactly
            let again = omf_core::write_matrix_string(&m);
            assert_eq!(omf_core::parse_matrix(&again).unwrap(), m);
        }
    }
});
