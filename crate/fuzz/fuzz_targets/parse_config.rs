#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(cfg) = omf_cli::parse_config(text) {
            // accepted distributions must be consistent with v
            if let (Some(p), Some(d)) = (cfg.params, cfg.dist) {
                assert_eq!(d.point_orbits().iter().map(|&x| u64::from(x)).sum::<u64>(), u64::from(p.v()));
            }
        }
    }
});
