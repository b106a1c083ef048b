#![no_main]

use libfuzzer_sys::fuzz_target;
use orbiform::io::parse_config;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cfg) = parse_config(text) {
        // accepted configs must evaluate to finite values
        assert!(cfg.f.eval(0.3, 0.7).is_finite());
        assert!(cfg.nphi >= 8 && cfg.nphi % 2 == 0 && cfg.ntheta >= 4);
    }
});
