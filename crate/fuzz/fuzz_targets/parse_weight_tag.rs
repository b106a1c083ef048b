#![no_main]

use libfuzzer_sys::fuzz_target;
use orbiform::afunc::ThetaWeight;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(w) = text.parse::<ThetaWeight>() {
        // Display must round-trip
        assert_eq!(w.to_string().parse::<ThetaWeight>().ok(), Some(w));
        assert!(w.value(1.1).is_finite());
    }
});
