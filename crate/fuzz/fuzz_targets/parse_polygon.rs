#![no_main]

use libfuzzer_sys::fuzz_target;
use orbiform::io::parse_polygon;
use orbiform::shadow::{shadow2d, PlanarBody};

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(pts) = parse_polygon(&text) {
        assert!(pts.len() >= 3);
        let _ = shadow2d(&PlanarBody::polygon(pts), 16);
    }
});
