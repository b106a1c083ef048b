#![no_main]

use libfuzzer_sys::fuzz_target;
use orbiform::io::parse_obj;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    if let Ok(mesh) = parse_obj(&text) {
        for f in &mesh.faces {
            assert!(f.iter().all(|&i| i < mesh.vertices.len()));
        }
        let _ = mesh.is_watertight();
        let _ = mesh.euler_characteristic();
    }
});
