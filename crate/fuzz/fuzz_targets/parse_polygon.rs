#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(file) = vguard::io::parse_polygon(text) {
            let n = file.polygon.len();
            assert!(n >= 3);
            assert!(file.polygon.area() >= 0.0);
            if let Some((u, v)) = file.edge {
                assert!(u < n && v < n);
            }
        }
    }
});
