#![no_main]
use libfuzzer_sys::fuzz_target;
use vguard::io::{emit_polygon, parse_polygon};

// Anything that parses must survive emit and re-parse unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = parse_polygon(text) else {
        return;
    };
    let again = parse_polygon(&emit_polygon(&file)).expect("emitted file parses");
    assert_eq!(again.polygon.vertices(), file.polygon.vertices());
    assert_eq!(again.edge, file.edge);
    assert_eq!(again.seed, file.seed);
});
