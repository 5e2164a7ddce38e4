#![no_main]
use libfuzzer_sys::fuzz_target;
use vguard::io::{solution_from_json, solution_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(sol) = solution_from_json(text) {
        let back = solution_from_json(&solution_to_json(&sol)).expect("re-encoded solution parses");
        assert_eq!(back.guards, sol.guards);
        assert_eq!(back.algorithm, sol.algorithm);
    }
});
