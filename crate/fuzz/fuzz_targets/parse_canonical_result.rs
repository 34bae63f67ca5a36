#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(r) = qcanon::json::parse_canonical_result(text) {
            let _ = qcanon::littlewood::decompose(&r);
        }
    }
});
