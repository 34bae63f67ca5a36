#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(s) = qcanon::json::parse_summary(text) {
            if s.size() <= 64 {
                let _ = qcanon::special_forms::assemble_blocks(&s);
            }
        }
    }
});
