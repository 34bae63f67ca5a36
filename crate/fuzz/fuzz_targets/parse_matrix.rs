#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(m) = qcanon::json::parse_matrix(text) {
            let again = qcanon::json::parse_matrix(&qcanon::json::to_json(&m)).unwrap();
            assert_eq!(again, m);
        }
    }
});
