#![no_main]

use libfuzzer_sys::fuzz_target;
use quandleforge::classify::QuandleDatabase;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(db) = QuandleDatabase::parse(text) {
        assert_eq!(QuandleDatabase::parse(&db.to_text()).unwrap(), db);
    }
});
