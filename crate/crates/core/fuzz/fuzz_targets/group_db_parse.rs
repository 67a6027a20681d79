#![no_main]

use libfuzzer_sys::fuzz_target;
use quandleforge::classify::GroupDatabase;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(db) = GroupDatabase::parse(text) {
        let again = GroupDatabase::parse(&db.to_text()).unwrap();
        assert_eq!(again.len(), db.len());
        assert_eq!(again.degree(), db.degree());
    }
});
