#![no_main]

use libfuzzer_sys::fuzz_target;
use quandleforge::rack::{canonical_form, RackTable};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(x) = RackTable::from_text(text) {
        assert_eq!(RackTable::from_text(&x.to_text()).unwrap(), x);
        if x.size() <= 8 {
            let c = canonical_form(&x);
            assert_eq!(canonical_form(&c), c);
        }
    }
});
