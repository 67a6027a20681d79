#![no_main]

use libfuzzer_sys::fuzz_target;
use quandleforge::perm::{parse_cycles, parse_generator_list};

fuzz_target!(|data: &[u8]| {
    let Some((&d, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let degree = usize::from(d % 16);
    if let Ok(p) = parse_cycles(text, degree) {
        assert_eq!(p.degree(), degree);
        assert_eq!(parse_cycles(&p.to_string(), degree).unwrap(), p);
    }
    if let Ok(gens) = parse_generator_list(text, degree) {
        assert!(gens.iter().all(|g| g.degree() == degree));
    }
});
