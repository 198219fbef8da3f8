#![no_main]

use libfuzzer_sys::fuzz_target;

// The predicate parser must never panic, and anything it accepts must
// survive a display/reparse round trip.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 4096 {
        return;
    }
    if let Ok(expr) = mlat::expr::parse_predicate(text) {
        let again = mlat::expr::parse_predicate(&expr.to_string())
            .expect("printed form must reparse");
        assert_eq!(again, expr);
    }
});
