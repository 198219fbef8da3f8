#![no_main]

use libfuzzer_sys::fuzz_target;

// Decoding must never panic: every input is either a valid lattice or a
// structured error. Round-trip accepted inputs through the canonical form.
fuzz_target!(|data: &[u8]| {
    if data.len() > 1 << 16 {
        return;
    }
    if let Ok(lat) = mlat::format::from_file(data) {
        let canon = mlat::format::to_file(&lat);
        let again = mlat::format::from_file(&canon).expect("canonical form must parse");
        assert_eq!(mlat::format::to_file(&again), canon);
    }
});
