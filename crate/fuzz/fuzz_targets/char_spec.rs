#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    // parsing must never panic; on success the table flags must be coherent
    if let Ok(chi) = secant_zeta::dirichlet::parse_character_spec(input) {
        assert!(chi.conductor() <= chi.modulus().max(1));
        assert_eq!(chi.is_principal(), chi.conductor() == 1);
        let _ = chi.value(-1);
    }
});
