#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    if input.len() > 4096 {
        return;
    }
    if let Ok(q) = secant_zeta::exact::parse_rational(input) {
        // reduced form round-trips
        let shown = q.to_string();
        let again = secant_zeta::exact::parse_rational(&shown).expect("canonical form parses");
        assert_eq!(q, again);
    }
});
