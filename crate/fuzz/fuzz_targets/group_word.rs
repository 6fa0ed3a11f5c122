#![no_main]

use libfuzzer_sys::fuzz_target;
use secant_zeta::modgroup::GroupWord;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    // parse, print, reparse: the canonical form must be a fixed point
    if let Ok(word) = input.parse::<GroupWord>() {
        let shown = word.to_string();
        let again: GroupWord = shown.parse().expect("canonical form parses");
        assert_eq!(word, again, "round trip of {shown:?}");
    }
});
