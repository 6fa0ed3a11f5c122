#![no_main]

use libfuzzer_sys::fuzz_target;
use secant_zeta_cli::config::RunConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(input) = std::str::from_utf8(data) else {
        return;
    };
    // arbitrary JSON in; accepted configs must serialize and parse back
    if let Ok(cfg) = serde_json::from_str::<RunConfig>(input) {
        let json = serde_json::to_string(&cfg).expect("serializable");
        let back: RunConfig = serde_json::from_str(&json).expect("round trip");
        let json2 = serde_json::to_string(&back).expect("serializable");
        assert_eq!(json, json2);
    }
});
