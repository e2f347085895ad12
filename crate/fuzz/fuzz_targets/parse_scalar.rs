#![no_main]

use libfuzzer_sys::fuzz_target;
use reflinv::scalar::GaussianRational;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // The parser must never panic, and whatever it accepts has to survive a
    // print/parse round trip exactly.
    if let Ok(value) = text.parse::<GaussianRational>() {
        let printed = value.to_string();
        let reparsed: GaussianRational = printed
            .parse()
            .expect("canonical form must reparse");
        assert_eq!(reparsed, value, "round trip changed the value");
    }
});
