#![no_main]

use libfuzzer_sys::fuzz_target;
use reflinv::forms::MonomialIndex;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(index) = text.parse::<MonomialIndex>() {
        // accepted indices must encode into range and decode back exactly
        let pos = index.encode();
        let back = MonomialIndex::decode(index.degree(), pos);
        assert_eq!(back, index);
        assert_eq!(index.to_string().parse::<MonomialIndex>().unwrap(), index);
    }
});
