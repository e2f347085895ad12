#![no_main]

use libfuzzer_sys::fuzz_target;
use reflinv::forms::parse_monomial_list;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(list) = parse_monomial_list(text) {
        // an accepted list is degree-consistent and round-trips line by line
        if let Some(first) = list.first() {
            let degree = first.degree();
            for index in &list {
                assert_eq!(index.degree(), degree);
                assert_eq!(
                    index.to_string().parse::<reflinv::forms::MonomialIndex>().unwrap(),
                    *index
                );
            }
        }
    }
});
