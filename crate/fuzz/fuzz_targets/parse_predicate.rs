#![no_main]
use libfuzzer_sys::fuzz_target;

use fairkit::search::Predicate;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = text.parse::<Predicate>() {
        assert_eq!(p.to_string().parse::<Predicate>().unwrap(), p);
    }
});
