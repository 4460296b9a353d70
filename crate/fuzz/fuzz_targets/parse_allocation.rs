#![no_main]
use libfuzzer_sys::fuzz_target;

use fairkit::catalog::fixture;
use fairkit::format::parse_allocation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let inst = fixture("FIX-T1").unwrap().instance;
    if let Ok(a) = parse_allocation(&inst, text) {
        assert_eq!(a.agents(), inst.agents());
    }
});
