#![no_main]
use libfuzzer_sys::fuzz_target;

use fairkit::format::{export_instance, parse_instance};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(inst) = parse_instance(text) {
        // whatever parses must export canonically and parse back to the same thing
        let canonical = export_instance(&inst);
        let again = parse_instance(&canonical).expect("canonical export parses");
        assert_eq!(export_instance(&again), canonical);
    }
});
