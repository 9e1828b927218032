#![no_main]

use libfuzzer_sys::fuzz_target;
use schurfin::dsl;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(e) = dsl::parse(s) {
            let printed = e.to_string();
            let again = dsl::parse(&printed).expect("printed expression parses");
            assert_eq!(again, e, "round trip changed {printed:?}");
        }
    }
});
