#![no_main]

use libfuzzer_sys::fuzz_target;
use schurfin::poly::Poly;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = s.parse::<Poly>() {
            assert_eq!(p.to_string().parse::<Poly>().unwrap(), p);
        }
    }
});
