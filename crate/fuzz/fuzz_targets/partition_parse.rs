#![no_main]

use libfuzzer_sys::fuzz_target;
use schurfin::partition::Partition;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = s.parse::<Partition>() {
            assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
            assert_eq!(p.transpose().transpose(), p);
        }
    }
});
