#![no_main]

use libfuzzer_sys::fuzz_target;
use schurfin::complex::ShortExactSequence;
use schurfin::error::Limits;

fuzz_target!(|data: &[u8]| {
    let limits = Limits {
        max_tensor_dim: 32,
        ..Limits::default()
    };
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = ShortExactSequence::from_json(s, &limits);
    }
});
