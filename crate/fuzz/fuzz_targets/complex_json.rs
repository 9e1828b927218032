#![no_main]

use libfuzzer_sys::fuzz_target;
use schurfin::complex::ChainComplex;
use schurfin::error::Limits;

fuzz_target!(|data: &[u8]| {
    let limits = Limits {
        max_tensor_dim: 64,
        ..Limits::default()
    };
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(c) = ChainComplex::from_json(s, &limits) {
            let back =
                ChainComplex::from_json(&c.to_json(), &limits).expect("serialized complex reloads");
            assert_eq!(back, c);
            let _ = c.homology();
        }
    }
});
