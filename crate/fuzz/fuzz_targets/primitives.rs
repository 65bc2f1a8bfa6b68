#![no_main]
use libfuzzer_sys::fuzz_target;
use proxy_ring::{HPoint, KPoint, Scalar, TElem};

// First byte picks the decoder, the rest is its input.
fuzz_target!(|data: &[u8]| {
    let Some((&which, rest)) = data.split_first() else {
        return;
    };
    match which % 4 {
        0 => {
            if let Ok(s) = Scalar::from_bytes(rest) {
                assert_eq!(s.to_bytes(), rest);
            }
        }
        1 => {
            if let Ok(p) = HPoint::from_bytes(rest) {
                assert_eq!(p.to_bytes(), rest);
            }
        }
        2 => {
            if let Ok(p) = KPoint::from_bytes(rest) {
                assert_eq!(p.to_bytes(), rest);
            }
        }
        _ => {
            if let Ok(t) = TElem::from_bytes(rest) {
                assert_eq!(t.to_bytes(), rest);
            }
        }
    }
});
