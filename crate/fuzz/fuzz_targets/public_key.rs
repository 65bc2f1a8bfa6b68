#![no_main]
use libfuzzer_sys::fuzz_target;
use proxy_ring::wire::{decode_public_key, encode_public_key};

fuzz_target!(|data: &[u8]| {
    if let Ok(v) = decode_public_key(data) {
        assert_eq!(encode_public_key(&v), data);
    }
});
