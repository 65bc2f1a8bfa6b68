#![no_main]
use libfuzzer_sys::fuzz_target;
use proxy_ring::wire::{decode_secret_key, encode_secret_key};

fuzz_target!(|data: &[u8]| {
    if let Ok(v) = decode_secret_key(data) {
        assert_eq!(encode_secret_key(&v), data);
    }
});
