#![no_main]
use libfuzzer_sys::fuzz_target;
use proxy_ring::wire::{decode_token, encode_token};

fuzz_target!(|data: &[u8]| {
    if let Ok(v) = decode_token(data) {
        assert_eq!(encode_token(&v), data);
    }
});
