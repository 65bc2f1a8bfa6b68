#![no_main]
use libfuzzer_sys::fuzz_target;
use proxy_ring::wire::{decode_proxy_key, encode_proxy_key};

fuzz_target!(|data: &[u8]| {
    if let Ok(v) = decode_proxy_key(data) {
        assert_eq!(encode_proxy_key(&v), data);
    }
});
