#![no_main]
use libfuzzer_sys::fuzz_target;
use proxy_ring::wire::{decode_warrant, encode_warrant};

fuzz_target!(|data: &[u8]| {
    if let Ok(v) = decode_warrant(data) {
        assert_eq!(encode_warrant(&v), data);
    }
});
