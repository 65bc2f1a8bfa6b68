#![no_main]
use libfuzzer_sys::fuzz_target;
use proxy_ring::wire::{decode_any, Envelope};

fuzz_target!(|data: &[u8]| {
    if let Ok(env) = Envelope::decode(data) {
        assert_eq!(env.encode(), data);
    }
    // Anything that decodes must be the unique encoding of its value.
    if let Ok(obj) = decode_any(data) {
        assert_eq!(obj.encode(), data);
    }
});
