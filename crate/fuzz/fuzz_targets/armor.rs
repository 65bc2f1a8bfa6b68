#![no_main]
use libfuzzer_sys::fuzz_target;
use proxy_ring::wire::{armor, dearmor, read_envelope_bytes, MAGIC};

fuzz_target!(|data: &[u8]| {
    if let Ok(raw) = dearmor(data) {
        assert_eq!(armor(&raw).trim_end().as_bytes(), data.trim_ascii());
    }
    if let Ok(raw) = read_envelope_bytes(data) {
        if !data.starts_with(MAGIC) {
            assert_eq!(dearmor(data).unwrap(), raw);
        }
    }
});
