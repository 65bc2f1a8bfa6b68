#![no_main]
use libfuzzer_sys::fuzz_target;
use proxy_ring::ringsig::ring_verify;
use proxy_ring::wire::{decode_signature, encode_signature};
use proxy_ring::{OpCounter, PairingSuite};

fuzz_target!(|data: &[u8]| {
    let Ok(sig) = decode_signature(data) else {
        return;
    };
    assert_eq!(encode_signature(&sig), data);
    let mut ctr = OpCounter::new();
    let _ = ring_verify(&PairingSuite::default(), &sig, b"fuzz", &mut ctr);
    assert!(ctr.pairings <= 2);
});
