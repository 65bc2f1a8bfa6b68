mod common;

use common::*;
use proxy_ring::ringsig::ring_verify;
use proxy_ring::wire::{self, decode_any, DecodeError, Kind, WireObject};
use proxy_ring::{OpCounter, Verdict};

/// Rewrites the fixtures. Run with `--ignored` only when the format is
/// deliberately changed.
#[test]
#[ignore]
fn regenerate_fixtures() {
    std::fs::create_dir_all(fixture_dir()).unwrap();
    for (name, obj) in golden_objects() {
        std::fs::write(fixture_dir().join(format!("{name}.hex")), wire::armor(&obj.encode())).unwrap();
    }
}

#[test]
fn fixtures_match_regenerated_objects() {
    for (name, obj) in golden_objects() {
        let bytes = read_fixture(name);
        assert_eq!(bytes, obj.encode(), "{name} drifted");
        assert_eq!(decode_any(&bytes).unwrap(), obj, "{name}");
    }
}

#[test]
fn golden_signature_verifies() {
    let suite = proxy_ring::PairingSuite::default();
    let sig = wire::decode_signature(&read_fixture("signature")).unwrap();
    let mut ctr = OpCounter::new();
    assert_eq!(ring_verify(&suite, &sig, GOLDEN_MESSAGE, &mut ctr), Verdict::Accept);
    assert_ne!(ring_verify(&suite, &sig, b"other", &mut ctr), Verdict::Accept);
}

#[test]
fn cross_kind_decode_fails() {
    let token = read_fixture("token");
    assert!(matches!(
        wire::decode_signature(&token),
        Err(DecodeError::WrongKind {
            expected: Kind::RingSignature,
            found: Kind::DelegationToken
        })
    ));
    let sig = read_fixture("signature");
    assert!(wire::decode_token(&sig).is_err());
    assert!(wire::decode_public_key(&read_fixture("secret_key")).is_err());
    assert!(wire::decode_secret_key(&read_fixture("public_key")).is_err());
    assert!(wire::decode_warrant(&read_fixture("proxy_key")).is_err());
}

fn contains(hay: &[u8], needle: &[u8]) -> bool {
    hay.windows(needle.len()).any(|w| w == needle)
}

#[test]
fn secrets_never_in_public_payloads() {
    let objs = golden_objects();
    let secret = match &objs[1].1 {
        WireObject::SecretKey(sk) => sk.scalar().to_bytes(),
        _ => unreachable!(),
    };
    let s_key = match &objs[5].1 {
        WireObject::ProxyKey(m) => m.signing_key().to_bytes(),
        _ => unreachable!(),
    };
    assert!(contains(&read_fixture("secret_key"), &secret));
    assert!(contains(&read_fixture("proxy_key"), &s_key));
    for name in ["public_key", "signature", "token", "warrant"] {
        let bytes = read_fixture(name);
        assert!(!contains(&bytes, &secret), "{name} leaks the secret scalar");
        assert!(!contains(&bytes, &s_key), "{name} leaks the proxy key");
    }
}

#[test]
fn decoded_signature_verifies_iff_original_did() {
    let suite = proxy_ring::PairingSuite::default();
    let mut r = rng(77);
    let world = World::new(3, b"roundtrip", &mut r);
    for k in 0..3 {
        let good = world.sign(k, b"m", &mut r);
        let mut bad = good.clone();
        bad.glue.swap(0, 2);
        for sig in [good, bad] {
            let decoded = wire::decode_signature(&wire::encode_signature(&sig)).unwrap();
            assert_eq!(decoded, sig);
            let mut ctr = OpCounter::new();
            assert_eq!(
                ring_verify(&suite, &decoded, b"m", &mut ctr),
                ring_verify(&suite, &sig, b"m", &mut ctr)
            );
        }
    }
}

#[test]
fn glue_count_mismatch_is_decode_error() {
    let mut bytes = read_fixture("signature");
    // layout: envelope header | warrant | ring | u32(n) | glue | T
    let header = 4 + 1 + 4 + proxy_ring::SUITE_ID.len() + 1;
    let obj = wire::decode_warrant(&read_fixture("warrant")).unwrap();
    let ring_len = 96 + 4 + 3 * 96;
    let n_at = header + wire::warrant_bytes(&obj).len() + ring_len;
    assert_eq!(&bytes[n_at..n_at + 4], &[0, 0, 0, 3]);
    bytes[n_at + 3] = 2;
    assert_eq!(wire::decode_signature(&bytes), Err(DecodeError::LengthMismatch));
}
