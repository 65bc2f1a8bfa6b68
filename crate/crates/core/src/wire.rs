//! Canonical byte formats.
//!
//! Every object travels in an envelope:
//!
//! ```text
//! "PRS1" | 0x01 | u32 len | suite_id | kind | payload
//! ```
//!
//! All integers are big-endian, variable-length fields carry a `u32` length
//! prefix, points are compressed. Decoders reject trailing bytes and any
//! encoding that would not be reproduced by the matching encoder, so each
//! valid object has exactly one byte form.

use thiserror::Error;

use crate::algebra::{HPoint, Scalar, TElem, HPOINT_LEN, KPOINT_LEN, SCALAR_LEN, SUITE_ID, TELEM_LEN};
use crate::delegation::{DelegationToken, ProxyKeyMaterial, Warrant, NONCE_LEN};
use crate::pbsss::{PublicKey, SecretKey};
use crate::ringsig::{ProxyRingSignature, RingSpec};

pub const MAGIC: &[u8; 4] = b"PRS1";
pub const VERSION: u8 = 0x01;

/// Secret-bearing payloads carry this flag; other values are reserved for
/// encrypted storage.
pub const PLAINTEXT_FLAG: u8 = 0x00;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("input truncated")]
    Truncated,
    #[error("trailing bytes after object")]
    TrailingBytes,
    #[error("bad magic")]
    BadMagic,
    #[error("unsupported version {0:#04x}")]
    BadVersion(u8),
    #[error("unknown kind {0:#04x}")]
    UnknownKind(u8),
    #[error("expected {expected:?}, found {found:?}")]
    WrongKind { expected: Kind, found: Kind },
    #[error("suite id is not ASCII")]
    NonAsciiSuite,
    #[error("suite {0:?} is not supported")]
    SuiteMismatch(String),
    #[error("invalid scalar encoding")]
    InvalidScalar,
    #[error("invalid point encoding")]
    InvalidPoint,
    #[error("invalid target-group encoding")]
    InvalidTarget,
    #[error("public key is the identity")]
    IdentityKey,
    #[error("secret scalar is zero")]
    ZeroScalar,
    #[error("duplicate key in list")]
    DuplicateMember,
    #[error("key list is empty")]
    EmptyList,
    #[error("glue count does not match ring size")]
    LengthMismatch,
    #[error("unsupported secret storage flag {0:#04x}")]
    UnsupportedKeyFlag(u8),
    #[error("invalid hex armor")]
    BadHex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum Kind {
    PublicKey = 0x01,
    SecretKey = 0x02,
    RingSignature = 0x03,
    DelegationToken = 0x04,
    Warrant = 0x05,
    ProxyKey = 0x06,
}

impl TryFrom<u8> for Kind {
    type Error = DecodeError;

    fn try_from(b: u8) -> Result<Self, DecodeError> {
        Ok(match b {
            0x01 => Kind::PublicKey,
            0x02 => Kind::SecretKey,
            0x03 => Kind::RingSignature,
            0x04 => Kind::DelegationToken,
            0x05 => Kind::Warrant,
            0x06 => Kind::ProxyKey,
            other => return Err(DecodeError::UnknownKind(other)),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Envelope {
    pub suite_id: String,
    pub kind: Kind,
    pub payload: Vec<u8>,
}

impl Envelope {
    pub fn new(kind: Kind, payload: Vec<u8>) -> Self {
        Envelope {
            suite_id: SUITE_ID.to_string(),
            kind,
            payload,
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 + 1 + 4 + self.suite_id.len() + 1 + self.payload.len());
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        put_bytes(&mut out, self.suite_id.as_bytes());
        out.push(self.kind as u8);
        out.extend_from_slice(&self.payload);
        out
    }

    /// Parses the envelope framing only; the payload is not interpreted and
    /// the suite is not checked.
    pub fn decode(bytes: &[u8]) -> Result<Self, DecodeError> {
        let mut r = Reader::new(bytes);
        if r.take(4)? != MAGIC {
            return Err(DecodeError::BadMagic);
        }
        let version = r.u8()?;
        if version != VERSION {
            return Err(DecodeError::BadVersion(version));
        }
        let suite = r.bytes()?;
        if !suite.is_ascii() {
            return Err(DecodeError::NonAsciiSuite);
        }
        let kind = Kind::try_from(r.u8()?)?;
        Ok(Envelope {
            suite_id: String::from_utf8(suite.to_vec()).expect("ASCII is UTF-8"),
            kind,
            payload: r.rest().to_vec(),
        })
    }

    fn open(bytes: &[u8], expected: Kind) -> Result<Vec<u8>, DecodeError> {
        let env = Envelope::decode(bytes)?;
        if env.suite_id != SUITE_ID {
            return Err(DecodeError::SuiteMismatch(env.suite_id));
        }
        if env.kind != expected {
            return Err(DecodeError::WrongKind {
                expected,
                found: env.kind,
            });
        }
        Ok(env.payload)
    }
}

struct Reader<'a> {
    buf: &'a [u8],
}

impl<'a> Reader<'a> {
    fn new(buf: &'a [u8]) -> Self {
        Reader { buf }
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8], DecodeError> {
        if self.buf.len() < n {
            return Err(DecodeError::Truncated);
        }
        let (head, tail) = self.buf.split_at(n);
        self.buf = tail;
        Ok(head)
    }

    fn u8(&mut self) -> Result<u8, DecodeError> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32, DecodeError> {
        Ok(u32::from_be_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn bytes(&mut self) -> Result<&'a [u8], DecodeError> {
        let len = self.u32()? as usize;
        self.take(len)
    }

    fn rest(&mut self) -> &'a [u8] {
        std::mem::take(&mut self.buf)
    }

    fn finish(&self) -> Result<(), DecodeError> {
        if self.buf.is_empty() {
            Ok(())
        } else {
            Err(DecodeError::TrailingBytes)
        }
    }

    fn public_key(&mut self) -> Result<PublicKey, DecodeError> {
        PublicKey::from_bytes(self.take(KPOINT_LEN)?)
    }

    fn h_point(&mut self) -> Result<HPoint, DecodeError> {
        HPoint::from_bytes(self.take(HPOINT_LEN)?)
    }

    fn member_list(&mut self) -> Result<Vec<PublicKey>, DecodeError> {
        let count = self.u32()? as usize;
        if count.saturating_mul(KPOINT_LEN) > self.buf.len() {
            return Err(DecodeError::Truncated);
        }
        (0..count).map(|_| self.public_key()).collect()
    }

    fn warrant(&mut self) -> Result<Warrant, DecodeError> {
        let body = self.bytes()?.to_vec();
        let original = self.public_key()?;
        let nonce: [u8; NONCE_LEN] = self.take(NONCE_LEN)?.try_into().expect("nonce length");
        let authorized = self.member_list()?;
        Warrant::new(body, original, authorized, nonce).map_err(list_error)
    }

    fn ring(&mut self) -> Result<RingSpec, DecodeError> {
        let original = self.public_key()?;
        let members = self.member_list()?;
        RingSpec::new(original, members).map_err(list_error)
    }

    fn secret_flag(&mut self) -> Result<(), DecodeError> {
        match self.u8()? {
            PLAINTEXT_FLAG => Ok(()),
            other => Err(DecodeError::UnsupportedKeyFlag(other)),
        }
    }
}

fn list_error(e: crate::Error) -> DecodeError {
    match e {
        crate::Error::EmptyAuthorizedList | crate::Error::EmptyRing => DecodeError::EmptyList,
        _ => DecodeError::DuplicateMember,
    }
}

fn put_bytes(out: &mut Vec<u8>, bytes: &[u8]) {
    let len = u32::try_from(bytes.len()).expect("field longer than u32::MAX");
    out.extend_from_slice(&len.to_be_bytes());
    out.extend_from_slice(bytes);
}

/// `u32(n) || pk_1 || ... || pk_n`: the list encoding used inside warrants,
/// rings and the challenge input.
pub fn put_member_list(out: &mut Vec<u8>, members: &[PublicKey]) {
    let n = u32::try_from(members.len()).expect("list longer than u32::MAX");
    out.extend_from_slice(&n.to_be_bytes());
    for m in members {
        out.extend_from_slice(&m.to_bytes());
    }
}

/// Canonical warrant payload; these are the bytes hashed into `H2(w)`.
pub fn warrant_bytes(w: &Warrant) -> Vec<u8> {
    let mut out = Vec::with_capacity(4 + w.body().len() + KPOINT_LEN + NONCE_LEN + 4 + w.authorized().len() * KPOINT_LEN);
    put_bytes(&mut out, w.body());
    out.extend_from_slice(&w.original().to_bytes());
    out.extend_from_slice(w.nonce());
    put_member_list(&mut out, w.authorized());
    out
}

fn ring_bytes(out: &mut Vec<u8>, ring: &RingSpec) {
    out.extend_from_slice(&ring.original().to_bytes());
    put_member_list(out, ring.members());
}

pub fn encode_public_key(pk: &PublicKey) -> Vec<u8> {
    Envelope::new(Kind::PublicKey, pk.to_bytes().to_vec()).encode()
}

pub fn decode_public_key(bytes: &[u8]) -> Result<PublicKey, DecodeError> {
    let payload = Envelope::open(bytes, Kind::PublicKey)?;
    let mut r = Reader::new(&payload);
    let pk = r.public_key()?;
    r.finish()?;
    Ok(pk)
}

pub fn encode_secret_key(sk: &SecretKey) -> Vec<u8> {
    let mut payload = Vec::with_capacity(1 + SCALAR_LEN);
    payload.push(PLAINTEXT_FLAG);
    payload.extend_from_slice(&sk.scalar().to_bytes());
    Envelope::new(Kind::SecretKey, payload).encode()
}

pub fn decode_secret_key(bytes: &[u8]) -> Result<SecretKey, DecodeError> {
    let payload = Envelope::open(bytes, Kind::SecretKey)?;
    let mut r = Reader::new(&payload);
    r.secret_flag()?;
    let s = Scalar::from_bytes(r.take(SCALAR_LEN)?)?;
    r.finish()?;
    SecretKey::from_scalar(s).map_err(|_| DecodeError::ZeroScalar)
}

pub fn encode_warrant(w: &Warrant) -> Vec<u8> {
    Envelope::new(Kind::Warrant, warrant_bytes(w)).encode()
}

pub fn decode_warrant(bytes: &[u8]) -> Result<Warrant, DecodeError> {
    let payload = Envelope::open(bytes, Kind::Warrant)?;
    let mut r = Reader::new(&payload);
    let w = r.warrant()?;
    r.finish()?;
    Ok(w)
}

pub fn encode_token(t: &DelegationToken) -> Vec<u8> {
    let mut payload = warrant_bytes(&t.warrant);
    payload.extend_from_slice(&t.w_sig.to_bytes());
    Envelope::new(Kind::DelegationToken, payload).encode()
}

pub fn decode_token(bytes: &[u8]) -> Result<DelegationToken, DecodeError> {
    let payload = Envelope::open(bytes, Kind::DelegationToken)?;
    let mut r = Reader::new(&payload);
    let warrant = r.warrant()?;
    let w_sig = r.h_point()?;
    r.finish()?;
    Ok(DelegationToken { warrant, w_sig })
}

pub fn encode_proxy_key(m: &ProxyKeyMaterial) -> Vec<u8> {
    let mut payload = warrant_bytes(m.warrant());
    payload.extend_from_slice(&m.proxy_pk().to_bytes());
    payload.push(PLAINTEXT_FLAG);
    payload.extend_from_slice(&m.signing_key().to_bytes());
    Envelope::new(Kind::ProxyKey, payload).encode()
}

pub fn decode_proxy_key(bytes: &[u8]) -> Result<ProxyKeyMaterial, DecodeError> {
    let payload = Envelope::open(bytes, Kind::ProxyKey)?;
    let mut r = Reader::new(&payload);
    let warrant = r.warrant()?;
    let proxy_pk = r.public_key()?;
    r.secret_flag()?;
    let s_key = r.h_point()?;
    r.finish()?;
    Ok(ProxyKeyMaterial::from_parts(warrant, proxy_pk, s_key))
}

pub fn encode_signature(sig: &ProxyRingSignature) -> Vec<u8> {
    let n = sig.glue.len();
    let mut payload = warrant_bytes(&sig.warrant);
    ring_bytes(&mut payload, &sig.ring);
    payload.extend_from_slice(&u32::try_from(n).expect("ring too large").to_be_bytes());
    payload.reserve(n * TELEM_LEN + HPOINT_LEN);
    for c in &sig.glue {
        payload.extend_from_slice(&c.to_bytes());
    }
    payload.extend_from_slice(&sig.t_sum.to_bytes());
    Envelope::new(Kind::RingSignature, payload).encode()
}

pub fn decode_signature(bytes: &[u8]) -> Result<ProxyRingSignature, DecodeError> {
    let payload = Envelope::open(bytes, Kind::RingSignature)?;
    let mut r = Reader::new(&payload);
    let warrant = r.warrant()?;
    let ring = r.ring()?;
    let n = r.u32()? as usize;
    if n != ring.len() {
        return Err(DecodeError::LengthMismatch);
    }
    if n.saturating_mul(TELEM_LEN) > r.buf.len() {
        return Err(DecodeError::Truncated);
    }
    let glue = (0..n)
        .map(|_| TElem::from_bytes(r.take(TELEM_LEN)?))
        .collect::<Result<Vec<_>, _>>()?;
    let t_sum = r.h_point()?;
    r.finish()?;
    Ok(ProxyRingSignature {
        glue,
        t_sum,
        warrant,
        ring,
    })
}

/// Any decoded envelope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WireObject {
    PublicKey(PublicKey),
    SecretKey(SecretKey),
    RingSignature(ProxyRingSignature),
    DelegationToken(DelegationToken),
    Warrant(Warrant),
    ProxyKey(ProxyKeyMaterial),
}

impl WireObject {
    pub fn kind(&self) -> Kind {
        match self {
            WireObject::PublicKey(_) => Kind::PublicKey,
            WireObject::SecretKey(_) => Kind::SecretKey,
            WireObject::RingSignature(_) => Kind::RingSignature,
            WireObject::DelegationToken(_) => Kind::DelegationToken,
            WireObject::Warrant(_) => Kind::Warrant,
            WireObject::ProxyKey(_) => Kind::ProxyKey,
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        match self {
            WireObject::PublicKey(x) => encode_public_key(x),
            WireObject::SecretKey(x) => encode_secret_key(x),
            WireObject::RingSignature(x) => encode_signature(x),
            WireObject::DelegationToken(x) => encode_token(x),
            WireObject::Warrant(x) => encode_warrant(x),
            WireObject::ProxyKey(x) => encode_proxy_key(x),
        }
    }
}

/// Decodes whatever kind the envelope declares.
pub fn decode_any(bytes: &[u8]) -> Result<WireObject, DecodeError> {
    Ok(match Envelope::decode(bytes)?.kind {
        Kind::PublicKey => WireObject::PublicKey(decode_public_key(bytes)?),
        Kind::SecretKey => WireObject::SecretKey(decode_secret_key(bytes)?),
        Kind::RingSignature => WireObject::RingSignature(decode_signature(bytes)?),
        Kind::DelegationToken => WireObject::DelegationToken(decode_token(bytes)?),
        Kind::Warrant => WireObject::Warrant(decode_warrant(bytes)?),
        Kind::ProxyKey => WireObject::ProxyKey(decode_proxy_key(bytes)?),
    })
}

/// Lowercase hex of an envelope, newline-terminated.
pub fn armor(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(bytes.len() * 2 + 1);
    for b in bytes {
        s.push_str(&format!("{b:02x}"));
    }
    s.push('\n');
    s
}

/// Inverse of [`armor`]. Surrounding whitespace is ignored; uppercase digits
/// are rejected so each envelope has one armored form.
pub fn dearmor(text: &[u8]) -> Result<Vec<u8>, DecodeError> {
    let text = text.trim_ascii();
    if !text.len().is_multiple_of(2) {
        return Err(DecodeError::BadHex);
    }
    fn nibble(c: u8) -> Result<u8, DecodeError> {
        match c {
            b'0'..=b'9' => Ok(c - b'0'),
            b'a'..=b'f' => Ok(c - b'a' + 10),
            _ => Err(DecodeError::BadHex),
        }
    }
    text.chunks_exact(2)
        .map(|pair| Ok(nibble(pair[0])? << 4 | nibble(pair[1])?))
        .collect()
}

/// Accepts either a raw envelope or its hex armor. Raw envelopes start
/// with `PRS1`, which is not valid hex, so the two never collide.
pub fn read_envelope_bytes(data: &[u8]) -> Result<Vec<u8>, DecodeError> {
    if data.starts_with(MAGIC) {
        Ok(data.to_vec())
    } else {
        dearmor(data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{KPoint, PairingSuite};
    use crate::pbsss::keygen;
    use proptest::prelude::{any, prop_assert_eq, proptest, ProptestConfig};
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn keys(seed: u64, n: usize) -> Vec<PublicKey> {
        let suite = PairingSuite::default();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        (0..n).map(|_| keygen(&suite, &mut rng).unwrap().1).collect()
    }

    fn warrant(body: &[u8], nonce: [u8; 16], n: usize) -> Warrant {
        let ks = keys(50, n + 1);
        Warrant::new(body.to_vec(), ks[0], ks[1..].to_vec(), nonce).unwrap()
    }

    #[test]
    fn envelope_layout() {
        let pk = keys(51, 1)[0];
        let bytes = encode_public_key(&pk);
        assert_eq!(&bytes[..4], b"PRS1");
        assert_eq!(bytes[4], 0x01);
        assert_eq!(&bytes[5..9], &(SUITE_ID.len() as u32).to_be_bytes());
        assert_eq!(&bytes[9..9 + SUITE_ID.len()], SUITE_ID.as_bytes());
        assert_eq!(bytes[9 + SUITE_ID.len()], 0x01);
        assert_eq!(bytes.len(), 10 + SUITE_ID.len() + KPOINT_LEN);
    }

    #[test]
    fn warrant_layout() {
        let w = warrant(b"abc", [9; 16], 2);
        let b = warrant_bytes(&w);
        assert_eq!(&b[..4], &[0, 0, 0, 3]);
        assert_eq!(&b[4..7], b"abc");
        assert_eq!(&b[7..7 + KPOINT_LEN], &w.original().to_bytes());
        let off = 7 + KPOINT_LEN;
        assert_eq!(&b[off..off + 16], &[9; 16]);
        assert_eq!(&b[off + 16..off + 20], &[0, 0, 0, 2]);
        assert_eq!(b.len(), off + 20 + 2 * KPOINT_LEN);
    }

    #[test]
    fn nonce_changes_hash_input() {
        let a = warrant(b"same", [1; 16], 1);
        let b = warrant(b"same", [2; 16], 1);
        assert_ne!(warrant_bytes(&a), warrant_bytes(&b));
    }

    #[test]
    fn envelope_rejections() {
        let pk = keys(52, 1)[0];
        let good = encode_public_key(&pk);

        let mut bad = good.clone();
        bad[0] = b'X';
        assert_eq!(decode_public_key(&bad), Err(DecodeError::BadMagic));

        let mut bad = good.clone();
        bad[4] = 2;
        assert_eq!(decode_public_key(&bad), Err(DecodeError::BadVersion(2)));

        let mut bad = good.clone();
        bad[9 + SUITE_ID.len()] = 0x7f;
        assert_eq!(decode_public_key(&bad), Err(DecodeError::UnknownKind(0x7f)));

        let mut bad = good.clone();
        bad[9 + SUITE_ID.len()] = Kind::RingSignature as u8;
        assert!(matches!(decode_public_key(&bad), Err(DecodeError::WrongKind { .. })));

        let mut bad = good.clone();
        bad.push(0);
        assert_eq!(decode_public_key(&bad), Err(DecodeError::TrailingBytes));

        assert_eq!(decode_public_key(&good[..good.len() - 1]), Err(DecodeError::Truncated));

        let mut bad = good.clone();
        bad[9] = b'X';
        assert!(matches!(decode_public_key(&bad), Err(DecodeError::SuiteMismatch(_))));

        let id = Envelope::new(Kind::PublicKey, KPoint::identity().to_bytes().to_vec()).encode();
        assert_eq!(decode_public_key(&id), Err(DecodeError::IdentityKey));
    }

    #[test]
    fn warrant_decode_rejections() {
        let ks = keys(53, 2);
        let mut payload = Vec::new();
        put_bytes(&mut payload, b"x");
        payload.extend_from_slice(&ks[0].to_bytes());
        payload.extend_from_slice(&[0; 16]);
        let base = payload.clone();

        put_member_list(&mut payload, &[ks[1], ks[1]]);
        let dup = Envelope::new(Kind::Warrant, payload).encode();
        assert_eq!(decode_warrant(&dup), Err(DecodeError::DuplicateMember));

        let mut payload = base.clone();
        put_member_list(&mut payload, &[]);
        let empty = Envelope::new(Kind::Warrant, payload).encode();
        assert_eq!(decode_warrant(&empty), Err(DecodeError::EmptyList));

        let mut payload = base;
        payload.extend_from_slice(&u32::MAX.to_be_bytes());
        let huge = Envelope::new(Kind::Warrant, payload).encode();
        assert_eq!(decode_warrant(&huge), Err(DecodeError::Truncated));
    }

    #[test]
    fn secret_key_flag_and_zero() {
        let mut payload = vec![1u8];
        payload.extend_from_slice(&Scalar::one().to_bytes());
        let enc = Envelope::new(Kind::SecretKey, payload).encode();
        assert_eq!(decode_secret_key(&enc), Err(DecodeError::UnsupportedKeyFlag(1)));

        let mut payload = vec![0u8];
        payload.extend_from_slice(&Scalar::zero().to_bytes());
        let enc = Envelope::new(Kind::SecretKey, payload).encode();
        assert_eq!(decode_secret_key(&enc), Err(DecodeError::ZeroScalar));
    }

    #[test]
    fn armor_roundtrip_and_detection() {
        let pk = keys(54, 1)[0];
        let raw = encode_public_key(&pk);
        let text = armor(&raw);
        assert!(text.ends_with('\n'));
        assert_eq!(dearmor(text.as_bytes()).unwrap(), raw);
        assert_eq!(read_envelope_bytes(text.as_bytes()).unwrap(), raw);
        assert_eq!(read_envelope_bytes(&raw).unwrap(), raw);
        assert_eq!(dearmor(b"ABCD"), Err(DecodeError::BadHex));
        assert_eq!(dearmor(b"abc"), Err(DecodeError::BadHex));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn warrant_roundtrip(body in proptest::collection::vec(any::<u8>(), 0..64),
                             nonce in any::<[u8; 16]>(),
                             n in 1usize..4) {
            let w = warrant(&body, nonce, n);
            let enc = encode_warrant(&w);
            prop_assert_eq!(decode_warrant(&enc).unwrap(), w);
            prop_assert_eq!(decode_any(&enc).unwrap().encode(), enc);
        }

        #[test]
        fn envelope_decoder_total(data in proptest::collection::vec(any::<u8>(), 0..256)) {
            if let Ok(obj) = decode_any(&data) {
                prop_assert_eq!(obj.encode(), data);
            }
        }
    }
}
