//! Pairing-based short signatures (BLS form): `S_m = s * H2(m)`, checked by
//! `e(S_m, P) == e(H2(m), P_pub)`.

use std::fmt;

use rand_core::{CryptoRng, RngCore};

use crate::algebra::{HPoint, HashTag, KPoint, OpCounter, PairingSuite, Scalar};
use crate::error::{Error, Result};
use crate::wire::DecodeError;
use crate::{RejectCause, Verdict};

/// Nonzero secret scalar.
#[derive(Clone, PartialEq, Eq)]
pub struct SecretKey(Scalar);

impl SecretKey {
    /// Wraps a chosen scalar. Used for fixtures and for loading keys.
    pub fn from_scalar(s: Scalar) -> Result<Self> {
        if s.is_zero() {
            return Err(Error::ZeroScalar);
        }
        Ok(SecretKey(s))
    }

    pub fn scalar(&self) -> &Scalar {
        &self.0
    }

    pub fn public_key(&self, suite: &PairingSuite) -> PublicKey {
        PublicKey(suite.generator() * self.0)
    }
}

impl fmt::Debug for SecretKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SecretKey(..)")
    }
}

/// `s * P`, never the identity.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PublicKey(KPoint);

impl PublicKey {
    pub fn from_point(p: KPoint) -> Result<Self> {
        if p.is_identity() {
            return Err(Error::IdentityKey);
        }
        Ok(PublicKey(p))
    }

    pub fn point(&self) -> &KPoint {
        &self.0
    }

    pub fn to_bytes(&self) -> [u8; crate::algebra::KPOINT_LEN] {
        self.0.to_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> std::result::Result<Self, DecodeError> {
        let p = KPoint::from_bytes(bytes)?;
        if p.is_identity() {
            return Err(DecodeError::IdentityKey);
        }
        Ok(PublicKey(p))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ShortSignature(pub HPoint);

impl ShortSignature {
    pub fn to_bytes(&self) -> [u8; crate::algebra::HPOINT_LEN] {
        self.0.to_bytes()
    }

    pub fn from_bytes(bytes: &[u8]) -> std::result::Result<Self, DecodeError> {
        HPoint::from_bytes(bytes).map(ShortSignature)
    }
}

pub fn keygen<R: RngCore + CryptoRng + ?Sized>(
    suite: &PairingSuite,
    rng: &mut R,
) -> Result<(SecretKey, PublicKey)> {
    let sk = SecretKey(Scalar::random(rng)?);
    let pk = sk.public_key(suite);
    Ok((sk, pk))
}

pub fn sign(suite: &PairingSuite, sk: &SecretKey, tag: HashTag, msg: &[u8]) -> Result<ShortSignature> {
    let mut ctr = OpCounter::new();
    let h = suite.hash_to_group(tag, msg, &mut ctr)?;
    Ok(ShortSignature(h * sk.0))
}

/// Two pairings regardless of message length.
pub fn verify(
    suite: &PairingSuite,
    pk: &PublicKey,
    tag: HashTag,
    msg: &[u8],
    sig: &ShortSignature,
    ctr: &mut OpCounter,
) -> Verdict {
    let h = match suite.hash_to_group(tag, msg, ctr) {
        Ok(h) => h,
        Err(_) => return Verdict::Reject(RejectCause::Malformed),
    };
    let lhs = suite.pair(&sig.0, &suite.generator(), ctr);
    let rhs = suite.pair(&h, &pk.0, ctr);
    if lhs == rhs {
        Verdict::Accept
    } else {
        Verdict::Reject(RejectCause::BadSignature)
    }
}

/// Verifies an encoded signature; undecodable bytes reject as malformed.
pub fn verify_bytes(
    suite: &PairingSuite,
    pk: &PublicKey,
    tag: HashTag,
    msg: &[u8],
    sig: &[u8],
    ctr: &mut OpCounter,
) -> Verdict {
    match ShortSignature::from_bytes(sig) {
        Ok(sig) => verify(suite, pk, tag, msg, &sig, ctr),
        Err(_) => Verdict::Reject(RejectCause::Malformed),
    }
}
