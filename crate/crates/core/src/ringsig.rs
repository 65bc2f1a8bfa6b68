//! Proxy ring signatures.
//!
//! Ring positions are `0..n` with cyclic indexing. With warrant point
//! `W = H2(w)`, challenge `h = H1(m || L')` and glue scalars
//! `g_i = H1(c_i)`, the chain is
//!
//! ```text
//! c_{i+1} = e(g_i * W, PK_o + PK_i)^h * e(T_i, P)
//! ```
//!
//! The signer at position `k` starts from `c_{k+1} = e(A, P)`, walks the ring
//! with random `T_j`, and closes it with `T_k = A - h * g_k * S_k`. Only
//! `T = sum T_j` is published. Multiplying the chain around the ring
//! telescopes to
//!
//! ```text
//! prod c_i = e(W, h * sum_i g_i * (PK_o + PK_i)) * e(T, P)
//! ```
//!
//! so verification costs two pairings whatever the ring size.

use rand_core::{CryptoRng, RngCore};

use crate::algebra::{HPoint, HashTag, KPoint, OpCounter, PairingSuite, Scalar, TElem};
use crate::delegation::{ensure_distinct, ProxyKeyMaterial, Warrant};
use crate::error::{Error, Result};
use crate::pbsss::PublicKey;
use crate::wire;
use crate::{RejectCause, Verdict};

/// The original signer's key plus the ordered proxy subset `L'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingSpec {
    original: PublicKey,
    members: Vec<PublicKey>,
}

impl RingSpec {
    pub fn new(original: PublicKey, members: Vec<PublicKey>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyRing);
        }
        ensure_distinct(&members)?;
        Ok(RingSpec { original, members })
    }

    pub fn original(&self) -> &PublicKey {
        &self.original
    }

    pub fn members(&self) -> &[PublicKey] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, pk: &PublicKey) -> Option<usize> {
        self.members.iter().position(|m| m == pk)
    }

    /// `PK_o + PK_i`.
    fn combined_key(&self, i: usize) -> KPoint {
        *self.original.point() + *self.members[i].point()
    }
}

/// `(c_0, ..., c_{n-1}, T)` together with the warrant and ring it was made
/// under. The message travels separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProxyRingSignature {
    pub glue: Vec<TElem>,
    pub t_sum: HPoint,
    pub warrant: Warrant,
    pub ring: RingSpec,
}

/// The ring challenge exponent `h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Challenge(pub Scalar);

impl Challenge {
    pub fn new(suite: &PairingSuite, msg: &[u8], ring: &RingSpec, ctr: &mut OpCounter) -> Self {
        let mut input = Vec::with_capacity(8 + msg.len() + 4 + ring.len() * crate::algebra::KPOINT_LEN);
        input.extend_from_slice(&(msg.len() as u64).to_be_bytes());
        input.extend_from_slice(msg);
        wire::put_member_list(&mut input, ring.members());
        let h = suite
            .hash_to_scalar(HashTag::Challenge, &input, ctr)
            .expect("challenge tag is a scalar tag");
        Challenge(h)
    }
}

/// `H1(enc(c))`, never zero.
pub fn glue_scalar(suite: &PairingSuite, c: &TElem, ctr: &mut OpCounter) -> Scalar {
    suite
        .hash_to_scalar(HashTag::Glue, &c.to_bytes(), ctr)
        .expect("glue tag is a scalar tag")
}

/// One link of the chain: `e(g_i * H2(w), PK_o + PK_i)^h * e(t_i, P)`.
/// Exactly two pairings.
#[allow(clippy::too_many_arguments)]
pub fn recurrence_step(
    suite: &PairingSuite,
    warrant: &Warrant,
    ring: &RingSpec,
    h: &Challenge,
    i: usize,
    c_i: &TElem,
    t_i: &HPoint,
    ctr: &mut OpCounter,
) -> Result<TElem> {
    let hw = warrant.point(suite, ctr);
    step(suite, &hw, ring, h, i, c_i, t_i, ctr)
}

#[allow(clippy::too_many_arguments)]
fn step(
    suite: &PairingSuite,
    hw: &HPoint,
    ring: &RingSpec,
    h: &Challenge,
    i: usize,
    c_i: &TElem,
    t_i: &HPoint,
    ctr: &mut OpCounter,
) -> Result<TElem> {
    if i >= ring.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            size: ring.len(),
        });
    }
    // e(g W, K)^h == e((h g) W, K)
    let exponent = h.0 * glue_scalar(suite, c_i, ctr);
    let lhs = suite.h_mul(hw, &exponent, ctr);
    Ok(suite.pair_product(&[(lhs, ring.combined_key(i)), (*t_i, suite.generator())], ctr))
}

/// Signer-side secrets of one signature: the nonce point `A` and every
/// `T_j`, indexed by ring position. Together they reveal which position
/// signed; never publish them.
#[derive(Clone, Debug)]
pub struct SigningTrace {
    pub nonce_point: HPoint,
    pub parts: Vec<HPoint>,
}

pub fn ring_sign<R: RngCore + CryptoRng + ?Sized>(
    suite: &PairingSuite,
    material: &ProxyKeyMaterial,
    ring: &RingSpec,
    k: usize,
    msg: &[u8],
    rng: &mut R,
) -> Result<ProxyRingSignature> {
    ring_sign_traced(suite, material, ring, k, msg, rng).map(|(sig, _)| sig)
}

/// [`ring_sign`] that also returns the signer's intermediate values.
pub fn ring_sign_traced<R: RngCore + CryptoRng + ?Sized>(
    suite: &PairingSuite,
    material: &ProxyKeyMaterial,
    ring: &RingSpec,
    k: usize,
    msg: &[u8],
    rng: &mut R,
) -> Result<(ProxyRingSignature, SigningTrace)> {
    let n = ring.len();
    if n == 0 {
        return Err(Error::EmptyRing);
    }
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, size: n });
    }
    if ring.members()[k] != *material.proxy_pk() {
        return Err(Error::SignerNotAtIndex(k));
    }
    let warrant = material.warrant();
    if ring.original() != warrant.original() {
        return Err(Error::OriginalMismatch);
    }
    if !ring.members().iter().all(|m| warrant.authorizes(m)) {
        return Err(Error::NotAuthorized);
    }

    let mut ctr = OpCounter::new();
    let hw = warrant.point(suite, &mut ctr);
    let h = Challenge::new(suite, msg, ring, &mut ctr);

    let a = suite.random_h_point(rng)?;
    let mut glue = vec![TElem::identity(); n];
    let mut parts = vec![HPoint::identity(); n];
    glue[(k + 1) % n] = suite.pair(&a, &suite.generator(), &mut ctr);

    for j in (k + 1)..(k + n) {
        let idx = j % n;
        parts[idx] = suite.random_h_point(rng)?;
        glue[(idx + 1) % n] = step(suite, &hw, ring, &h, idx, &glue[idx], &parts[idx], &mut ctr)?;
    }

    let closing = h.0 * glue_scalar(suite, &glue[k], &mut ctr);
    parts[k] = a - suite.h_mul(material.signing_key(), &closing, &mut ctr);

    let t_sum = parts.iter().copied().sum();
    let sig = ProxyRingSignature {
        glue,
        t_sum,
        warrant: warrant.clone(),
        ring: ring.clone(),
    };
    Ok((
        sig,
        SigningTrace {
            nonce_point: a,
            parts,
        },
    ))
}

/// Checks `prod c_i == e(H2(w), h * Q) * e(T, P)` with
/// `Q = sum g_i * (PK_o + PK_i)`, after confirming the ring is covered by the
/// warrant. Never looks at which position signed.
pub fn ring_verify(suite: &PairingSuite, sig: &ProxyRingSignature, msg: &[u8], ctr: &mut OpCounter) -> Verdict {
    let ring = &sig.ring;
    if ring.is_empty() || sig.glue.len() != ring.len() {
        return Verdict::Reject(RejectCause::Malformed);
    }
    if ring.original() != sig.warrant.original() || !ring.members().iter().all(|m| sig.warrant.authorizes(m)) {
        return Verdict::Reject(RejectCause::UnauthorizedRing);
    }

    let h = Challenge::new(suite, msg, ring, ctr);
    let hw = sig.warrant.point(suite, ctr);

    let mut aggregate = KPoint::identity();
    for (i, c) in sig.glue.iter().enumerate() {
        let g = glue_scalar(suite, c, ctr);
        aggregate += suite.k_mul(&ring.combined_key(i), &g, ctr);
    }
    let aggregate = suite.k_mul(&aggregate, &h.0, ctr);

    let lhs: TElem = sig.glue.iter().copied().product();
    let rhs = suite.pair_product(&[(hw, aggregate), (sig.t_sum, suite.generator())], ctr);
    if lhs == rhs {
        Verdict::Accept
    } else {
        Verdict::Reject(RejectCause::BadSignature)
    }
}

/// Signs and verifies once at ring size `n`; returns the verifier's tally.
pub fn count_verify_cost<R: RngCore + CryptoRng + ?Sized>(
    suite: &PairingSuite,
    n: usize,
    rng: &mut R,
) -> Result<OpCounter> {
    if n == 0 {
        return Err(Error::EmptyRing);
    }
    let (sk_o, pk_o) = crate::pbsss::keygen(suite, rng)?;
    let proxies = (0..n)
        .map(|_| crate::pbsss::keygen(suite, rng))
        .collect::<Result<Vec<_>>>()?;
    let members: Vec<PublicKey> = proxies.iter().map(|(_, pk)| *pk).collect();
    let warrant = Warrant::generate(b"cost probe".to_vec(), pk_o, members.clone(), rng)?;
    let token = crate::delegation::make_delegation(suite, &sk_o, warrant)?;
    let material = crate::delegation::derive_proxy_key(suite, &token, &proxies[0].0)?;
    let ring = RingSpec::new(pk_o, members)?;
    let sig = ring_sign(suite, &material, &ring, 0, b"cost probe", rng)?;
    let mut ctr = OpCounter::new();
    let verdict = ring_verify(suite, &sig, b"cost probe", &mut ctr);
    debug_assert_eq!(verdict, Verdict::Accept);
    Ok(ctr)
}
