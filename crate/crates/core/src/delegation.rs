//! Warrants, delegation tokens and proxy-key derivation.
//!
//! The original signer issues `(w, s_o * H2(w))`. An authorized proxy adds
//! its own share to obtain `S_i = (s_o + s_p) * H2(w)`, which satisfies
//! `e(S_i, P) == e(H2(w), PK_o + PK_p)`.

use rand_core::{CryptoRng, RngCore};

use crate::algebra::{HPoint, HashTag, OpCounter, PairingSuite};
use crate::error::{Error, Result};
use crate::pbsss::{PublicKey, SecretKey};
use crate::wire;
use crate::{RejectCause, Verdict};

pub const NONCE_LEN: usize = 16;

/// Delegation statement: free-form terms, the delegator, and the ordered
/// list of proxies allowed to sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Warrant {
    body: Vec<u8>,
    original: PublicKey,
    authorized: Vec<PublicKey>,
    nonce: [u8; NONCE_LEN],
}

pub(crate) fn ensure_distinct(keys: &[PublicKey]) -> Result<()> {
    let mut seen: Vec<[u8; crate::algebra::KPOINT_LEN]> = keys.iter().map(|k| k.to_bytes()).collect();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicateKey);
    }
    Ok(())
}

impl Warrant {
    pub fn new(
        body: Vec<u8>,
        original: PublicKey,
        authorized: Vec<PublicKey>,
        nonce: [u8; NONCE_LEN],
    ) -> Result<Self> {
        if authorized.is_empty() {
            return Err(Error::EmptyAuthorizedList);
        }
        ensure_distinct(&authorized)?;
        Ok(Warrant {
            body,
            original,
            authorized,
            nonce,
        })
    }

    /// Like [`Warrant::new`] with a fresh random nonce.
    pub fn generate<R: RngCore + CryptoRng + ?Sized>(
        body: Vec<u8>,
        original: PublicKey,
        authorized: Vec<PublicKey>,
        rng: &mut R,
    ) -> Result<Self> {
        let mut nonce = [0u8; NONCE_LEN];
        rng.try_fill_bytes(&mut nonce)
            .map_err(|e| Error::Entropy(e.to_string()))?;
        Self::new(body, original, authorized, nonce)
    }

    pub fn body(&self) -> &[u8] {
        &self.body
    }

    pub fn original(&self) -> &PublicKey {
        &self.original
    }

    pub fn authorized(&self) -> &[PublicKey] {
        &self.authorized
    }

    pub fn nonce(&self) -> &[u8; NONCE_LEN] {
        &self.nonce
    }

    pub fn authorizes(&self, pk: &PublicKey) -> bool {
        self.authorized.contains(pk)
    }

    /// `H2(w)` over the canonical warrant encoding.
    pub fn point(&self, suite: &PairingSuite, ctr: &mut OpCounter) -> HPoint {
        suite
            .hash_to_group(HashTag::Warrant, &wire::warrant_bytes(self), ctr)
            .expect("warrant tag is a group tag")
    }
}

/// `(w, s_o * H2(w))` as sent to the proxy group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DelegationToken {
    pub warrant: Warrant,
    pub w_sig: HPoint,
}

/// A proxy's signing key `S_i` bound to its warrant.
#[derive(Clone, PartialEq, Eq)]
pub struct ProxyKeyMaterial {
    warrant: Warrant,
    proxy_pk: PublicKey,
    s_key: HPoint,
}

impl std::fmt::Debug for ProxyKeyMaterial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProxyKeyMaterial")
            .field("warrant", &self.warrant)
            .field("proxy_pk", &self.proxy_pk)
            .finish_non_exhaustive()
    }
}

impl ProxyKeyMaterial {
    /// Reassembles stored material without checking it. Call
    /// [`ProxyKeyMaterial::check`] before trusting loaded keys.
    pub fn from_parts(warrant: Warrant, proxy_pk: PublicKey, s_key: HPoint) -> Self {
        ProxyKeyMaterial {
            warrant,
            proxy_pk,
            s_key,
        }
    }

    pub fn warrant(&self) -> &Warrant {
        &self.warrant
    }

    pub fn proxy_pk(&self) -> &PublicKey {
        &self.proxy_pk
    }

    pub fn signing_key(&self) -> &HPoint {
        &self.s_key
    }

    /// `e(S_i, P) == e(H2(w), PK_o + PK_p)`.
    pub fn check(&self, suite: &PairingSuite, ctr: &mut OpCounter) -> bool {
        let hw = self.warrant.point(suite, ctr);
        let combined = *self.warrant.original.point() + *self.proxy_pk.point();
        suite.pair(&self.s_key, &suite.generator(), ctr) == suite.pair(&hw, &combined, ctr)
    }
}

pub fn make_delegation(suite: &PairingSuite, sk_o: &SecretKey, warrant: Warrant) -> Result<DelegationToken> {
    if sk_o.public_key(suite) != *warrant.original() {
        return Err(Error::OriginalMismatch);
    }
    let mut ctr = OpCounter::new();
    let hw = warrant.point(suite, &mut ctr);
    let w_sig = suite.h_mul(&hw, sk_o.scalar(), &mut ctr);
    Ok(DelegationToken { warrant, w_sig })
}

/// Proxy-side check of `e(w_sig, P) == e(H2(w), PK_o)`. Two pairings.
pub fn verify_delegation(suite: &PairingSuite, token: &DelegationToken, ctr: &mut OpCounter) -> Verdict {
    let hw = token.warrant.point(suite, ctr);
    let lhs = suite.pair(&token.w_sig, &suite.generator(), ctr);
    let rhs = suite.pair(&hw, token.warrant.original().point(), ctr);
    if lhs == rhs {
        Verdict::Accept
    } else {
        Verdict::Reject(RejectCause::BadSignature)
    }
}

pub fn derive_proxy_key(
    suite: &PairingSuite,
    token: &DelegationToken,
    sk_p: &SecretKey,
) -> Result<ProxyKeyMaterial> {
    let proxy_pk = sk_p.public_key(suite);
    if !token.warrant.authorizes(&proxy_pk) {
        return Err(Error::NotAuthorized);
    }
    let mut ctr = OpCounter::new();
    if verify_delegation(suite, token, &mut ctr) != Verdict::Accept {
        return Err(Error::InvalidToken);
    }
    let hw = token.warrant.point(suite, &mut ctr);
    let s_key = token.w_sig + suite.h_mul(&hw, sk_p.scalar(), &mut ctr);
    Ok(ProxyKeyMaterial {
        warrant: token.warrant.clone(),
        proxy_pk,
        s_key,
    })
}
