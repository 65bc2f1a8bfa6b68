//! Proxy ring signatures over a bilinear pairing.
//!
//! An original signer delegates to a group of proxies with a warrant. Any
//! listed proxy can then sign on the original signer's behalf while hiding
//! which proxy it is among a chosen subset of the group. Verification costs
//! two pairings regardless of ring size.
//!
//! ```
//! use proxy_ring::{delegation, pbsss, ringsig, PairingSuite, OpCounter, Verdict};
//! use proxy_ring::delegation::Warrant;
//! use proxy_ring::ringsig::RingSpec;
//!
//! let suite = PairingSuite::default();
//! # use rand_chacha::rand_core::SeedableRng;
//! let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(1);
//!
//! let (sk_o, pk_o) = pbsss::keygen(&suite, &mut rng).unwrap();
//! let (sk_a, pk_a) = pbsss::keygen(&suite, &mut rng).unwrap();
//! let (_, pk_b) = pbsss::keygen(&suite, &mut rng).unwrap();
//!
//! let warrant = Warrant::generate(b"sign invoices".to_vec(), pk_o, vec![pk_a, pk_b], &mut rng).unwrap();
//! let token = delegation::make_delegation(&suite, &sk_o, warrant).unwrap();
//! let key = delegation::derive_proxy_key(&suite, &token, &sk_a).unwrap();
//!
//! let ring = RingSpec::new(pk_o, vec![pk_b, pk_a]).unwrap();
//! let sig = ringsig::ring_sign(&suite, &key, &ring, 1, b"invoice #7", &mut rng).unwrap();
//!
//! let mut ctr = OpCounter::new();
//! assert_eq!(ringsig::ring_verify(&suite, &sig, b"invoice #7", &mut ctr), Verdict::Accept);
//! assert_eq!(ctr.pairings, 2);
//! ```

pub mod algebra;
pub mod delegation;
mod error;
pub mod pbsss;
pub mod ringsig;
pub mod wire;

pub use algebra::{HPoint, HashTag, KPoint, OpCounter, PairingSuite, Scalar, TElem, SUITE_ID};
pub use error::{Error, ErrorKind, Result};

/// Why a verifier refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectCause {
    Malformed,
    UnauthorizedRing,
    BadSignature,
}

impl RejectCause {
    pub fn as_str(self) -> &'static str {
        match self {
            RejectCause::Malformed => "malformed",
            RejectCause::UnauthorizedRing => "unauthorized-ring",
            RejectCause::BadSignature => "bad-signature",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject(RejectCause),
}

impl Verdict {
    pub fn is_accept(self) -> bool {
        self == Verdict::Accept
    }
}
