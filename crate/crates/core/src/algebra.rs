//! Bilinear-pairing environment.
//!
//! The scheme is written for a symmetric pairing `e: G1 x G1 -> GT`. Here it
//! runs over the asymmetric BLS12-381 pairing with two source-group roles:
//!
//! * [`HPoint`] lives in G1 and receives hash outputs, signatures, the ring
//!   nonce `A`, the masks `T_j` and the proxy keys `S_i`;
//! * [`KPoint`] lives in G2 and receives the generator `P` and every public key.
//!
//! Every pairing therefore takes an `HPoint` on the left and a `KPoint` on the
//! right. Costs are tallied in a caller-owned [`OpCounter`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use ark_bls12_381::{g1, Bls12_381, Fq12, Fr, G1Affine, G1Projective, G2Affine, G2Projective};
use ark_ec::hashing::curve_maps::wb::WBMap;
use ark_ec::hashing::map_to_curve_hasher::MapToCurveBasedHasher;
use ark_ec::hashing::HashToCurve;
use ark_ec::pairing::{Pairing, PairingOutput};
use ark_ec::{CurveGroup, Group};
use ark_ff::field_hashers::{DefaultFieldHasher, HashToField};
use ark_ff::{BigInteger, CyclotomicMultSubgroup, Field, One, PrimeField, Zero};
use ark_serialize::{CanonicalDeserialize, CanonicalSerialize};
use rand_core::{CryptoRng, RngCore};
use sha2::Sha256;

use crate::error::{Error, Result};
use crate::wire::DecodeError;

/// Identifier of the only suite this crate implements. Embedded in every
/// wire envelope and prefixed to every hash domain.
pub const SUITE_ID: &str = "BLS12-381/G1H-G2K/SHA-256/v1";

pub const SCALAR_LEN: usize = 32;
pub const HPOINT_LEN: usize = 48;
pub const KPOINT_LEN: usize = 96;
pub const TELEM_LEN: usize = 576;

/// Domain-separation tags. The `H2` tags select hash-to-group, the `H1`
/// tags select hash-to-scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HashTag {
    /// `H2(w)`: the warrant point.
    Warrant,
    /// `H2(m)`: ordinary short-signature messages.
    Message,
    /// `H1(m || L')`: the ring challenge exponent.
    Challenge,
    /// `H1(c_i)`: glue values folded into scalars.
    Glue,
}

impl HashTag {
    pub const ALL: [HashTag; 4] = [
        HashTag::Warrant,
        HashTag::Message,
        HashTag::Challenge,
        HashTag::Glue,
    ];

    pub fn as_bytes(self) -> &'static [u8] {
        match self {
            HashTag::Warrant => b"PRS:H2:warrant",
            HashTag::Message => b"PRS:H2:msg",
            HashTag::Challenge => b"PRS:H1:chal",
            HashTag::Glue => b"PRS:H1:glue",
        }
    }

    pub fn from_bytes(tag: &[u8]) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|t| t.as_bytes() == tag)
            .ok_or_else(|| Error::UnknownTag(tag.to_vec()))
    }

    fn is_group_tag(self) -> bool {
        matches!(self, HashTag::Warrant | HashTag::Message)
    }

    fn dst(self) -> Vec<u8> {
        let mut dst = Vec::with_capacity(SUITE_ID.len() + 1 + 14);
        dst.extend_from_slice(SUITE_ID.as_bytes());
        dst.push(b'/');
        dst.extend_from_slice(self.as_bytes());
        dst
    }
}

/// Operation tallies for one invocation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub pairings: u64,
    pub h_mults: u64,
    pub k_mults: u64,
    pub t_exps: u64,
    pub hashes: u64,
}

impl OpCounter {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Element of the scalar field `Z_q`.
#[derive(Clone, Copy, PartialEq, Eq, Default)]
pub struct Scalar(pub(crate) Fr);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Fr::zero())
    }

    pub fn one() -> Self {
        Scalar(Fr::from(1u64))
    }

    pub fn from_u64(v: u64) -> Self {
        Scalar(Fr::from(v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        Field::inverse(&self.0).map(Scalar)
    }

    /// Uniform nonzero scalar. Reduces 64 bytes of entropy so the bias is
    /// below 2^-256.
    pub fn random<R: RngCore + CryptoRng + ?Sized>(rng: &mut R) -> Result<Self> {
        loop {
            let mut wide = [0u8; 64];
            rng.try_fill_bytes(&mut wide)
                .map_err(|e| Error::Entropy(e.to_string()))?;
            let s = Fr::from_be_bytes_mod_order(&wide);
            if !s.is_zero() {
                return Ok(Scalar(s));
            }
        }
    }

    /// Fixed-width big-endian encoding.
    pub fn to_bytes(&self) -> [u8; SCALAR_LEN] {
        let mut out = [0u8; SCALAR_LEN];
        out.copy_from_slice(&self.0.into_bigint().to_bytes_be());
        out
    }

    /// Rejects values `>= q`.
    pub fn from_bytes(bytes: &[u8]) -> std::result::Result<Self, DecodeError> {
        if bytes.len() != SCALAR_LEN {
            return Err(DecodeError::Truncated);
        }
        let mut limbs = [0u64; 4];
        for (i, chunk) in bytes.chunks_exact(8).enumerate() {
            limbs[3 - i] = u64::from_be_bytes(chunk.try_into().expect("8-byte chunk"));
        }
        Fr::from_bigint(ark_ff::BigInt(limbs))
            .map(Scalar)
            .ok_or(DecodeError::InvalidScalar)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar(")?;
        for b in self.to_bytes() {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 + rhs.0)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 - rhs.0)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 * rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

macro_rules! source_point {
    ($name:ident, $proj:ty, $affine:ty, $len:expr, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, Copy, PartialEq, Eq)]
        pub struct $name(pub(crate) $proj);

        impl $name {
            pub fn identity() -> Self {
                $name(<$proj>::zero())
            }

            pub fn is_identity(&self) -> bool {
                self.0.is_zero()
            }

            /// Fixed base point of the group.
            pub fn generator() -> Self {
                $name(<$proj>::generator())
            }

            /// Compressed canonical encoding.
            pub fn to_bytes(&self) -> [u8; $len] {
                let mut out = [0u8; $len];
                self.0
                    .into_affine()
                    .serialize_compressed(&mut out[..])
                    .expect("fixed-size buffer");
                out
            }

            /// Accepts only on-curve, prime-subgroup points in canonical form.
            pub fn from_bytes(bytes: &[u8]) -> std::result::Result<Self, DecodeError> {
                if bytes.len() != $len {
                    return Err(DecodeError::Truncated);
                }
                let p = <$affine>::deserialize_compressed(bytes)
                    .map_err(|_| DecodeError::InvalidPoint)?;
                let p = $name(p.into());
                if p.to_bytes()[..] != bytes[..] {
                    return Err(DecodeError::InvalidPoint);
                }
                Ok(p)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!(stringify!($name), "("))?;
                for b in &self.to_bytes()[..8] {
                    write!(f, "{b:02x}")?;
                }
                write!(f, "..)")
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                $name(self.0 + rhs.0)
            }
        }

        impl AddAssign for $name {
            fn add_assign(&mut self, rhs: $name) {
                self.0 += rhs.0;
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                $name(self.0 - rhs.0)
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(-self.0)
            }
        }

        impl Mul<Scalar> for $name {
            type Output = $name;
            fn mul(self, rhs: Scalar) -> $name {
                $name(self.0 * rhs.0)
            }
        }

        impl std::iter::Sum for $name {
            fn sum<I: Iterator<Item = $name>>(iter: I) -> $name {
                iter.fold($name::identity(), |acc, p| acc + p)
            }
        }
    };
}

source_point!(
    HPoint,
    G1Projective,
    G1Affine,
    HPOINT_LEN,
    "Element of the hash/signature-side source group (G1)."
);
source_point!(
    KPoint,
    G2Projective,
    G2Affine,
    KPOINT_LEN,
    "Element of the key-side source group (G2)."
);

/// Element of the multiplicative target group.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct TElem(pub(crate) PairingOutput<Bls12_381>);

impl TElem {
    pub fn identity() -> Self {
        TElem(PairingOutput::zero())
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_zero()
    }

    /// Exponentiation by a scalar. Not counted; use [`PairingSuite::t_pow`]
    /// inside protocol code.
    pub fn pow(&self, e: &Scalar) -> Self {
        TElem(self.0 * e.0)
    }

    pub fn inverse(&self) -> Self {
        TElem(-self.0)
    }

    pub fn to_bytes(&self) -> [u8; TELEM_LEN] {
        let mut out = [0u8; TELEM_LEN];
        self.0
            .serialize_compressed(&mut out[..])
            .expect("fixed-size buffer");
        out
    }

    /// Rejects non-canonical field encodings and anything outside the
    /// order-`q` subgroup.
    pub fn from_bytes(bytes: &[u8]) -> std::result::Result<Self, DecodeError> {
        if bytes.len() != TELEM_LEN {
            return Err(DecodeError::Truncated);
        }
        let f = Fq12::deserialize_compressed_unchecked(bytes).map_err(|_| DecodeError::InvalidTarget)?;
        if !in_target_subgroup(&f) {
            return Err(DecodeError::InvalidTarget);
        }
        let t = TElem(PairingOutput(f));
        if t.to_bytes()[..] != bytes[..] {
            return Err(DecodeError::InvalidTarget);
        }
        Ok(t)
    }
}

/// Membership in the order-`q` subgroup of `Fq12*`.
///
/// First confirms `f` lies in the cyclotomic subgroup (`f^(p^6 + 1) = 1`
/// and `f^(p^4 - p^2 + 1) = 1`), where exponentiation can use cyclotomic
/// squaring, then checks `f^q = 1` there.
fn in_target_subgroup(f: &Fq12) -> bool {
    let mut conj = *f;
    conj.conjugate_in_place();
    if *f * conj != Fq12::one() {
        return false;
    }
    if f.frobenius_map(4) * f != f.frobenius_map(2) {
        return false;
    }
    f.cyclotomic_exp(Fr::MODULUS).is_one()
}

impl fmt::Debug for TElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TElem(")?;
        for b in &self.to_bytes()[..8] {
            write!(f, "{b:02x}")?;
        }
        write!(f, "..)")
    }
}

// arkworks writes the target group additively.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for TElem {
    type Output = TElem;
    fn mul(self, rhs: TElem) -> TElem {
        TElem(self.0 + rhs.0)
    }
}

impl std::iter::Product for TElem {
    fn product<I: Iterator<Item = TElem>>(iter: I) -> TElem {
        iter.fold(TElem::identity(), |acc, t| acc * t)
    }
}

type G1Hasher = MapToCurveBasedHasher<G1Projective, DefaultFieldHasher<Sha256, 128>, WBMap<g1::Config>>;

/// System parameters: groups, pairing, generator `P`, order `q`, and both
/// hash families. Immutable; share freely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingSuite {
    suite_id: &'static str,
}

impl Default for PairingSuite {
    fn default() -> Self {
        Self::bls12_381()
    }
}

impl PairingSuite {
    pub fn bls12_381() -> Self {
        PairingSuite { suite_id: SUITE_ID }
    }

    pub fn suite_id(&self) -> &'static str {
        self.suite_id
    }

    /// The published generator `P` of the key-side group.
    pub fn generator(&self) -> KPoint {
        KPoint::generator()
    }

    /// Big-endian encoding of the group order `q`.
    pub fn order(&self) -> Vec<u8> {
        Fr::MODULUS.to_bytes_be()
    }

    /// `e(a, b)`.
    pub fn pair(&self, a: &HPoint, b: &KPoint, ctr: &mut OpCounter) -> TElem {
        ctr.pairings += 1;
        TElem(Bls12_381::pairing(a.0.into_affine(), b.0.into_affine()))
    }

    /// `prod_i e(a_i, b_i)` sharing one final exponentiation. Counts one
    /// pairing per term.
    pub fn pair_product(&self, terms: &[(HPoint, KPoint)], ctr: &mut OpCounter) -> TElem {
        ctr.pairings += terms.len() as u64;
        let (hs, ks): (Vec<G1Affine>, Vec<G2Affine>) = terms
            .iter()
            .map(|(h, k)| (h.0.into_affine(), k.0.into_affine()))
            .unzip();
        TElem(Bls12_381::multi_pairing(hs, ks))
    }

    pub fn h_mul(&self, p: &HPoint, s: &Scalar, ctr: &mut OpCounter) -> HPoint {
        ctr.h_mults += 1;
        *p * *s
    }

    pub fn k_mul(&self, p: &KPoint, s: &Scalar, ctr: &mut OpCounter) -> KPoint {
        ctr.k_mults += 1;
        *p * *s
    }

    pub fn t_pow(&self, t: &TElem, s: &Scalar, ctr: &mut OpCounter) -> TElem {
        ctr.t_exps += 1;
        t.pow(s)
    }

    /// `H1: {0,1}* -> Z_q`. Zero is remapped to one, so the output is
    /// always nonzero.
    pub fn hash_to_scalar(&self, tag: HashTag, msg: &[u8], ctr: &mut OpCounter) -> Result<Scalar> {
        if tag.is_group_tag() {
            return Err(Error::UnknownTag(tag.as_bytes().to_vec()));
        }
        ctr.hashes += 1;
        let hasher = <DefaultFieldHasher<Sha256, 128> as HashToField<Fr>>::new(&tag.dst());
        let s: Fr = hasher.hash_to_field(msg, 1)[0];
        Ok(if s.is_zero() { Scalar::one() } else { Scalar(s) })
    }

    /// `H2: {0,1}* -> G1`, never the identity.
    pub fn hash_to_group(&self, tag: HashTag, msg: &[u8], ctr: &mut OpCounter) -> Result<HPoint> {
        if !tag.is_group_tag() {
            return Err(Error::UnknownTag(tag.as_bytes().to_vec()));
        }
        ctr.hashes += 1;
        let hasher = G1Hasher::new(&tag.dst()).expect("WB map parameters are valid for BLS12-381 G1");
        let p: G1Projective = hasher
            .hash(msg)
            .expect("hash-to-curve is total on BLS12-381 G1")
            .into();
        // The identity is reachable only with negligible probability; fall
        // back to the generator to keep the map total.
        Ok(if p.is_zero() { HPoint::generator() } else { HPoint(p) })
    }

    /// Byte-tag front end for [`Self::hash_to_scalar`].
    pub fn hash_to_scalar_tagged(&self, tag: &[u8], msg: &[u8], ctr: &mut OpCounter) -> Result<Scalar> {
        self.hash_to_scalar(HashTag::from_bytes(tag)?, msg, ctr)
    }

    /// Byte-tag front end for [`Self::hash_to_group`].
    pub fn hash_to_group_tagged(&self, tag: &[u8], msg: &[u8], ctr: &mut OpCounter) -> Result<HPoint> {
        self.hash_to_group(HashTag::from_bytes(tag)?, msg, ctr)
    }

    /// Uniform non-identity point `r * G_H` for uniform nonzero `r`.
    pub fn random_h_point<R: RngCore + CryptoRng + ?Sized>(&self, rng: &mut R) -> Result<HPoint> {
        Ok(HPoint::generator() * Scalar::random(rng)?)
    }
}
