#![allow(dead_code)]

use proxy_ring::delegation::{derive_proxy_key, make_delegation, DelegationToken, ProxyKeyMaterial, Warrant};
use proxy_ring::pbsss::{keygen, PublicKey, SecretKey};
use proxy_ring::ringsig::{ring_sign, ProxyRingSignature, RingSpec};
use proxy_ring::PairingSuite;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// An original signer, `n` proxies, a warrant covering all of them, and the
/// delegation token.
pub struct World {
    pub suite: PairingSuite,
    pub sk_o: SecretKey,
    pub pk_o: PublicKey,
    pub proxies: Vec<(SecretKey, PublicKey)>,
    pub token: DelegationToken,
}

impl World {
    pub fn new(n: usize, body: &[u8], rng: &mut ChaCha20Rng) -> Self {
        let suite = PairingSuite::default();
        let (sk_o, pk_o) = keygen(&suite, rng).unwrap();
        let proxies: Vec<_> = (0..n).map(|_| keygen(&suite, rng).unwrap()).collect();
        let warrant = Warrant::generate(body.to_vec(), pk_o, proxies.iter().map(|p| p.1).collect(), rng).unwrap();
        let token = make_delegation(&suite, &sk_o, warrant).unwrap();
        World {
            suite,
            sk_o,
            pk_o,
            proxies,
            token,
        }
    }

    pub fn warrant(&self) -> &Warrant {
        &self.token.warrant
    }

    pub fn ring(&self) -> RingSpec {
        RingSpec::new(self.pk_o, self.proxies.iter().map(|p| p.1).collect()).unwrap()
    }

    pub fn material(&self, k: usize) -> ProxyKeyMaterial {
        derive_proxy_key(&self.suite, &self.token, &self.proxies[k].0).unwrap()
    }

    pub fn sign(&self, k: usize, msg: &[u8], rng: &mut ChaCha20Rng) -> ProxyRingSignature {
        ring_sign(&self.suite, &self.material(k), &self.ring(), k, msg, rng).unwrap()
    }
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub const GOLDEN_MESSAGE: &[u8] = b"golden message";

pub fn fixture_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// The objects behind the checked-in fixtures, rebuilt from a fixed seed.
pub fn golden_objects() -> Vec<(&'static str, proxy_ring::wire::WireObject)> {
    use proxy_ring::wire::WireObject;
    let mut r = rng(0x601d);
    let world = World::new(3, b"golden warrant: sign purchase orders up to 1000 EUR", &mut r);
    let material = world.material(1);
    let sig = world.sign(1, GOLDEN_MESSAGE, &mut r);
    vec![
        ("public_key", WireObject::PublicKey(world.pk_o)),
        ("secret_key", WireObject::SecretKey(world.sk_o.clone())),
        ("signature", WireObject::RingSignature(sig)),
        ("token", WireObject::DelegationToken(world.token.clone())),
        ("warrant", WireObject::Warrant(world.warrant().clone())),
        ("proxy_key", WireObject::ProxyKey(material)),
    ]
}

pub fn read_fixture(name: &str) -> Vec<u8> {
    let text = std::fs::read(fixture_dir().join(format!("{name}.hex"))).unwrap();
    proxy_ring::wire::dearmor(&text).unwrap()
}
