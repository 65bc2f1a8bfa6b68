//! `prs`: keystore, delegation, proxy ring signing and verification.
//!
//! Exit codes: 0 ok, 1 signature rejected, 2 malformed input,
//! 3 key not authorized by the warrant, 4 usage error.

mod bench;
mod keystore;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use proxy_ring::delegation::{derive_proxy_key, make_delegation, Warrant};
use proxy_ring::pbsss::{self, PublicKey};
use proxy_ring::ringsig::{ring_sign, ring_verify, RingSpec};
use proxy_ring::{wire, ErrorKind, OpCounter, PairingSuite, Verdict};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_core::{CryptoRng, OsRng, RngCore};
use sha2::{Digest, Sha256};

use keystore::{read_envelope, read_file, write_envelope, Keystore, Slot};

#[derive(Parser)]
#[command(name = "prs", version, about = "Proxy ring signatures: delegate, sign anonymously for a group, verify")]
struct Cli {
    /// Keystore directory
    #[arg(long, global = true, env = "PRS_KEYSTORE", default_value = "prs-keystore")]
    keystore: PathBuf,

    /// Deterministic entropy for tests. Requires PRS_TEST_MODE=1.
    #[arg(long, global = true, hide = true)]
    test_entropy_seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key pair and store it under a label
    Keygen {
        label: String,
    },
    /// Issue a warrant and delegation token to a group of proxies
    Delegate {
        /// Label of the original signer's secret key
        #[arg(long)]
        original: String,
        /// File holding the warrant text
        #[arg(long)]
        warrant_body: PathBuf,
        /// Public key files of the proxies
        #[arg(long = "proxy", num_args = 1.., required = true)]
        proxies: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a delegation token and derive this proxy's signing key
    ProxyAccept {
        #[arg(long)]
        token: PathBuf,
        /// Label of the proxy's secret key
        #[arg(long)]
        proxy: String,
        /// Label for the stored proxy key (defaults to the proxy label)
        #[arg(long)]
        name: Option<String>,
    },
    /// Sign a message on behalf of the original signer, hidden in a ring
    Sign {
        /// Label of the proxy key
        #[arg(long)]
        key: String,
        /// Public key files of the ring members, in ring order
        #[arg(long, num_args = 1.., required = true)]
        ring: Vec<PathBuf>,
        /// Position of the signer in the ring; located automatically if omitted
        #[arg(long)]
        index: Option<usize>,
        #[arg(long)]
        message: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify a proxy ring signature
    Verify {
        #[arg(long)]
        signature: PathBuf,
        #[arg(long)]
        message: PathBuf,
        /// Print operation counts
        #[arg(long)]
        stats: bool,
    },
    /// Time signing and verification across ring sizes
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "1,2,5,10,50")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long)]
        csv: bool,
    },
}

/// A command failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub const REJECT: u8 = 1;
    pub const MALFORMED: u8 = 2;
    pub const UNAUTHORIZED: u8 = 3;
    pub const USAGE: u8 = 4;

    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: Self::USAGE, message: message.into() }
    }

    pub fn malformed(message: impl Into<String>) -> Self {
        Failure { code: Self::MALFORMED, message: message.into() }
    }
}

impl From<proxy_ring::Error> for Failure {
    fn from(e: proxy_ring::Error) -> Self {
        let code = match e.kind() {
            ErrorKind::Unauthorized => Self::UNAUTHORIZED,
            ErrorKind::Malformed => Self::MALFORMED,
            ErrorKind::Usage | ErrorKind::Environment => Self::USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

/// OS entropy, or a seeded stream in test mode.
#[allow(clippy::large_enum_variant)]
pub enum Entropy {
    Os(OsRng),
    Seeded(ChaCha20Rng),
}

impl Entropy {
    fn from_flag(seed: Option<u64>) -> Result<Self, Failure> {
        match seed {
            None => Ok(Entropy::Os(OsRng)),
            Some(seed) if std::env::var("PRS_TEST_MODE").as_deref() == Ok("1") => {
                Ok(Entropy::Seeded(ChaCha20Rng::seed_from_u64(seed)))
            }
            Some(_) => Err(Failure::usage("--test-entropy-seed requires PRS_TEST_MODE=1")),
        }
    }
}

impl RngCore for Entropy {
    fn next_u32(&mut self) -> u32 {
        match self {
            Entropy::Os(r) => r.next_u32(),
            Entropy::Seeded(r) => r.next_u32(),
        }
    }

    fn next_u64(&mut self) -> u64 {
        match self {
            Entropy::Os(r) => r.next_u64(),
            Entropy::Seeded(r) => r.next_u64(),
        }
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        match self {
            Entropy::Os(r) => r.fill_bytes(dest),
            Entropy::Seeded(r) => r.fill_bytes(dest),
        }
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand_core::Error> {
        match self {
            Entropy::Os(r) => r.try_fill_bytes(dest),
            Entropy::Seeded(r) => r.try_fill_bytes(dest),
        }
    }
}

impl CryptoRng for Entropy {}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(Failure::USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if f.code != Failure::REJECT {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut rng = Entropy::from_flag(cli.test_entropy_seed)?;
    let suite = PairingSuite::default();
    match cli.command {
        Command::Keygen { label } => keygen(&suite, &Keystore::open(cli.keystore)?, &label, &mut rng),
        Command::Delegate { original, warrant_body, proxies, out } => {
            delegate(&suite, &Keystore::open(cli.keystore)?, &original, &warrant_body, &proxies, &out, &mut rng)
        }
        Command::ProxyAccept { token, proxy, name } => {
            proxy_accept(&suite, &Keystore::open(cli.keystore)?, &token, &proxy, name.as_deref())
        }
        Command::Sign { key, ring, index, message, out } => {
            sign(&suite, &Keystore::open(cli.keystore)?, &key, &ring, index, &message, &out, &mut rng)
        }
        Command::Verify { signature, message, stats } => verify(&suite, &signature, &message, stats),
        Command::Bench { sizes, trials, csv } => bench::run(&suite, &sizes, trials, csv, &mut rng),
    }
}

fn keygen(suite: &PairingSuite, store: &Keystore, label: &str, rng: &mut Entropy) -> Result<(), Failure> {
    keystore::check_label(label)?;
    if store.exists(label, Slot::Secret) || store.exists(label, Slot::Public) {
        return Err(Failure::usage(format!("label {label:?} is already in use")));
    }
    let (sk, pk) = pbsss::keygen(suite, rng)?;
    let public = wire::encode_public_key(&pk);
    store.put(label, Slot::Secret, &wire::encode_secret_key(&sk))?;
    let path = store.put(label, Slot::Public, &public)?;
    eprintln!("wrote {}", path.display());
    print!("{}", wire::armor(&public));
    Ok(())
}

fn read_public_key(path: &Path) -> Result<PublicKey, Failure> {
    wire::decode_public_key(&read_envelope(path)?).map_err(|e| Failure::malformed(format!("{}: {e}", path.display())))
}

fn delegate(
    suite: &PairingSuite,
    store: &Keystore,
    original: &str,
    body_file: &Path,
    proxy_files: &[PathBuf],
    out: &Path,
    rng: &mut Entropy,
) -> Result<(), Failure> {
    let sk_o = store.secret_key(original)?;
    let body = read_file(body_file)?;
    let proxies = proxy_files.iter().map(|p| read_public_key(p)).collect::<Result<Vec<_>, _>>()?;
    let warrant = Warrant::generate(body, sk_o.public_key(suite), proxies, rng)?;
    let digest = Sha256::digest(wire::warrant_bytes(&warrant));
    let token = make_delegation(suite, &sk_o, warrant)?;
    write_envelope(out, &wire::encode_token(&token))?;
    println!("warrant sha256 {}", hex::encode(digest));
    Ok(())
}

fn proxy_accept(
    suite: &PairingSuite,
    store: &Keystore,
    token_file: &Path,
    proxy: &str,
    name: Option<&str>,
) -> Result<(), Failure> {
    let name = name.unwrap_or(proxy);
    keystore::check_label(name)?;
    if store.exists(name, Slot::Proxy) {
        return Err(Failure::usage(format!("label {name:?} already has a proxy key")));
    }
    let token = wire::decode_token(&read_envelope(token_file)?)
        .map_err(|e| Failure::malformed(format!("{}: {e}", token_file.display())))?;
    let sk = store.secret_key(proxy)?;
    let material = derive_proxy_key(suite, &token, &sk)?;
    let path = store.put(name, Slot::Proxy, &wire::encode_proxy_key(&material))?;
    println!("proxy key stored at {}", path.display());
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn sign(
    suite: &PairingSuite,
    store: &Keystore,
    key: &str,
    ring_files: &[PathBuf],
    index: Option<usize>,
    message: &Path,
    out: &Path,
    rng: &mut Entropy,
) -> Result<(), Failure> {
    let material = store.proxy_key(key)?;
    if !material.check(suite, &mut OpCounter::new()) {
        return Err(Failure::malformed(format!("proxy key {key:?} does not match its warrant")));
    }
    let members = ring_files.iter().map(|p| read_public_key(p)).collect::<Result<Vec<_>, _>>()?;
    let ring = RingSpec::new(*material.warrant().original(), members)?;
    let k = match index {
        Some(k) => k,
        None => ring
            .position(material.proxy_pk())
            .ok_or_else(|| Failure::usage("signer's public key is not in the ring; pass --index"))?,
    };
    let msg = read_file(message)?;
    let sig = ring_sign(suite, &material, &ring, k, &msg, rng)?;
    if ring.len() == 1 {
        eprintln!("warning: ring of size 1 offers no anonymity; the signer is identifiable");
    }
    write_envelope(out, &wire::encode_signature(&sig))?;
    Ok(())
}

fn verify(suite: &PairingSuite, signature: &Path, message: &Path, stats: bool) -> Result<(), Failure> {
    let bytes = read_file(signature)?;
    let msg = read_file(message)?;
    let mut ctr = OpCounter::new();
    let verdict = match wire::read_envelope_bytes(&bytes).and_then(|b| wire::decode_signature(&b)) {
        Ok(sig) => ring_verify(suite, &sig, &msg, &mut ctr),
        Err(_) => Verdict::Reject(proxy_ring::RejectCause::Malformed),
    };
    match verdict {
        Verdict::Accept => println!("accept"),
        Verdict::Reject(cause) => println!("reject: {}", cause.as_str()),
    }
    if stats {
        println!(
            "pairings={} h_mults={} k_mults={} t_exps={} hashes={}",
            ctr.pairings, ctr.h_mults, ctr.k_mults, ctr.t_exps, ctr.hashes
        );
    }
    if verdict.is_accept() {
        Ok(())
    } else {
        Err(Failure { code: Failure::REJECT, message: String::new() })
    }
}
