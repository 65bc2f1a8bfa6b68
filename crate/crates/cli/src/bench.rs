use std::time::Instant;

use proxy_ring::delegation::{derive_proxy_key, make_delegation, Warrant};
use proxy_ring::pbsss::keygen;
use proxy_ring::ringsig::{ring_sign, ring_verify, RingSpec};
use proxy_ring::{OpCounter, PairingSuite};

use crate::{Entropy, Failure};

pub struct Row {
    pub n: usize,
    pub sign_ms: f64,
    pub verify_ms: f64,
    pub verify_pairings: u64,
    pub verify_kmults: u64,
}

/// One fresh group of `n` proxies per size; the signer rotates across trials.
pub fn measure(suite: &PairingSuite, n: usize, trials: usize, rng: &mut Entropy) -> Result<Row, Failure> {
    let (sk_o, pk_o) = keygen(suite, rng)?;
    let proxies = (0..n).map(|_| keygen(suite, rng)).collect::<Result<Vec<_>, _>>()?;
    let members: Vec<_> = proxies.iter().map(|p| p.1).collect();
    let warrant = Warrant::generate(b"bench".to_vec(), pk_o, members.clone(), rng)?;
    let token = make_delegation(suite, &sk_o, warrant)?;
    let ring = RingSpec::new(pk_o, members)?;

    let (mut sign_total, mut verify_total) = (0.0, 0.0);
    let mut counts: Option<OpCounter> = None;
    for t in 0..trials {
        let k = t % n;
        let material = derive_proxy_key(suite, &token, &proxies[k].0)?;
        let msg = format!("bench message {t}");

        let start = Instant::now();
        let sig = ring_sign(suite, &material, &ring, k, msg.as_bytes(), rng)?;
        sign_total += start.elapsed().as_secs_f64();

        let mut ctr = OpCounter::new();
        let start = Instant::now();
        let verdict = ring_verify(suite, &sig, msg.as_bytes(), &mut ctr);
        verify_total += start.elapsed().as_secs_f64();
        if !verdict.is_accept() {
            return Err(Failure::usage(format!("internal error: bench signature rejected at n={n}")));
        }
        match &counts {
            Some(c) if *c != ctr => {
                return Err(Failure::usage(format!("internal error: verification cost varies at n={n}")))
            }
            _ => counts = Some(ctr),
        }
    }
    let ctr = counts.unwrap_or_default();
    Ok(Row {
        n,
        sign_ms: sign_total * 1e3 / trials as f64,
        verify_ms: verify_total * 1e3 / trials as f64,
        verify_pairings: ctr.pairings,
        verify_kmults: ctr.k_mults,
    })
}

pub fn run(suite: &PairingSuite, sizes: &[usize], trials: usize, csv: bool, rng: &mut Entropy) -> Result<(), Failure> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Failure::usage("--sizes must list positive ring sizes"));
    }
    if trials == 0 {
        return Err(Failure::usage("--trials must be positive"));
    }
    if csv {
        println!("n,sign_ms,verify_ms,verify_pairings,verify_kmults");
    } else {
        println!("{:>5} {:>12} {:>12} {:>16} {:>14}", "n", "sign ms", "verify ms", "verify pairings", "verify kmults");
    }
    for &n in sizes {
        let row = measure(suite, n, trials, rng)?;
        if csv {
            println!(
                "{},{:.3},{:.3},{},{}",
                row.n, row.sign_ms, row.verify_ms, row.verify_pairings, row.verify_kmults
            );
        } else {
            println!(
                "{:>5} {:>12.3} {:>12.3} {:>16} {:>14}",
                row.n, row.sign_ms, row.verify_ms, row.verify_pairings, row.verify_kmults
            );
        }
    }
    Ok(())
}
