#![allow(dead_code)]

use fdsc_core::css::{CssCode, Family};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn support(mask: u64) -> Vec<usize> {
    (0..64).filter(|&q| mask >> q & 1 == 1).collect()
}

/// Basis of `{z : popcount(z & x) even for every x}` over `n` bits.
fn orthogonal_complement(n: usize, xs: &[u64]) -> Vec<u64> {
    // Row-reduce the X masks, then read the kernel off the free columns.
    let mut rows: Vec<u64> = xs.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i] >> col & 1 == 1) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i] >> col & 1 == 1 {
                rows[i] ^= rows[r];
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut z = 1u64 << free;
            for (k, &p) in pivots.iter().enumerate() {
                if rows[k] >> free & 1 == 1 {
                    z |= 1 << p;
                }
            }
            z
        })
        .collect()
}

/// A random CSS code on `n ≤ 63` qubits with up to `max_x` X generators and
/// Z generators spanning their full orthogonal complement (mixed at random).
pub fn random_code(seed: u64, n: usize, max_x: usize) -> CssCode {
    assert!(n < 64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.random_range(0..=max_x);
    let full = (1u64 << n) - 1;
    let xs: Vec<u64> = (0..m)
        .map(|_| loop {
            let mask = rng.random::<u64>() & full;
            if mask != 0 {
                break mask;
            }
        })
        .collect();
    let basis = orthogonal_complement(n, &xs);
    let mut zs = basis.clone();
    // Mix in a few redundant combinations.
    for _ in 0..rng.random_range(0..3) {
        let combo = basis
            .iter()
            .filter(|_| rng.random_bool(0.5))
            .fold(0u64, |acc, &b| acc ^ b);
        if combo != 0 {
            zs.push(combo);
        }
    }
    CssCode::new(
        n,
        xs.iter().map(|&x| support(x)).collect(),
        zs.iter().map(|&z| support(z)).collect(),
        Family::Custom,
    )
    .expect("random code commutes by construction")
}
