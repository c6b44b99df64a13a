//! Seeded random sources shared by the integration tests.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use skc_core::{Hypergraph, PinSource, PmfSource, TerminalSet};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn normalize(w: &mut [f64]) {
    let s: f64 = w.iter().sum();
    for x in w.iter_mut() {
        *x /= s;
    }
}

/// Dense pmf with independent cell weights; each cell is zeroed with
/// probability `zero_prob` (at least one cell stays positive).
pub fn random_pmf(r: &mut ChaCha8Rng, m: usize, max_alphabet: u32, zero_prob: f64) -> PmfSource {
    let alphabets: Vec<u32> = (0..m).map(|_| r.gen_range(2..=max_alphabet)).collect();
    let size: usize = alphabets.iter().map(|&a| a as usize).product();
    let mut w: Vec<f64> = (0..size)
        .map(|_| {
            if r.gen_bool(zero_prob) {
                0.0
            } else {
                r.gen_range(0.05..1.0)
            }
        })
        .collect();
    if w.iter().all(|&x| x == 0.0) {
        w[r.gen_range(0..size)] = 1.0;
    }
    normalize(&mut w);
    PmfSource::from_dense(alphabets, &w, 1e-9).unwrap()
}

/// Dense pmf mixing a random PIN model (binary alphabets per incident bit)
/// with uniform-weight noise of mass `noise`.
pub fn noisy_pin_pmf(r: &mut ChaCha8Rng, m: usize, edges: usize, noise: f64) -> PmfSource {
    let pin = random_pin(r, m, edges, m);
    let exact = pin.to_pmf().unwrap();
    let alphabets = exact.alphabets().to_vec();
    let size: usize = alphabets.iter().map(|&a| a as usize).product();
    let mut w = vec![0.0; size];
    for k in 0..exact.support_len() {
        let idx = exact
            .point(k)
            .iter()
            .zip(&alphabets)
            .fold(0usize, |acc, (&x, &a)| acc * a as usize + x as usize);
        w[idx] += (1.0 - noise) * exact.prob(k);
    }
    let noise_w: Vec<f64> = (0..size).map(|_| r.gen_range(0.0..1.0)).collect();
    let s: f64 = noise_w.iter().sum();
    for (x, n) in w.iter_mut().zip(&noise_w) {
        *x += noise * n / s;
    }
    normalize(&mut w);
    PmfSource::from_dense(alphabets, &w, 1e-9).unwrap()
}

/// Random hyperedges of size `1..=max_size`, multiplicity 1 or 2. Every
/// terminal is covered.
pub fn random_pin(r: &mut ChaCha8Rng, m: usize, edges: usize, max_size: usize) -> PinSource {
    let mut list = Vec::new();
    for _ in 0..edges {
        let size = r.gen_range(1..=max_size.min(m));
        list.push((random_subset(r, m, size), r.gen_range(1..=2u32)));
    }
    for i in 1..=m {
        if !list.iter().any(|(s, _)| s.contains(i)) {
            let j = if i == 1 { 2 } else { r.gen_range(1..i) };
            list.push((TerminalSet::from_terminals(m, &[i, j]).unwrap(), 1));
        }
    }
    PinSource::new(Hypergraph::new(m, list).unwrap())
}

/// `edges` random `t`-subsets, multiplicity one each (merged if repeated).
pub fn random_uniform_pin(r: &mut ChaCha8Rng, m: usize, t: usize, edges: usize) -> PinSource {
    let list: Vec<_> = (0..edges).map(|_| (random_subset(r, m, t), 1)).collect();
    PinSource::new(Hypergraph::new(m, list).unwrap())
}

pub fn random_subset(r: &mut ChaCha8Rng, m: usize, size: usize) -> TerminalSet {
    let mut v: Vec<usize> = (1..=m).collect();
    for k in 0..size {
        let j = r.gen_range(k..m);
        v.swap(k, j);
    }
    TerminalSet::from_terminals(m, &v[..size]).unwrap()
}

/// Connected graph: a random spanning tree plus `extra` random edges,
/// possibly parallel.
pub fn random_connected_graph(r: &mut ChaCha8Rng, m: usize, extra: usize) -> Hypergraph {
    let mut list = Vec::new();
    for v in 2..=m {
        let u = r.gen_range(1..v);
        list.push((TerminalSet::from_terminals(m, &[u, v]).unwrap(), 1));
    }
    for _ in 0..extra {
        list.push((random_subset(r, m, 2), 1));
    }
    Hypergraph::new(m, list).unwrap()
}

/// Connected simple graph with exactly `edges` edges (`m − 1 ≤ edges`).
pub fn random_simple_graph(r: &mut ChaCha8Rng, m: usize, edges: usize) -> Hypergraph {
    let mut list: Vec<TerminalSet> = Vec::new();
    for v in 2..=m {
        let u = r.gen_range(1..v);
        list.push(TerminalSet::from_terminals(m, &[u, v]).unwrap());
    }
    let cap = m * (m - 1) / 2;
    while list.len() < edges.min(cap) {
        let e = random_subset(r, m, 2);
        if !list.contains(&e) {
            list.push(e);
        }
    }
    Hypergraph::new(m, list.into_iter().map(|e| (e, 1))).unwrap()
}

/// Labels for `n` points onto `k = min(n, k_range draw)` values, each value
/// used at least once.
pub fn random_surjection(
    r: &mut ChaCha8Rng,
    n: usize,
    k_range: std::ops::RangeInclusive<u32>,
) -> Vec<u32> {
    let k = r.gen_range(k_range).min(n as u32);
    let mut labels: Vec<u32> = (0..n)
        .map(|i| {
            if (i as u32) < k {
                i as u32
            } else {
                r.gen_range(0..k)
            }
        })
        .collect();
    for i in (1..n).rev() {
        let j = r.gen_range(0..=i);
        labels.swap(i, j);
    }
    labels
}
