#![allow(dead_code)]

use std::collections::HashMap;

use edgefog_core::gen::{generate, GenParams};
use edgefog_core::{normalize_instance, shortest_path_closure, Instance, SquareMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every permutation of `0..n` by Heap's algorithm (order differs from the
/// library's lexicographic walk on purpose).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            out.push(p.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Network cost straight from the double sum over all ordered pairs, halved.
pub fn oracle_network(f: &[usize], inst: &Instance) -> f64 {
    let n = f.len();
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            total += inst.j_conn().get(i, j) * inst.d_conn().get(f[i], f[j]);
        }
    }
    total / 2.0
}

/// Processing cost summed in job order.
pub fn oracle_processing(f: &[usize], inst: &Instance) -> f64 {
    f.iter()
        .enumerate()
        .map(|(i, &e)| inst.job_size()[i] / inst.device_power()[e])
        .sum()
}

/// `(job size, device power) -> count` table of an assignment, keyed by bits.
pub fn count_table(f: &[usize], inst: &Instance) -> HashMap<(u64, u64), usize> {
    let mut t = HashMap::new();
    for (i, &e) in f.iter().enumerate() {
        *t.entry((inst.job_size()[i].to_bits(), inst.device_power()[e].to_bits()))
            .or_insert(0) += 1;
    }
    t
}

/// Small random instance with integer data drawn from few values so that
/// equivalence classes and cost ties are common.
pub fn random_instance(n: usize, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let power: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(1..=4u32))).collect();
    let size: Vec<f64> = (0..n).map(|_| f64::from(rng.gen_range(1..=3u32))).collect();
    let mut raw = SquareMatrix::filled(n, f64::INFINITY);
    for i in 0..n {
        raw[(i, i)] = 0.0;
    }
    for i in 0..n {
        for j in i + 1..n {
            if i + 1 == j || rng.gen_bool(0.4) {
                let c = f64::from(rng.gen_range(1..=6u32));
                raw[(i, j)] = c;
                raw[(j, i)] = c;
            }
        }
    }
    let d = shortest_path_closure(&raw);
    let mut jc = SquareMatrix::zeros(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                let w = f64::from(rng.gen_range(1..=2u32));
                jc[(i, j)] = w;
                jc[(j, i)] = w;
            }
        }
    }
    Instance::new(power, size, d, jc).unwrap()
}

/// Instance from the topology generator at default parameters.
pub fn default_instance(n: usize, seed: u64) -> Instance {
    let g = generate(&GenParams::with_size(n, seed)).unwrap();
    normalize_instance(&g.resources, &g.jobs).unwrap()
}

/// Minimum over `candidates` of `cost`, with the lexicographically smallest
/// minimiser.
pub fn argmin<'a>(
    candidates: impl IntoIterator<Item = &'a Vec<usize>>,
    cost: impl Fn(&[usize]) -> f64,
) -> (f64, Vec<usize>) {
    let mut best: Option<(f64, Vec<usize>)> = None;
    for f in candidates {
        let c = cost(f);
        let better = match &best {
            None => true,
            Some((b, g)) => c < *b || (c == *b && f < g),
        };
        if better {
            best = Some((c, f.clone()));
        }
    }
    best.unwrap()
}
