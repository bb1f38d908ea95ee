use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::binom;

pub const DEFAULT_SEED: u64 = 0xC0FFEE;
pub const DEFAULT_SAMPLES: usize = 5;

/// Which subsets `J` a check runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum SubsetPolicy {
    All,
    /// Up to `per_cardinality` distinct subsets of each size; sizes with
    /// fewer subsets are enumerated.
    Sample { per_cardinality: usize, seed: u64 },
}

impl Default for SubsetPolicy {
    fn default() -> Self {
        SubsetPolicy::Sample {
            per_cardinality: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
        }
    }
}

/// Every subset of `0..n`, ordered by size and then lexicographically.
pub fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    (0..=n).flat_map(|k| subsets_of_size(n, k)).collect()
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Subsets of `0..n` under `policy`, grouped by size in increasing order.
pub fn subsets(n: usize, policy: SubsetPolicy) -> Vec<Vec<usize>> {
    match policy {
        SubsetPolicy::All => all_subsets(n),
        SubsetPolicy::Sample { per_cardinality, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::new();
            for k in 0..=n {
                if binom(n as i64, k as u64) as usize <= per_cardinality {
                    out.extend(subsets_of_size(n, k));
                    continue;
                }
                let mut chosen = BTreeSet::new();
                while chosen.len() < per_cardinality {
                    let mut s = sample(&mut rng, n, k).into_vec();
                    s.sort_unstable();
                    chosen.insert(s);
                }
                out.extend(chosen);
            }
            out
        }
    }
}

/// `count` pairs `(sigma, tau)` of uniformly random permutations of `0..n`.
pub fn random_permutation_pairs(n: usize, count: usize, seed: u64) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut sigma: Vec<usize> = (0..n).collect();
            let mut tau = sigma.clone();
            sigma.shuffle(&mut rng);
            tau.shuffle(&mut rng);
            (sigma, tau)
        })
        .collect()
}
