use std::path::PathBuf;

use clap::ValueEnum;
use levelflat::level_ideals::{SubsetPolicy, DEFAULT_SEED};
use levelflat::prime::is_prime;
use levelflat::{Error, Prime, Result};
use serde::{Deserialize, Serialize};

/// Largest prime the verifier accepts.
pub const MAX_CLI_PRIME: u32 = 13;
/// Largest prime for the subspace checks (dimensions, intersections,
/// filtration, division).
pub const MAX_SUBSPACE_PRIME: u32 = 7;
/// Number of random `(sigma, tau)` pairs for the filtration check.
pub const FILTRATION_PAIRS: usize = 10;

/// Which group of checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Flatness,
    Dims,
    Intersections,
    Symmetry,
    Division,
    Kmd,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub p: u32,
    pub subset_policy: SubsetPolicy,
    /// Seed for the random filtration orders.
    pub seed: u64,
    pub aux_primes: Vec<u64>,
    pub long_tests: bool,
    pub report_path: Option<PathBuf>,
}

impl RunConfig {
    /// Every subset for `p <= 3`, five per size above that.
    pub fn new(p: u32) -> Self {
        let subset_policy = if p <= 3 {
            SubsetPolicy::All
        } else {
            SubsetPolicy::default()
        };
        RunConfig {
            p,
            subset_policy,
            seed: DEFAULT_SEED,
            aux_primes: Vec::new(),
            long_tests: false,
            report_path: None,
        }
    }

    pub fn validate(&self) -> Result<Prime> {
        let p = Prime::new(self.p)?;
        if self.p > MAX_CLI_PRIME {
            return Err(Error::PrimeOutOfRange {
                p: self.p as u64,
                max: MAX_CLI_PRIME as u64,
            });
        }
        if let SubsetPolicy::Sample { per_cardinality: 0, .. } = self.subset_policy {
            return Err(Error::OutOfRange("sample size must be at least 1".into()));
        }
        if let Some(&l) = self.aux_primes.iter().find(|&&l| !is_prime(l) || l == self.p as u64) {
            return Err(Error::OutOfRange(format!("auxiliary modulus {l} must be a prime other than p")));
        }
        Ok(p)
    }
}
