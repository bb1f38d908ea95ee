use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deterministic primality test by trial division.
///
/// Only ever called on moduli below 2^32, so trial division up to 2^16 is enough.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// A prime `p`, the order of the group `mu_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p as u64) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p as u64))
        }
    }

    /// Like [`Prime::new`], additionally enforcing `p <= max`.
    pub fn bounded(p: u32, max: u32) -> Result<Self> {
        let prime = Self::new(p)?;
        if p > max {
            return Err(Error::PrimeOutOfRange {
                p: p as u64,
                max: max as u64,
            });
        }
        Ok(prime)
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    /// Number of monomials of the four-variable group algebra, `p^4`.
    #[inline]
    pub fn ambient_dim(self) -> usize {
        self.as_usize().pow(4)
    }
}

impl TryFrom<u32> for Prime {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u32 {
    fn from(p: Prime) -> u32 {
        p.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
