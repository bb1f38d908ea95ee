//! Rank of the full-level ideal mod `p` against its rank over `Q`.

use serde::{Deserialize, Serialize};

use super::formulas;
use super::integer_generator_matrix;
use crate::algebra::PairIndexing;
use crate::error::{Error, Result};
use crate::linalg::{rank_exact, rank_mod};
use crate::prime::{next_prime, Prime};

/// Largest `p` for which the certificate is computed.
pub const MAX_FLATNESS_PRIME: u32 = 7;
/// Largest `p` for which the rational rank is computed by exact elimination.
pub const MAX_EXACT_PRIME: u32 = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum RankMethod {
    /// Fraction-free elimination over `Z`.
    Exact,
    /// Agreement of ranks modulo several large primes; a lower bound that is
    /// the true rank unless every prime divides a fixed nonzero minor.
    Probabilistic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatnessCertificate {
    pub p: u32,
    /// `dim_{F_p}` of the ideal mod `p`.
    pub r_p: usize,
    /// Rank over `Q` of the integer generators.
    pub r_q: usize,
    pub method: RankMethod,
    /// Ranks modulo the auxiliary primes.
    pub aux_ranks: Vec<(u64, usize)>,
    /// `p^3 + p^2 - p`.
    pub expected: i64,
    /// `p^4 - r_q`, to compare with `#GL_2(F_p)`.
    pub generic_rank: i64,
    pub gl2_order: i64,
}

impl FlatnessCertificate {
    pub fn aux_consensus(&self) -> bool {
        self.aux_ranks.windows(2).all(|w| w[0].1 == w[1].1)
    }

    pub fn flat(&self) -> bool {
        self.r_p == self.r_q && self.r_q as i64 == self.expected && self.aux_consensus()
    }
}

/// Three primes above `2^30`, all different from `p`.
pub fn default_aux_primes(p: Prime) -> Vec<u64> {
    let mut out = Vec::new();
    let mut x = 1u64 << 30;
    while out.len() < 3 {
        x = next_prime(x);
        if x != p.get() as u64 {
            out.push(x);
        }
    }
    out
}

pub fn flatness_certificate(p: Prime, aux_primes: &[u64]) -> Result<FlatnessCertificate> {
    if p.get() > MAX_FLATNESS_PRIME {
        return Err(Error::PrimeOutOfRange {
            p: p.get() as u64,
            max: MAX_FLATNESS_PRIME as u64,
        });
    }
    let aux: Vec<u64> = if aux_primes.is_empty() {
        default_aux_primes(p)
    } else {
        aux_primes.to_vec()
    };
    let m = integer_generator_matrix(p, PairIndexing::Projective);
    let r_p = rank_mod(&m, p.get() as u64)?;
    let aux_ranks = aux
        .iter()
        .map(|&ell| rank_mod(&m, ell).map(|r| (ell, r)))
        .collect::<Result<Vec<_>>>()?;
    let (r_q, method) = if p.get() <= MAX_EXACT_PRIME {
        (rank_exact(&m), RankMethod::Exact)
    } else {
        let best = aux_ranks.iter().map(|&(_, r)| r).max().unwrap_or(0);
        (best, RankMethod::Probabilistic)
    };
    let q = p.get() as i64;
    Ok(FlatnessCertificate {
        p: p.get(),
        r_p,
        r_q,
        method,
        aux_ranks,
        expected: formulas::ideal_dim(p.get()),
        generic_rank: q.pow(4) - r_q as i64,
        gl2_order: formulas::gl2_order(p.get()),
    })
}
