//! Exact dense linear algebra: subspaces of `F_q^n` in canonical reduced
//! row-echelon form, and integer matrices (Bareiss rank, Hermite normal form).

mod field;
mod integer;
mod rational;

pub use field::{
    left_kernel, rref, subspace_intersection, subspace_sum, Echelon, FieldMatrix, SubspaceBasis,
};
pub use integer::{hnf, rank_exact, rank_mod, IntegerLattice, IntegerMatrix};
pub use rational::RationalEchelon;

use crate::error::{Error, Result};
use crate::prime::is_prime;

/// Moduli are limited to 32 bits so that a product of two residues fits a `u64`.
pub(crate) fn check_modulus(q: u64) -> Result<()> {
    if q > u32::MAX as u64 {
        return Err(Error::ModulusTooLarge(q));
    }
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    Ok(())
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo the prime `q`.
pub(crate) fn inv_mod(a: u64, q: u64) -> u64 {
    debug_assert!(a % q != 0);
    pow_mod(a, q - 2, q)
}
