//! The group algebra `R[S,T,U,V]/(S^p-1, T^p-1, U^p-1, V^p-1)`.

mod element;
mod exponent;
mod generators;
mod ideal;
mod ring;

pub use element::{AlgebraElement, Basis};
pub use exponent::{ExponentMatrix, Var};
pub(crate) use exponent::mat_mul;
pub use generators::{nonzero_pairs, phi, phi_column, phi_row, PairIndexing, UniversalHom};
pub use ideal::{
    ideal_lattice, ideal_rational_rank, ideal_span, ideal_span_mod, is_ideal, mul_var,
    shifted_monomial_span,
};
pub use ring::{CoeffRing, Integers, PrimeField, Rationals, RingKind};

/// `prod_{i=1}^{k} (n+1-i)/i`, so `binom(n, k) = 0` for `0 <= n < k` and
/// `binom(n, 0) = 1`. Negative `n` follows the same product.
pub fn binom(n: i64, k: u64) -> i64 {
    let mut acc: i128 = 1;
    for i in 1..=k as i128 {
        // acc * (n+1-i) is a product of i consecutive integers over (i-1)!,
        // hence divisible by i
        acc = acc * (n as i128 + 1 - i) / i;
        if acc == 0 {
            return 0;
        }
    }
    i64::try_from(acc).expect("binomial coefficient overflows i64")
}
