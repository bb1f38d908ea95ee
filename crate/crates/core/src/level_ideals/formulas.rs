//! Closed-form dimensions the computed subspaces are compared against.

use crate::algebra::binom;

fn p2(p: u32) -> i64 {
    (p as i64).pow(2)
}

/// `k p^2 - binom(k+1, 3)`: dimension of a sum of `k` column (or row)
/// principal ideals.
pub fn column_sum_dim(p: u32, k: usize) -> i64 {
    k as i64 * p2(p) - binom(k as i64 + 1, 3)
}

/// `p^3 + p^2 - p - binom(p-k+2, 3)`: dimension of all columns plus `k` rows.
pub fn mixed_sum_dim(p: u32, k: usize) -> i64 {
    ideal_dim(p) - binom(p as i64 - k as i64 + 2, 3)
}

/// `p^3 + p^2 - p`.
pub fn ideal_dim(p: u32) -> i64 {
    let p = p as i64;
    p * p * p + p * p - p
}

/// `(p^2 - 1)(p^2 - p)`.
pub fn gl2_order(p: u32) -> i64 {
    let p = p as i64;
    (p * p - 1) * (p * p - p)
}

/// Expected dimension of the `i`-th graded piece (`1 <= i <= 2p+2`) of the
/// column-then-row filtration.
pub fn graded_piece_dim(p: u32, i: usize) -> i64 {
    let (pi, ii) = (p as i64, i as i64);
    if ii <= pi + 1 {
        p2(p) - binom(ii, 2)
    } else if ii == pi + 2 {
        binom(pi, 2)
    } else {
        binom(2 * pi + 3 - ii, 2)
    }
}

/// `binom(k+1, 2)`: dimension of `C(J) ∩ cA` for `#J = k`.
pub fn column_intersection_dim(k: usize) -> i64 {
    binom(k as i64 + 1, 2)
}

/// `p^2 - binom(p-k+1, 2)`: dimension of `(C + R(J)) ∩ rA` for `#J = k`.
pub fn row_intersection_dim(p: u32, k: usize) -> i64 {
    p2(p) - binom(p as i64 - k as i64 + 1, 2)
}
