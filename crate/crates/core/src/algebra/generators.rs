use super::element::AlgebraElement;
use super::exponent::ExponentMatrix;
use super::ring::CoeffRing;
use crate::error::{Error, Result};
use crate::prime::Prime;

/// `Phi_p(x) = 1 + x + ... + x^(p-1)` evaluated at the monomial `x = e`.
pub fn phi<R: CoeffRing>(p: Prime, ring: R, e: ExponentMatrix) -> AlgebraElement<R> {
    AlgebraElement::sum_of_monomials(p, ring, (0..p.get()).map(|m| e.scale(m)))
}

fn reduce_pair(p: Prime, (a, b): (i64, i64)) -> Result<(i64, i64)> {
    let q = p.get() as i64;
    let (a, b) = (a.rem_euclid(q), b.rem_euclid(q));
    if (a, b) == (0, 0) {
        return Err(Error::ZeroPair);
    }
    Ok((a, b))
}

/// `Phi_p(S^a T^b) Phi_p(U^a V^b)`: the sum of the monomials
/// `[[m a, m b], [n a, n b]]` over `0 <= m, n < p`.
pub fn phi_column<R: CoeffRing>(p: Prime, ring: R, pair: (i64, i64)) -> Result<AlgebraElement<R>> {
    let (a, b) = reduce_pair(p, pair)?;
    let q = p.get() as i64;
    let monos = (0..q).flat_map(|m| (0..q).map(move |n| (m, n)));
    Ok(AlgebraElement::sum_of_monomials(
        p,
        ring,
        monos.map(|(m, n)| ExponentMatrix::new(p, [[m * a, m * b], [n * a, n * b]])),
    ))
}

/// `Phi_p(S^a U^b) Phi_p(T^a V^b)`, the transpose of [`phi_column`].
pub fn phi_row<R: CoeffRing>(p: Prime, ring: R, pair: (i64, i64)) -> Result<AlgebraElement<R>> {
    let (a, b) = reduce_pair(p, pair)?;
    let q = p.get() as i64;
    let monos = (0..q).flat_map(|m| (0..q).map(move |n| (m, n)));
    Ok(AlgebraElement::sum_of_monomials(
        p,
        ring,
        monos.map(|(m, n)| ExponentMatrix::new(p, [[m * a, n * a], [m * b, n * b]])),
    ))
}

/// How the generators of the level ideal are indexed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairIndexing {
    /// `(1,0), (1,1), ..., (1,p-1), (0,1)`.
    Projective,
    /// Every nonzero pair in `(Z/p)^2`.
    All,
}

pub fn nonzero_pairs(p: Prime, indexing: PairIndexing) -> Vec<(i64, i64)> {
    let q = p.get() as i64;
    match indexing {
        PairIndexing::Projective => (0..q).map(|i| (1, i)).chain([(0, 1)]).collect(),
        PairIndexing::All => (0..q)
            .flat_map(|a| (0..q).map(move |b| (a, b)))
            .filter(|&pair| pair != (0, 0))
            .collect(),
    }
}

/// The universal homomorphism `(Z/p)^2 -> mu_p x mu_p` with matrix
/// `[[S, T], [U, V]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniversalHom {
    p: Prime,
}

impl UniversalHom {
    pub fn new(p: Prime) -> Self {
        UniversalHom { p }
    }

    /// The image `(S^a T^b, U^a V^b)` of `(a, b)`, as two monomials.
    pub fn evaluate(&self, a: i64, b: i64) -> (ExponentMatrix, ExponentMatrix) {
        (
            ExponentMatrix::new(self.p, [[a, b], [0, 0]]),
            ExponentMatrix::new(self.p, [[0, 0], [a, b]]),
        )
    }
}
