use num_bigint::BigInt;

use super::element::{AlgebraElement, Basis};
use super::exponent::{ExponentMatrix, Var};
use super::ring::{Integers, PrimeField};
use crate::error::{Error, Result};
use crate::linalg::{Echelon, IntegerLattice, RationalEchelon, SubspaceBasis};
use crate::prime::Prime;

/// Coordinates of `v * var` for a group-basis coefficient vector `v`.
pub fn mul_var<T: Clone>(p: Prime, v: &[T], var: Var) -> Vec<T> {
    let q = p.as_usize();
    let stride = q.pow(var.axis() as u32);
    let mut out = v.to_vec();
    for (idx, x) in v.iter().enumerate() {
        let digit = (idx / stride) % q;
        let target = if digit + 1 == q { idx - digit * stride } else { idx + stride };
        out[target] = x.clone();
    }
    out
}

/// Smallest subspace containing `gens` and stable under `S, T, U, V`.
pub fn ideal_span_mod(p: Prime, q: u64, gens: &[Vec<u64>]) -> Result<SubspaceBasis> {
    let mut ech = Echelon::new(q, p.ambient_dim())?;
    for g in gens {
        if g.len() != p.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: p.ambient_dim(),
                actual: g.len(),
            });
        }
    }
    close_mod(p, &mut ech, gens.iter().cloned());
    Ok(ech.into_basis())
}

/// Extend `ech` to the ideal generated by its current span plus `gens`,
/// assuming the current span is already an ideal.
pub(crate) fn close_mod(p: Prime, ech: &mut Echelon, gens: impl IntoIterator<Item = Vec<u64>>) {
    let mut work: Vec<Vec<u64>> = gens.into_iter().collect();
    while let Some(v) = work.pop() {
        if ech.rank() == ech.ambient_dim() {
            break;
        }
        if ech.insert(&v) {
            work.extend(Var::ALL.iter().map(|&x| mul_var(p, &v, x)));
        }
    }
}

fn group_residues(gens: &[AlgebraElement<PrimeField>]) -> Result<Vec<Vec<u64>>> {
    gens.iter()
        .map(|g| {
            if g.basis() != Basis::Group {
                return Err(Error::BasisMismatch);
            }
            Ok(g.coeffs().to_vec())
        })
        .collect()
}

/// The ideal generated by `gens` over `F_q`, as a subspace.
pub fn ideal_span(p: Prime, q: u64, gens: &[AlgebraElement<PrimeField>]) -> Result<SubspaceBasis> {
    if gens.iter().any(|g| g.prime() != p || g.modulus() != q) {
        return Err(Error::RingMismatch);
    }
    ideal_span_mod(p, q, &group_residues(gens)?)
}

/// The ideal generated by `gens` in `Z[S,T,U,V]/(...)`, as a lattice in HNF.
pub fn ideal_lattice(p: Prime, gens: &[AlgebraElement<Integers>]) -> Result<IntegerLattice> {
    let mut lat = IntegerLattice::zero(p.ambient_dim());
    let mut work = Vec::new();
    for g in gens {
        if g.prime() != p {
            return Err(Error::RingMismatch);
        }
        if g.basis() != Basis::Group {
            return Err(Error::BasisMismatch);
        }
        work.push(g.coeffs().to_vec());
    }
    close_lattice(p, &mut lat, work);
    Ok(lat)
}

pub(crate) fn close_lattice(p: Prime, lat: &mut IntegerLattice, gens: Vec<Vec<BigInt>>) {
    let mut work = gens;
    while let Some(v) = work.pop() {
        if lat.insert(v.clone()) {
            work.extend(Var::ALL.iter().map(|&x| mul_var(p, &v, x)));
        }
    }
}

/// Rank over `Q` of the ideal generated by `gens`.
pub fn ideal_rational_rank(p: Prime, gens: &[AlgebraElement<Integers>]) -> Result<usize> {
    let mut ech = RationalEchelon::new(p.ambient_dim());
    let mut work = Vec::new();
    for g in gens {
        if g.prime() != p {
            return Err(Error::RingMismatch);
        }
        if g.basis() != Basis::Group {
            return Err(Error::BasisMismatch);
        }
        work.push(g.coeffs().to_vec());
    }
    while let Some(v) = work.pop() {
        if ech.rank() == p.ambient_dim() {
            break;
        }
        if ech.insert(&v) {
            work.extend(Var::ALL.iter().map(|&x| mul_var(p, &v, x)));
        }
    }
    Ok(ech.rank())
}

/// Whether a subspace of the group-basis coordinates is stable under
/// multiplication by `S, T, U, V`.
pub fn is_ideal(p: Prime, sub: &SubspaceBasis) -> Result<bool> {
    if sub.ambient_dim() != p.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim(),
            actual: sub.ambient_dim(),
        });
    }
    for v in sub.basis_vectors() {
        for var in Var::ALL {
            if !sub.contains(&mul_var(p, &v, var))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Span of `cofactor * x^a y^b` over shifted monomials in the two given
/// variables with `a, b < p` and `a + b >= min_degree`, in group-basis
/// coordinates. Only defined over `F_p`.
pub fn shifted_monomial_span(
    vars: [Var; 2],
    min_degree: usize,
    cofactor: &AlgebraElement<PrimeField>,
) -> Result<SubspaceBasis> {
    let p = cofactor.prime();
    let q = p.get() as u64;
    if cofactor.modulus() != q {
        return Err(Error::ModulusMismatch(cofactor.modulus(), q));
    }
    if vars[0] == vars[1] {
        return Err(Error::OutOfRange("the two variables must differ".into()));
    }
    let top = 2 * (p.as_usize() - 1);
    if min_degree > top + 1 {
        return Err(Error::OutOfRange(format!(
            "min_degree {min_degree} exceeds {}",
            top + 1
        )));
    }
    let ring = *cofactor.ring();
    let c = cofactor.from_shifted();
    let mut ech = Echelon::new(q, p.ambient_dim())?;
    for a in 0..p.as_usize() {
        for b in 0..p.as_usize() {
            if a + b < min_degree {
                continue;
            }
            let mut e = [[0i64; 2]; 2];
            for (var, k) in vars.iter().zip([a, b]) {
                let ax = var.axis();
                e[ax / 2][ax % 2] = k as i64;
            }
            let m = AlgebraElement::monomial(p, ring, Basis::Shifted, ExponentMatrix::new(p, e));
            ech.insert(m.from_shifted().mul(&c)?.coeffs());
        }
    }
    Ok(ech.into_basis())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{phi_column, phi_row};
    use crate::linalg::{subspace_intersection, FieldMatrix, rref};

    fn pr(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    /// Span of `g * m` over all monomials `m`.
    fn principal_by_all_monomials(g: &AlgebraElement<PrimeField>) -> SubspaceBasis {
        let p = g.prime();
        let rows: Vec<Vec<u64>> = ExponentMatrix::all(p)
            .map(|m| g.mul_monomial(m).unwrap().coeffs().to_vec())
            .collect();
        rref(&FieldMatrix::from_rows(g.modulus(), p.ambient_dim(), &rows).unwrap())
    }

    #[test]
    fn mul_var_matches_monomial_product() {
        let p = pr(3);
        let f = PrimeField::new(7).unwrap();
        let coeffs = (0..81u64).map(|i| i * i % 7).collect();
        let g = AlgebraElement::from_coeffs(p, f, Basis::Group, coeffs).unwrap();
        for var in Var::ALL {
            let x = AlgebraElement::variable(p, f, var);
            assert_eq!(mul_var(p, g.coeffs(), var), g.mul(&x).unwrap().coeffs());
        }
    }

    #[test]
    fn closure_agrees_with_all_monomial_span() {
        for p in [2, 3] {
            let p = pr(p);
            let f = PrimeField::new(p.get() as u64).unwrap();
            for pair in [(1, 0), (1, 1), (0, 1)] {
                for g in [phi_column(p, f, pair).unwrap(), phi_row(p, f, pair).unwrap()] {
                    let closed = ideal_span(p, f.modulus(), std::slice::from_ref(&g)).unwrap();
                    assert_eq!(closed, principal_by_all_monomials(&g));
                    assert_eq!(closed.dim(), p.as_usize().pow(2));
                    assert!(is_ideal(p, &closed).unwrap());
                }
            }
        }
    }

    #[test]
    fn non_ideal_detected() {
        let p = pr(2);
        let f = PrimeField::new(2).unwrap();
        let one = AlgebraElement::one(p, f, Basis::Group);
        let sub = rref(&FieldMatrix::from_rows(2, 16, &[one.coeffs().to_vec()]).unwrap());
        assert!(!is_ideal(p, &sub).unwrap());
    }

    #[test]
    fn lattice_and_rational_closure() {
        let p = pr(2);
        let g = phi_column(p, Integers, (1, 0)).unwrap();
        let lat = ideal_lattice(p, std::slice::from_ref(&g)).unwrap();
        assert_eq!(lat.rank(), 4);
        assert_eq!(ideal_rational_rank(p, &[g.clone()]).unwrap(), 4);
        // the ideal of S - 1 has rank p^4 - p^3 over Q
        let one = AlgebraElement::one(p, Integers, Basis::Group);
        let s1 = AlgebraElement::variable(p, Integers, Var::S).sub(&one).unwrap();
        assert_eq!(ideal_rational_rank(p, &[s1.clone()]).unwrap(), 8);
        let lat = ideal_lattice(p, &[s1, g]).unwrap();
        // Phi(S)Phi(U) lives on the S = 1 eigenspace, which (S-1) misses
        assert_eq!(lat.rank(), 12);
        for v in lat.rows() {
            for var in Var::ALL {
                assert!(lat.contains(&mul_var(p, v, var)));
            }
        }
    }

    #[test]
    fn shifted_span_dimensions() {
        for p in [2, 3, 5] {
            let pp = pr(p);
            let f = PrimeField::new(p as u64).unwrap();
            let c = phi_column(pp, f, (0, 1)).unwrap();
            let ca = ideal_span(pp, p as u64, std::slice::from_ref(&c)).unwrap();
            let full = shifted_monomial_span([Var::S, Var::U], 0, &c).unwrap();
            assert_eq!(full, ca);
            let top = shifted_monomial_span([Var::S, Var::U], 2 * p as usize - 1, &c).unwrap();
            assert!(top.dim() <= 1);
            for k in 1..=p as usize {
                let sub = shifted_monomial_span([Var::S, Var::U], 2 * p as usize - k - 1, &c)
                    .unwrap();
                assert_eq!(sub.dim(), k * (k + 1) / 2, "p={p} k={k}");
                assert!(sub.is_subspace_of(&ca).unwrap());
            }
        }
    }

    #[test]
    fn top_corner_is_the_minimal_ideal() {
        // (su)^{p-1} A and (tv)^{p-1} A meet in the line of (stuv)^{p-1}
        let p = pr(3);
        let f = PrimeField::new(3).unwrap();
        let c0 = ideal_span(p, 3, &[phi_column(p, f, (1, 0)).unwrap()]).unwrap();
        let c = ideal_span(p, 3, &[phi_column(p, f, (0, 1)).unwrap()]).unwrap();
        let meet = subspace_intersection(&c0, &c).unwrap();
        assert_eq!(meet.dim(), 1);
        let top = AlgebraElement::monomial(p, f, Basis::Shifted, ExponentMatrix::new(p, [[2, 2], [2, 2]]));
        assert!(meet.contains(top.from_shifted().coeffs()).unwrap());
    }
}
