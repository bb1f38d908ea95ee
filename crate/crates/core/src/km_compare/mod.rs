//! The ideal of Katz–Mazur `×`-homomorphisms `(Z/p)^2 -> mu_p x mu_p`, its
//! Cartier dual, and their comparison with the full-level ideal over `Z`.
//!
//! For a generic function `f = sum lambda_(a+pb) X^a Y^b` on `mu_p x mu_p`
//! the `×`-condition equates `det(T - f)` with the product of `T - f(P)`
//! over the `p^2` sections `P = h(i, j)`. Every coefficient of a
//! `lambda`-monomial in every power of `T` of the difference is a generator.

mod berkowitz;
mod lambda;
mod trace;

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    ideal_lattice, AlgebraElement, Basis, ExponentMatrix, Integers, PairIndexing,
};
use crate::error::{Error, Result};
use crate::level_ideals::{integer_generator_matrix, Family, GeneratorFamily};
use crate::linalg::{rank_exact, IntegerLattice, SubspaceBasis};
use crate::prime::Prime;
use crate::symmetry::{iota_permutation, left_permutation, right_permutation, GL2Element};

pub use berkowitz::char_poly_divfree;
pub use lambda::{LambdaCoeff, LambdaMonomial, LambdaPolynomial};
pub use trace::{
    generic_fiber_count, trace_identity_check, trace_of_x, TraceReport, MAX_FIBER_PRIME,
    MAX_TRACE_PRIME,
};

/// Largest `p` for which the `×`-ideal is constructed.
pub const MAX_KMD_PRIME: u32 = 3;

fn check_kmd_prime(p: Prime) -> Result<()> {
    if p.get() > MAX_KMD_PRIME {
        return Err(Error::PrimeOutOfRange {
            p: p.get() as u64,
            max: MAX_KMD_PRIME as u64,
        });
    }
    Ok(())
}

/// A function on `mu_p x mu_p`: coefficient of `X^a Y^b` at index `a + p b`.
pub type FunctionCoeffs = Vec<LambdaPolynomial<BigInt>>;

/// `f = sum_g lambda_g g` with one indeterminate per basis monomial.
pub fn generic_function(p: Prime) -> FunctionCoeffs {
    let n = p.as_usize().pow(2);
    (0..n).map(|g| LambdaPolynomial::var(n, g, BigInt::one())).collect()
}

/// The function `X^a Y^b` with constant coefficients.
pub fn monomial_function(p: Prime, a: usize, b: usize) -> FunctionCoeffs {
    let q = p.as_usize();
    let n = q * q;
    (0..n)
        .map(|g| {
            if g == (a % q) + q * (b % q) {
                LambdaPolynomial::constant(n, BigInt::one())
            } else {
                LambdaPolynomial::zero(n)
            }
        })
        .collect()
}

/// Matrix of multiplication by `f` on the basis `X^c Y^d` (index `c + p d`);
/// column `(c, d)` holds the coordinates of `f X^c Y^d`.
pub fn mult_matrix(p: Prime, f: &FunctionCoeffs) -> Vec<Vec<LambdaPolynomial<BigInt>>> {
    let q = p.as_usize();
    let n = q * q;
    let nvars = f.first().map_or(n, |x| x.nvars());
    let mut m = vec![vec![LambdaPolynomial::zero(nvars); n]; n];
    for (g, coeff) in f.iter().enumerate() {
        let (a, b) = (g % q, g / q);
        for d in 0..q {
            for c in 0..q {
                let row = (a + c) % q + q * ((b + d) % q);
                m[row][c + q * d].add_assign(coeff);
            }
        }
    }
    m
}

/// Multiplication by the generic function.
pub fn generic_mult_matrix(p: Prime) -> Result<Vec<Vec<LambdaPolynomial<BigInt>>>> {
    check_kmd_prime(p)?;
    Ok(mult_matrix(p, &generic_function(p)))
}

fn lift(p: Prime, c: &BigInt) -> AlgebraElement<Integers> {
    AlgebraElement::one(p, Integers, Basis::Group).scale(c)
}

/// `h*(X^a Y^b)` at section `(i, j)`: `(S^i U^j)^a (T^i V^j)^b`.
fn section_monomial(p: Prime, (i, j): (usize, usize), (a, b): (usize, usize)) -> ExponentMatrix {
    let (i, j, a, b) = (i as i64, j as i64, a as i64, b as i64);
    ExponentMatrix::new(p, [[i * a, i * b], [j * a, j * b]])
}

/// Coefficients, ascending in `T`, of `prod_(i,j) (T - f(h(i, j)))`.
pub fn sections_product(p: Prime, f: &FunctionCoeffs) -> Vec<LambdaPolynomial<AlgebraElement<Integers>>> {
    let q = p.as_usize();
    let nvars = f.first().map_or(q * q, |x| x.nvars());
    let one = AlgebraElement::one(p, Integers, Basis::Group);
    let mut acc = vec![LambdaPolynomial::constant(nvars, one)];
    for j in 0..q {
        for i in 0..q {
            let mut value = LambdaPolynomial::zero(nvars);
            for (g, coeff) in f.iter().enumerate() {
                let e = section_monomial(p, (i, j), (g % q, g / q));
                value.add_assign(&coeff.map(|c| {
                    AlgebraElement::monomial(p, Integers, Basis::Group, e).scale(c)
                }));
            }
            // multiply by (T - value)
            let mut next = vec![LambdaPolynomial::zero(nvars); acc.len() + 1];
            for (k, c) in acc.iter().enumerate() {
                next[k + 1].add_assign(c);
                next[k].add_assign(&c.mul(&value).neg());
            }
            acc = next;
        }
    }
    acc
}

/// `C^KMD`, its dual `R^KMD`, or their sum `I^KMD`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KmdSide {
    Times,
    Dual,
    Combined,
}

impl fmt::Display for KmdSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KmdSide::Times => "C^KMD",
            KmdSide::Dual => "R^KMD",
            KmdSide::Combined => "I^KMD",
        })
    }
}

/// An ideal of `Z[S,T,U,V]/(...)` as a lattice in HNF, with its image mod `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct KmdIdeal {
    p: Prime,
    side: KmdSide,
    lattice: IntegerLattice,
    mod_p: SubspaceBasis,
}

impl KmdIdeal {
    fn new(p: Prime, side: KmdSide, lattice: IntegerLattice) -> Result<Self> {
        let mod_p = lattice.reduce_mod(p.get() as u64)?;
        Ok(KmdIdeal {
            p,
            side,
            lattice,
            mod_p,
        })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn side(&self) -> KmdSide {
        self.side
    }

    pub fn lattice(&self) -> &IntegerLattice {
        &self.lattice
    }

    /// Image in `A = F_p[S,T,U,V]/(...)`.
    pub fn mod_p(&self) -> &SubspaceBasis {
        &self.mod_p
    }

    pub fn contains(&self, f: &AlgebraElement<Integers>) -> bool {
        f.basis() == Basis::Group && self.lattice.contains(f.coeffs())
    }

    /// Rank over `Q`, by fraction-free elimination on the HNF rows.
    pub fn rational_rank(&self) -> usize {
        rank_exact(&self.lattice.to_matrix())
    }
}

/// Generators of `C^KMD`: all `lambda`-coefficients of
/// `det(T - f) - prod (T - f(h(i, j)))` for the generic `f`.
pub fn times_generators(p: Prime) -> Result<Vec<AlgebraElement<Integers>>> {
    check_kmd_prime(p)?;
    let m = generic_mult_matrix(p)?;
    let cp = char_poly_divfree(&m, &BigInt::one())?;
    let sp = sections_product(p, &generic_function(p));
    let mut seen = HashSet::new();
    let mut gens = Vec::new();
    for (lhs, rhs) in cp.iter().zip(&sp) {
        let diff = lhs.map(|c| lift(p, c)).sub(rhs);
        for (_, g) in diff.terms() {
            if seen.insert(g.coeffs().to_vec()) {
                gens.push(g.clone());
            }
        }
    }
    Ok(gens)
}

/// `C^KMD`, the ideal cutting out the `×`-homomorphisms.
pub fn build_times_ideal(p: Prime) -> Result<KmdIdeal> {
    let gens = times_generators(p)?;
    KmdIdeal::new(p, KmdSide::Times, ideal_lattice(p, &gens)?)
}

fn iota_lattice(p: Prime, lat: &IntegerLattice) -> IntegerLattice {
    let perm = iota_permutation(p);
    let mut out = IntegerLattice::zero(lat.ambient_dim());
    for row in lat.rows() {
        out.insert(perm.apply_vec(row));
    }
    out
}

/// Apply `iota` to every generator: `C^KMD <-> R^KMD`.
pub fn dualize(ideal: &KmdIdeal) -> Result<KmdIdeal> {
    let side = match ideal.side {
        KmdSide::Times => KmdSide::Dual,
        KmdSide::Dual => KmdSide::Times,
        KmdSide::Combined => {
            return Err(Error::OutOfRange("the combined ideal has no dual side".into()))
        }
    };
    KmdIdeal::new(ideal.p, side, iota_lattice(ideal.p, &ideal.lattice))
}

/// `I^KMD = C^KMD + R^KMD`.
pub fn combine(times: &KmdIdeal, dual: &KmdIdeal) -> Result<KmdIdeal> {
    if times.side != KmdSide::Times || dual.side != KmdSide::Dual {
        return Err(Error::OutOfRange("expected C^KMD and R^KMD".into()));
    }
    if times.p != dual.p {
        return Err(Error::RingMismatch);
    }
    KmdIdeal::new(times.p, KmdSide::Combined, times.lattice.sum(&dual.lattice))
}

/// The full-level ideal over `Z`, in HNF.
pub fn full_ideal_lattice(p: Prime) -> IntegerLattice {
    IntegerLattice::from_matrix(&integer_generator_matrix(p, PairIndexing::Projective))
}

/// The column ideal `C` or the row ideal `R` over `Z`.
pub fn family_lattice(p: Prime, family: Family) -> Result<IntegerLattice> {
    let fam = GeneratorFamily::new(p, Integers);
    let gens = match family {
        Family::Column => fam.columns(),
        Family::Row => fam.rows(),
    };
    ideal_lattice(p, gens)
}

/// All three KMD ideals at one prime.
#[derive(Clone, Debug)]
pub struct KmdIdeals {
    pub times: KmdIdeal,
    pub dual: KmdIdeal,
    pub combined: KmdIdeal,
}

impl KmdIdeals {
    pub fn build(p: Prime) -> Result<Self> {
        let times = build_times_ideal(p)?;
        let dual = dualize(&times)?;
        let combined = combine(&times, &dual)?;
        Ok(KmdIdeals {
            times,
            dual,
            combined,
        })
    }

    pub fn prime(&self) -> Prime {
        self.times.p
    }

    pub fn compare_with_full(&self) -> Result<KmdComparison> {
        let p = self.prime();
        let fam = GeneratorFamily::new(p, Integers);
        let generators_in_kmd: Vec<bool> = fam
            .columns()
            .iter()
            .chain(fam.rows())
            .map(|g| self.combined.contains(g))
            .collect();
        let full = full_ideal_lattice(p);
        let full_mod_p = full.reduce_mod(p.get() as u64)?;
        let columns = family_lattice(p, Family::Column)?;
        let rows = family_lattice(p, Family::Row)?;
        let q = p.get() as u64;
        Ok(KmdComparison {
            p: p.get(),
            generators_in_kmd,
            lattices_equal: full == *self.combined.lattice(),
            rank_full: full.rank(),
            rank_kmd: self.combined.lattice().rank(),
            dim_mod_p_full: full_mod_p.dim(),
            dim_mod_p_kmd: self.combined.mod_p().dim(),
            columns_equal_times: columns == *self.times.lattice(),
            columns_equal_times_mod_p: columns.reduce_mod(q)? == *self.times.mod_p(),
            rows_equal_dual: rows == *self.dual.lattice(),
            rows_equal_dual_mod_p: rows.reduce_mod(q)? == *self.dual.mod_p(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KmdComparison {
    pub p: u32,
    /// Membership of `c_0, ..., c_p, r_0, ..., r_p` in `I^KMD`.
    pub generators_in_kmd: Vec<bool>,
    /// Equality of HNFs of the full-level ideal and `I^KMD`.
    pub lattices_equal: bool,
    pub rank_full: usize,
    pub rank_kmd: usize,
    pub dim_mod_p_full: usize,
    pub dim_mod_p_kmd: usize,
    /// `C = C^KMD` over `Z` (an experiment, not a claim).
    pub columns_equal_times: bool,
    pub columns_equal_times_mod_p: bool,
    pub rows_equal_dual: bool,
    pub rows_equal_dual_mod_p: bool,
}

impl KmdComparison {
    pub fn inclusion_holds(&self) -> bool {
        self.generators_in_kmd.iter().all(|&b| b)
    }
}

/// Build and compare at one prime.
pub fn compare_with_full(p: Prime) -> Result<KmdComparison> {
    KmdIdeals::build(p)?.compare_with_full()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChaiNormanReport {
    pub p: u32,
    /// `p^4 - dim_{F_p}` of the ideal mod `p`.
    pub mod_p_fiber_dim: usize,
    /// `p^4 - rank_Q` of the ideal.
    pub rational_fiber_dim: usize,
}

impl ChaiNormanReport {
    /// The quotient has `p`-torsion, so is not flat over `Z`.
    pub fn not_flat(&self) -> bool {
        self.mod_p_fiber_dim > self.rational_fiber_dim
    }
}

/// Fiber dimensions of `A / C^KMD` over `F_p` and over `Q`.
pub fn chai_norman_check(times: &KmdIdeal) -> Result<ChaiNormanReport> {
    if times.side != KmdSide::Times {
        return Err(Error::OutOfRange("expected C^KMD".into()));
    }
    let n = times.p.ambient_dim();
    Ok(ChaiNormanReport {
        p: times.p.get(),
        mod_p_fiber_dim: n - times.mod_p.dim(),
        rational_fiber_dim: n - times.rational_rank(),
    })
}

/// Which `GL_2(F_p)` action to test stability under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionSide {
    /// `Aut((Z/p)^2)`.
    Left,
    /// `Aut(mu_p x mu_p)`.
    Right,
}

/// Whether the image mod `p` is stable under the group generators.
pub fn is_stable_mod_p(ideal: &KmdIdeal, side: ActionSide) -> Result<bool> {
    for g in GL2Element::generators(ideal.p) {
        let perm = match side {
            ActionSide::Left => left_permutation(&g),
            ActionSide::Right => right_permutation(&g),
        };
        for v in ideal.mod_p.basis_vectors() {
            if !ideal.mod_p.contains(&perm.apply_vec(&v))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
