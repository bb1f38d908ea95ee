//! Column and row generators of the full-level ideal mod `p`, the sums
//! `C(J)`, `R(J)`, `C + R(J)`, `C(J) + R`, their intersections with `cA` and
//! `rA`, and the column-then-row filtration.

mod division;
mod flatness;
pub mod formulas;
mod subsets;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    nonzero_pairs, phi_column, phi_row, shifted_monomial_span, AlgebraElement, CoeffRing,
    ExponentMatrix, Integers, PairIndexing, PrimeField, Var,
};
use crate::error::{Error, Result};
use crate::linalg::{subspace_intersection, Echelon, IntegerMatrix, SubspaceBasis};
use crate::prime::Prime;
use crate::symmetry::iota_permutation;

pub use division::{annihilator_of_quotient, division_lemma_check, maximal_ideal_power, DivisionReport};
pub use flatness::{
    default_aux_primes, flatness_certificate, FlatnessCertificate, RankMethod, MAX_EXACT_PRIME,
    MAX_FLATNESS_PRIME,
};
pub use subsets::{
    all_subsets, random_permutation_pairs, subsets, SubsetPolicy, DEFAULT_SAMPLES, DEFAULT_SEED,
};

/// Columns `c_i` or rows `r_i = iota(c_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Column,
    Row,
}

/// `c_0, ..., c_p` and `r_0, ..., r_p` over a coefficient ring, where
/// `c_i = phi_column(1, i)` for `i < p` and `c_p = phi_column(0, 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorFamily<R: CoeffRing> {
    p: Prime,
    columns: Vec<AlgebraElement<R>>,
    rows: Vec<AlgebraElement<R>>,
}

impl<R: CoeffRing> GeneratorFamily<R> {
    pub fn new(p: Prime, ring: R) -> Self {
        Self::with_indexing(p, ring, PairIndexing::Projective)
    }

    /// With [`PairIndexing::All`] there is one generator per nonzero pair,
    /// so labels no longer match `0..=p`.
    pub fn with_indexing(p: Prime, ring: R, indexing: PairIndexing) -> Self {
        let pairs = nonzero_pairs(p, indexing);
        let columns = pairs
            .iter()
            .map(|&ab| phi_column(p, ring.clone(), ab).expect("pairs are nonzero"))
            .collect();
        let rows = pairs
            .iter()
            .map(|&ab| phi_row(p, ring.clone(), ab).expect("pairs are nonzero"))
            .collect();
        GeneratorFamily { p, columns, rows }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn columns(&self) -> &[AlgebraElement<R>] {
        &self.columns
    }

    pub fn rows(&self) -> &[AlgebraElement<R>] {
        &self.rows
    }

    pub fn get(&self, family: Family, i: usize) -> &AlgebraElement<R> {
        match family {
            Family::Column => &self.columns[i],
            Family::Row => &self.rows[i],
        }
    }
}

/// The distinct products `g * m` over monomials `m`. For a generator that is
/// the sum over a subgroup of `p^2` monomials these have disjoint supports
/// and form a basis of `g A` over any coefficient ring.
fn translates<R: CoeffRing>(g: &AlgebraElement<R>) -> Vec<Vec<R::Elem>> {
    let p = g.prime();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for m in ExponentMatrix::all(p) {
        let t = g.mul_monomial(m).expect("generators are in the group basis");
        let first = t.terms().next().map(|(e, _)| e.index());
        if seen.insert(first) {
            out.push(t.into_coeffs());
        }
    }
    out
}

/// Integer spanning set of the full-level ideal: the monomial translates of
/// all `2(p+1)` generators (or of all generators for every nonzero pair).
pub fn integer_generator_matrix(p: Prime, indexing: PairIndexing) -> IntegerMatrix {
    let fam = GeneratorFamily::with_indexing(p, Integers, indexing);
    let rows: Vec<Vec<BigInt>> = fam
        .columns()
        .iter()
        .chain(fam.rows())
        .flat_map(translates)
        .collect();
    IntegerMatrix::from_rows(p.ambient_dim(), rows).expect("rows have the ambient length")
}

/// A sum of column and row principal ideals, as a subspace of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSubspace {
    basis: SubspaceBasis,
    columns: BTreeSet<usize>,
    rows: BTreeSet<usize>,
    labels: usize,
}

impl IdealSubspace {
    pub fn basis(&self) -> &SubspaceBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn columns(&self) -> &BTreeSet<usize> {
        &self.columns
    }

    pub fn rows(&self) -> &BTreeSet<usize> {
        &self.rows
    }
}

fn set_label(s: &BTreeSet<usize>) -> String {
    let items: Vec<String> = s.iter().map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

impl fmt::Display for IdealSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let full_c = self.columns.len() == self.labels;
        let full_r = self.rows.len() == self.labels;
        match (self.columns.is_empty(), self.rows.is_empty()) {
            (true, true) => f.write_str("0"),
            _ if full_c && full_r => f.write_str("I"),
            (false, true) if full_c => f.write_str("C"),
            (false, true) => write!(f, "C({})", set_label(&self.columns)),
            (true, false) if full_r => f.write_str("R"),
            (true, false) => write!(f, "R({})", set_label(&self.rows)),
            _ if full_c => write!(f, "C+R({})", set_label(&self.rows)),
            _ if full_r => write!(f, "C({})+R", set_label(&self.columns)),
            _ => write!(f, "C({})+R({})", set_label(&self.columns), set_label(&self.rows)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimFormulaReport {
    pub j: Vec<usize>,
    pub k: usize,
    pub dim_c: usize,
    pub dim_r: usize,
    pub dim_c_plus_rj: usize,
    pub dim_cj_plus_r: usize,
    pub expected_single: i64,
    pub expected_mixed: i64,
    /// `iota` maps `C(J)` onto `R(J)` and `C(J) + R` onto `C + R(J)`.
    pub iota_swaps: bool,
}

impl DimFormulaReport {
    pub fn single_ok(&self) -> bool {
        self.dim_c as i64 == self.expected_single && self.dim_r as i64 == self.expected_single
    }

    pub fn mixed_ok(&self) -> bool {
        self.dim_c_plus_rj as i64 == self.expected_mixed
            && self.dim_cj_plus_r as i64 == self.expected_mixed
    }

    pub fn passed(&self) -> bool {
        self.single_ok() && self.mixed_ok() && self.iota_swaps
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionSide {
    /// Exponent `n` of the power of the two-variable maximal ideal.
    pub degree: usize,
    pub dim: usize,
    pub expected_dim: i64,
    pub contained: bool,
}

impl IntersectionSide {
    pub fn passed(&self) -> bool {
        self.contained && self.dim as i64 == self.expected_dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionReport {
    pub j: Vec<usize>,
    pub k: usize,
    /// `C(J) ∩ cA` against `c m_(s,u)^(2p-k-1)`.
    pub column: IntersectionSide,
    /// `(C + R(J)) ∩ rA` against `r m_(s,t)^(p-k)`.
    pub row: IntersectionSide,
}

impl IntersectionReport {
    pub fn passed(&self) -> bool {
        self.column.passed() && self.row.passed()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationReport {
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
    /// `dim gr_i` for `i = 1, ..., 2p+2`.
    pub graded: Vec<usize>,
    pub expected: Vec<i64>,
    pub total: usize,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.graded.iter().zip(&self.expected).all(|(&a, &b)| a as i64 == b)
    }
}

/// Which instance of the induction step is being checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KeyLemmaSide {
    /// `J = C(J')`, adding `c_0`, intersecting with `cA`, `m = 2p - k - 1`.
    Column,
    /// `J = R(J')`, the image of the column instance under `iota`.
    Mirrored,
    /// `J = C + R(J')`, adding `r_0`, intersecting with `rA`, `m = p - k`.
    Row,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KeyLemmaOutcome {
    Holds,
    Fails,
    /// The hypothesis `J ∩ cA ⊆ c m^m` is false, so nothing is claimed.
    Vacuous,
}

/// Level-ideal computations mod `p`, with the principal ideals `c_i A` and
/// `r_i A` precomputed.
#[derive(Clone, Debug)]
pub struct LevelIdeals {
    p: Prime,
    field: PrimeField,
    family: GeneratorFamily<PrimeField>,
    column_translates: Vec<Vec<Vec<u64>>>,
    row_translates: Vec<Vec<Vec<u64>>>,
}

impl LevelIdeals {
    pub fn new(p: Prime) -> Result<Self> {
        let field = PrimeField::new(p.get() as u64)?;
        let family = GeneratorFamily::new(p, field);
        let column_translates = family.columns().iter().map(translates).collect();
        let row_translates = family.rows().iter().map(translates).collect();
        Ok(LevelIdeals {
            p,
            field,
            family,
            column_translates,
            row_translates,
        })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn family(&self) -> &GeneratorFamily<PrimeField> {
        &self.family
    }

    /// Number of generators per family, `p + 1`.
    pub fn labels(&self) -> usize {
        self.p.as_usize() + 1
    }

    fn check_labels(&self, j: &[usize]) -> Result<BTreeSet<usize>> {
        let set: BTreeSet<usize> = j.iter().copied().collect();
        match set.iter().next_back() {
            Some(&i) if i >= self.labels() => {
                Err(Error::OutOfRange(format!("label {i} outside 0..={}", self.p)))
            }
            _ => Ok(set),
        }
    }

    fn echelon(&self) -> Echelon {
        Echelon::new(self.field.modulus(), self.p.ambient_dim()).expect("p is prime")
    }

    fn add_principal(&self, ech: &mut Echelon, family: Family, i: usize) {
        let t = match family {
            Family::Column => &self.column_translates[i],
            Family::Row => &self.row_translates[i],
        };
        for v in t {
            ech.insert(v);
        }
    }

    /// `sum_{i in cols} c_i A + sum_{j in rows} r_j A`.
    pub fn span(&self, cols: &[usize], rows: &[usize]) -> Result<IdealSubspace> {
        let columns = self.check_labels(cols)?;
        let rows = self.check_labels(rows)?;
        let mut ech = self.echelon();
        for &i in &columns {
            self.add_principal(&mut ech, Family::Column, i);
        }
        for &i in &rows {
            self.add_principal(&mut ech, Family::Row, i);
        }
        Ok(IdealSubspace {
            basis: ech.into_basis(),
            columns,
            rows,
            labels: self.labels(),
        })
    }

    fn everything(&self) -> Vec<usize> {
        (0..self.labels()).collect()
    }

    pub fn span_c(&self, j: &[usize]) -> Result<IdealSubspace> {
        self.span(j, &[])
    }

    pub fn span_r(&self, j: &[usize]) -> Result<IdealSubspace> {
        self.span(&[], j)
    }

    pub fn span_i(&self) -> IdealSubspace {
        let all = self.everything();
        self.span(&all, &all).expect("labels are in range")
    }

    /// The ideal generated by `phi_column(a, b)` and `phi_row(a, b)` for
    /// every nonzero pair, not just projective representatives.
    pub fn span_i_all_pairs(&self) -> SubspaceBasis {
        let fam = GeneratorFamily::with_indexing(self.p, self.field, PairIndexing::All);
        let mut ech = self.echelon();
        for g in fam.columns().iter().chain(fam.rows()) {
            for v in translates(g) {
                ech.insert(&v);
            }
        }
        ech.into_basis()
    }

    /// `c_i A` or `r_i A`.
    pub fn principal(&self, family: Family, i: usize) -> Result<SubspaceBasis> {
        let s = match family {
            Family::Column => self.span_c(&[i])?,
            Family::Row => self.span_r(&[i])?,
        };
        Ok(s.basis)
    }

    /// Image of a subspace under `iota`.
    pub fn iota_image(&self, sub: &SubspaceBasis) -> SubspaceBasis {
        let perm = iota_permutation(self.p);
        let mut ech = self.echelon();
        for v in sub.basis_vectors() {
            ech.insert(&perm.apply_vec(&v));
        }
        ech.into_basis()
    }

    pub fn dim_formula_check(&self, j: &[usize]) -> Result<DimFormulaReport> {
        let all = self.everything();
        let c = self.span_c(j)?;
        let r = self.span_r(j)?;
        let c_rj = self.span(&all, j)?;
        let cj_r = self.span(j, &all)?;
        let k = c.columns.len();
        let p = self.p.get();
        let iota_swaps =
            self.iota_image(&c.basis) == r.basis && self.iota_image(&cj_r.basis) == c_rj.basis;
        Ok(DimFormulaReport {
            j: c.columns.iter().copied().collect(),
            k,
            dim_c: c.dim(),
            dim_r: r.dim(),
            dim_c_plus_rj: c_rj.dim(),
            dim_cj_plus_r: cj_r.dim(),
            expected_single: formulas::column_sum_dim(p, k),
            expected_mixed: formulas::mixed_sum_dim(p, k),
            iota_swaps,
        })
    }

    /// `sub ∩ cA` (column) or `sub ∩ rA` (row), with `c = c_p`, `r = r_p`.
    pub fn intersect_with_principal(&self, sub: &SubspaceBasis, which: Family) -> Result<SubspaceBasis> {
        let target = self.principal(which, self.p.as_usize())?;
        subspace_intersection(sub, &target)
    }

    /// `c m_(s,u)^n` or `r m_(s,t)^n`.
    pub fn principal_times_power(&self, which: Family, n: usize) -> Result<SubspaceBasis> {
        let p = self.p.as_usize();
        match which {
            Family::Column => shifted_monomial_span([Var::S, Var::U], n, self.family.get(which, p)),
            Family::Row => shifted_monomial_span([Var::S, Var::T], n, self.family.get(which, p)),
        }
    }

    fn check_low_labels(&self, j: &[usize]) -> Result<BTreeSet<usize>> {
        let set = self.check_labels(j)?;
        if set.contains(&self.p.as_usize()) {
            return Err(Error::OutOfRange(format!("J must lie in 0..{}", self.p)));
        }
        Ok(set)
    }

    /// Both containments for `J ⊆ {0, ..., p-1}`, with intersection dimensions.
    pub fn intersection_check(&self, j: &[usize]) -> Result<IntersectionReport> {
        let set = self.check_low_labels(j)?;
        let j: Vec<usize> = set.into_iter().collect();
        let (p, k) = (self.p.as_usize(), j.len());

        let cj = self.span_c(&j)?;
        let meet = self.intersect_with_principal(cj.basis(), Family::Column)?;
        let degree = 2 * p - k - 1;
        let bound = self.principal_times_power(Family::Column, degree)?;
        let column = IntersectionSide {
            degree,
            dim: meet.dim(),
            expected_dim: formulas::column_intersection_dim(k),
            contained: meet.is_subspace_of(&bound)?,
        };

        let c_rj = self.span(&self.everything(), &j)?;
        let meet = self.intersect_with_principal(c_rj.basis(), Family::Row)?;
        let degree = p - k;
        let bound = self.principal_times_power(Family::Row, degree)?;
        let row = IntersectionSide {
            degree,
            dim: meet.dim(),
            expected_dim: formulas::row_intersection_dim(self.p.get(), k),
            contained: meet.is_subspace_of(&bound)?,
        };
        Ok(IntersectionReport { j, k, column, row })
    }

    /// Graded dimensions of `F_n = sum_{i<n} c_sigma(i) A` for `n <= p+1`
    /// and `F_n = C + sum_{i <= n-p-2} r_tau(i) A` beyond.
    pub fn filtration_dims(&self, sigma: &[usize], tau: &[usize]) -> Result<FiltrationReport> {
        for perm in [sigma, tau] {
            let mut sorted = perm.to_vec();
            sorted.sort_unstable();
            if sorted != self.everything() {
                return Err(Error::OutOfRange(format!(
                    "{perm:?} is not a permutation of 0..={}",
                    self.p
                )));
            }
        }
        let mut ech = self.echelon();
        let mut graded = Vec::with_capacity(2 * self.labels());
        let steps = sigma
            .iter()
            .map(|&i| (Family::Column, i))
            .chain(tau.iter().map(|&i| (Family::Row, i)));
        for (family, i) in steps {
            let before = ech.rank();
            self.add_principal(&mut ech, family, i);
            graded.push(ech.rank() - before);
        }
        let p = self.p.get();
        let expected = (1..=graded.len()).map(|i| formulas::graded_piece_dim(p, i)).collect();
        Ok(FiltrationReport {
            sigma: sigma.to_vec(),
            tau: tau.to_vec(),
            total: ech.rank(),
            graded,
            expected,
        })
    }

    /// One step of the induction behind the intersection bounds: if
    /// `J ∩ X ⊆ x m^m` then `(J + x_0 A) ∩ X ⊆ x m^(m-1)`, for the `J` and
    /// `m` that the induction uses at `J'`.
    pub fn key_lemma_instance_check(&self, j_prime: &[usize], side: KeyLemmaSide) -> Result<KeyLemmaOutcome> {
        let set = self.check_low_labels(j_prime)?;
        if set.contains(&0) {
            return Err(Error::OutOfRange("J' must not contain 0".into()));
        }
        let jp: Vec<usize> = set.into_iter().collect();
        let (p, k) = (self.p.as_usize(), jp.len());
        let all = self.everything();
        let (base, family, m) = match side {
            KeyLemmaSide::Column => (self.span_c(&jp)?, Family::Column, 2 * p - k - 1),
            KeyLemmaSide::Mirrored => (self.span_r(&jp)?, Family::Row, 2 * p - k - 1),
            KeyLemmaSide::Row => (self.span(&all, &jp)?, Family::Row, p - k),
        };
        let hyp = self.intersect_with_principal(base.basis(), family)?;
        if !hyp.is_subspace_of(&self.principal_times_power(family, m)?)? {
            return Ok(KeyLemmaOutcome::Vacuous);
        }
        let mut ech = Echelon::from_basis(base.basis());
        self.add_principal(&mut ech, family, 0);
        let meet = self.intersect_with_principal(&ech.into_basis(), family)?;
        let bound = self.principal_times_power(family, m - 1)?;
        Ok(if meet.is_subspace_of(&bound)? {
            KeyLemmaOutcome::Holds
        } else {
            KeyLemmaOutcome::Fails
        })
    }
}
