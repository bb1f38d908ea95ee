use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::exponent::{ExponentMatrix, Var};
use super::ring::{CoeffRing, Integers, PrimeField, RingKind};
use super::binom;
use crate::error::{Error, Result};
use crate::prime::Prime;

/// Which monomials the coefficient vector refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Powers of `S, T, U, V`.
    Group,
    /// Powers of `s = S-1, t = T-1, u = U-1, v = V-1`, exponents in `[0, p)`.
    Shifted,
}

/// A dense element of `R[S,T,U,V]/(S^p-1, T^p-1, U^p-1, V^p-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<R: CoeffRing> {
    p: Prime,
    ring: R,
    basis: Basis,
    coeffs: Vec<R::Elem>,
}

impl<R: CoeffRing> AlgebraElement<R> {
    pub fn zero(p: Prime, ring: R, basis: Basis) -> Self {
        let coeffs = vec![ring.zero(); p.ambient_dim()];
        AlgebraElement { p, ring, basis, coeffs }
    }

    /// The unit; `S^0 = s^0` so this is valid in either basis.
    pub fn one(p: Prime, ring: R, basis: Basis) -> Self {
        let mut f = Self::zero(p, ring, basis);
        f.coeffs[0] = f.ring.one();
        f
    }

    /// The basis vector for `e` in the requested basis.
    pub fn monomial(p: Prime, ring: R, basis: Basis, e: ExponentMatrix) -> Self {
        let mut f = Self::zero(p, ring, basis);
        f.coeffs[e.index()] = f.ring.one();
        f
    }

    /// `S`, `T`, `U` or `V` in the group basis.
    pub fn variable(p: Prime, ring: R, var: Var) -> Self {
        Self::monomial(p, ring, Basis::Group, ExponentMatrix::of_var(p, var))
    }

    pub fn from_coeffs(p: Prime, ring: R, basis: Basis, coeffs: Vec<R::Elem>) -> Result<Self> {
        if coeffs.len() != p.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: p.ambient_dim(),
                actual: coeffs.len(),
            });
        }
        Ok(AlgebraElement { p, ring, basis, coeffs })
    }

    /// Sum of the given monomials (with multiplicity) in the group basis.
    pub fn sum_of_monomials(p: Prime, ring: R, monos: impl IntoIterator<Item = ExponentMatrix>) -> Self {
        let mut f = Self::zero(p, ring, Basis::Group);
        let one = f.ring.one();
        for e in monos {
            let c = &mut f.coeffs[e.index()];
            *c = f.ring.add(c, &one);
        }
        f
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    pub fn coeff(&self, e: ExponentMatrix) -> &R::Elem {
        &self.coeffs[e.index()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.ring.is_zero(c))
    }

    /// Nonzero terms in linear-index order.
    pub fn terms(&self) -> impl Iterator<Item = (ExponentMatrix, &R::Elem)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(|(i, c)| (ExponentMatrix::from_index(self.p, i), c))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.basis != other.basis {
            return Err(Error::BasisMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(AlgebraElement { coeffs, ..self.clone_shell() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Ok(AlgebraElement { coeffs, ..self.clone_shell() })
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.neg(a)).collect();
        AlgebraElement { coeffs, ..self.clone_shell() }
    }

    pub fn scale(&self, k: &R::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|a| self.ring.mul(a, k)).collect();
        AlgebraElement { coeffs, ..self.clone_shell() }
    }

    fn clone_shell(&self) -> Self {
        AlgebraElement {
            p: self.p,
            ring: self.ring.clone(),
            basis: self.basis,
            coeffs: Vec::new(),
        }
    }

    /// Product in the group basis: exponents add mod `p`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.basis != Basis::Group {
            return Err(Error::BasisMismatch);
        }
        let mut out = Self::zero(self.p, self.ring.clone(), Basis::Group);
        let rhs: Vec<_> = other.terms().collect();
        for (e, a) in self.terms() {
            for (g, b) in &rhs {
                let c = &mut out.coeffs[e.add(g).index()];
                *c = self.ring.add(c, &self.ring.mul(a, b));
            }
        }
        Ok(out)
    }

    /// `self * m` for a monomial `m`; a permutation of coordinates.
    pub fn mul_monomial(&self, m: ExponentMatrix) -> Result<Self> {
        if self.basis != Basis::Group {
            return Err(Error::BasisMismatch);
        }
        let mut out = Self::zero(self.p, self.ring.clone(), Basis::Group);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[ExponentMatrix::from_index(self.p, i).add(&m).index()] = c.clone();
        }
        Ok(out)
    }

    /// Reindex coordinates by an exponent-matrix map. The caller guarantees
    /// `map` is a bijection.
    pub fn permute(&self, map: impl Fn(ExponentMatrix) -> ExponentMatrix) -> Self {
        let mut out = Self::zero(self.p, self.ring.clone(), self.basis);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[map(ExponentMatrix::from_index(self.p, i)).index()] = c.clone();
        }
        out
    }

    /// Rewrite in the shifted basis. A no-op on shifted input.
    pub fn to_shifted(&self) -> Self {
        match self.basis {
            Basis::Shifted => self.clone(),
            Basis::Group => {
                // coefficient of s^k in S^n is binom(n, k)
                let m = axis_matrix(self.p, |k, n| binom(n as i64, k as u64));
                self.transformed(&m, Basis::Shifted)
            }
        }
    }

    /// Rewrite in the group basis. A no-op on group-basis input.
    pub fn from_shifted(&self) -> Self {
        match self.basis {
            Basis::Group => self.clone(),
            Basis::Shifted => {
                // s^a = sum_n binom(a, n) (-1)^(a-n) S^n
                let m = axis_matrix(self.p, |n, a| {
                    let b = binom(a as i64, n as u64);
                    if (a + n) % 2 == 1 {
                        -b
                    } else {
                        b
                    }
                });
                self.transformed(&m, Basis::Group)
            }
        }
    }

    /// Apply the same `p×p` matrix (`m[out][in]`) along each of the four axes.
    fn transformed(&self, m: &[Vec<i64>], basis: Basis) -> Self {
        let q = self.p.as_usize();
        let ring = &self.ring;
        let m: Vec<Vec<R::Elem>> = m
            .iter()
            .map(|row| row.iter().map(|&x| ring.from_i64(x)).collect())
            .collect();
        let mut cur = self.coeffs.clone();
        let mut line = Vec::with_capacity(q);
        for axis in 0..4 {
            let stride = q.pow(axis);
            for base in 0..cur.len() {
                if (base / stride) % q != 0 {
                    continue;
                }
                line.clear();
                line.extend((0..q).map(|t| cur[base + t * stride].clone()));
                for (o, row) in m.iter().enumerate() {
                    let mut acc = ring.zero();
                    for (x, c) in row.iter().zip(&line) {
                        if !ring.is_zero(x) && !ring.is_zero(c) {
                            acc = ring.add(&acc, &ring.mul(x, c));
                        }
                    }
                    cur[base + o * stride] = acc;
                }
            }
        }
        AlgebraElement {
            p: self.p,
            ring: self.ring.clone(),
            basis,
            coeffs: cur,
        }
    }

    pub fn to_json(&self) -> Value {
        let json = ElementJson {
            p: self.p.get(),
            ring: self.ring.kind(),
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|c| self.ring.elem_to_json(c)).collect(),
        };
        serde_json::to_value(json).expect("element JSON is always serializable")
    }

    /// Parse the `{p, ring, basis, coeffs}` form. The ring named in the
    /// document must match `ring`.
    pub fn from_json(v: &Value, ring: R) -> Result<Self> {
        let json: ElementJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if json.ring != ring.kind() {
            return Err(Error::RingMismatch);
        }
        let p = Prime::new(json.p)?;
        let coeffs = json
            .coeffs
            .iter()
            .map(|c| ring.elem_from_json(c))
            .collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(p, ring, json.basis, coeffs)
    }
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    p: u32,
    ring: RingKind,
    basis: Basis,
    coeffs: Vec<Value>,
}

fn axis_matrix(p: Prime, f: impl Fn(usize, usize) -> i64) -> Vec<Vec<i64>> {
    let q = p.as_usize();
    (0..q).map(|o| (0..q).map(|i| f(o, i)).collect()).collect()
}

impl AlgebraElement<Integers> {
    /// Image in `F_q` coefficients.
    pub fn reduce_mod(&self, q: u64) -> Result<AlgebraElement<PrimeField>> {
        let ring = PrimeField::new(q)?;
        let m = BigInt::from(q);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let r = ((c % &m) + &m) % &m;
                u64::try_from(r).expect("residue below modulus")
            })
            .collect();
        AlgebraElement::from_coeffs(self.p, ring, self.basis, coeffs)
    }
}

impl AlgebraElement<PrimeField> {
    pub fn modulus(&self) -> u64 {
        self.ring.modulus()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{phi, Rationals};
    use proptest::prelude::*;

    fn pr(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn random_element(p: Prime, seed: &[i64]) -> AlgebraElement<Integers> {
        let coeffs = (0..p.ambient_dim())
            .map(|i| BigInt::from(seed[i % seed.len()] * ((i as i64 % 3) - 1)))
            .collect();
        AlgebraElement::from_coeffs(p, Integers, Basis::Group, coeffs).unwrap()
    }

    #[test]
    fn unit_and_relation() {
        for p in [2, 3, 5] {
            let p = pr(p);
            let s = AlgebraElement::variable(p, Integers, Var::S);
            let one = AlgebraElement::one(p, Integers, Basis::Group);
            assert_eq!(s.mul(&one).unwrap(), s);
            let top = AlgebraElement::monomial(
                p,
                Integers,
                Basis::Group,
                ExponentMatrix::new(p, [[p.get() as i64 - 1, 0], [0, 0]]),
            );
            assert_eq!(top.mul(&s).unwrap(), one);
        }
    }

    #[test]
    fn cyclotomic_sum_squares_to_p_times_itself() {
        // (sum_i S^i)(sum_j S^j) = sum_k #{(i,j): i+j=k} S^k = p sum_k S^k
        for p in [2, 3, 5, 7] {
            let p = pr(p);
            let s = ExponentMatrix::of_var(p, Var::S);
            let phi_s = phi(p, Integers, s);
            let sq = phi_s.mul(&phi_s).unwrap();
            assert_eq!(sq, phi_s.scale(&BigInt::from(p.get())));
        }
    }

    #[test]
    fn cyclotomic_sum_annihilates_generator_minus_one() {
        for p in [2, 3, 5] {
            let p = pr(p);
            let one = AlgebraElement::one(p, Integers, Basis::Group);
            for a in 0..p.get() as i64 {
                for b in 0..p.get() as i64 {
                    if (a, b) == (0, 0) {
                        continue;
                    }
                    for top in [true, false] {
                        let e = if top {
                            ExponentMatrix::new(p, [[a, b], [0, 0]])
                        } else {
                            ExponentMatrix::new(p, [[0, 0], [a, b]])
                        };
                        let g = AlgebraElement::monomial(p, Integers, Basis::Group, e)
                            .sub(&one)
                            .unwrap();
                        assert!(phi(p, Integers, e).mul(&g).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn shifted_basics() {
        let p = pr(3);
        let one = AlgebraElement::one(p, Integers, Basis::Group);
        assert_eq!(one.to_shifted(), AlgebraElement::one(p, Integers, Basis::Shifted));
        let s = AlgebraElement::monomial(p, Integers, Basis::Shifted, ExponentMatrix::of_var(p, Var::S));
        let expect = AlgebraElement::variable(p, Integers, Var::S).sub(&one).unwrap();
        assert_eq!(s.from_shifted(), expect);
    }

    #[test]
    fn basis_change_is_inverse_on_every_basis_vector() {
        for p in [2, 3] {
            let p = pr(p);
            for e in ExponentMatrix::all(p) {
                let g = AlgebraElement::monomial(p, Integers, Basis::Group, e);
                assert_eq!(g.to_shifted().from_shifted(), g);
                let s = AlgebraElement::monomial(p, Integers, Basis::Shifted, e);
                assert_eq!(s.from_shifted().to_shifted(), s);
            }
        }
    }

    #[test]
    fn shifted_variables_are_nilpotent_mod_p() {
        // s^p = (S-1)^p = S^p - 1 = 0 mod p; compute via repeated products
        for p in [2, 3, 5] {
            let p = pr(p);
            let f = PrimeField::new(p.get() as u64).unwrap();
            for var in Var::ALL {
                let x = AlgebraElement::variable(p, f, var)
                    .sub(&AlgebraElement::one(p, f, Basis::Group))
                    .unwrap();
                let mut acc = AlgebraElement::one(p, f, Basis::Group);
                for _ in 0..p.get() - 1 {
                    acc = acc.mul(&x).unwrap();
                }
                assert!(!acc.is_zero());
                assert!(acc.mul(&x).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn shifted_conversion_over_rationals() {
        let p = pr(2);
        let e = ExponentMatrix::new(p, [[1, 1], [0, 1]]);
        let g = AlgebraElement::monomial(p, Rationals, Basis::Group, e);
        assert_eq!(g.to_shifted().from_shifted(), g);
    }

    #[test]
    fn shifted_multiplication_is_refused() {
        let p = pr(2);
        let s = AlgebraElement::one(p, Integers, Basis::Shifted);
        assert_eq!(s.mul(&s), Err(Error::BasisMismatch));
        let g = AlgebraElement::one(p, Integers, Basis::Group);
        assert_eq!(s.add(&g), Err(Error::BasisMismatch));
    }

    #[test]
    fn json_round_trip() {
        let p = pr(2);
        let f = random_element(p, &[3, -7, 0, 11]);
        let v = f.to_json();
        assert_eq!(v["ring"], "Z");
        assert_eq!(v["basis"], "group");
        assert_eq!(AlgebraElement::from_json(&v, Integers).unwrap(), f);
        let g = f.reduce_mod(5).unwrap();
        let back = AlgebraElement::from_json(&g.to_json(), PrimeField::new(5).unwrap()).unwrap();
        assert_eq!(back, g);
        assert!(AlgebraElement::from_json(&v, Rationals).is_err());
    }

    proptest! {
        #[test]
        fn ring_axioms(a in prop::collection::vec(-3i64..4, 1..6),
                       b in prop::collection::vec(-3i64..4, 1..6),
                       c in prop::collection::vec(-3i64..4, 1..6),
                       p in prop::sample::select(vec![2u32, 3, 5])) {
            let p = pr(p);
            let (f, g, h) = (random_element(p, &a), random_element(p, &b), random_element(p, &c));
            prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
            prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
            let lhs = f.mul(&g.add(&h).unwrap()).unwrap();
            let rhs = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn basis_change_round_trips(a in prop::collection::vec(-5i64..6, 1..8),
                                    p in prop::sample::select(vec![2u32, 3, 5])) {
            let f = random_element(pr(p), &a);
            prop_assert_eq!(f.to_shifted().from_shifted(), f);
        }
    }
}
