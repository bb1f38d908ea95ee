//! The two commuting `GL_2(F_p)` actions on the group algebra and the
//! duality involution.
//!
//! Monomials are exponent matrices `E = [[i, j], [k, l]]`. Write a monomial
//! as `X^E`; then `Aut((Z/p)^2)` acts on the left by `E -> E g^T` and
//! `Aut(mu_p x mu_p)` acts on the right by `E -> d^T E`. For
//! `g = [[1,0],[1,1]]` the left action is `S -> ST, T -> T, U -> UV, V -> V`.
//! The involution `iota` transposes `E`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    ideal_span, mat_mul, phi_column, phi_row, AlgebraElement, Basis, CoeffRing, ExponentMatrix,
    PrimeField, Var,
};
use crate::error::{Error, Result};
use crate::linalg::{inv_mod, SubspaceBasis};
use crate::prime::Prime;

/// Largest prime for which the group is enumerated.
pub const MAX_ENUMERATION_PRIME: u32 = 13;

/// An invertible 2×2 matrix over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GL2Element {
    p: Prime,
    m: [[u32; 2]; 2],
}

impl GL2Element {
    pub fn new(p: Prime, m: [[i64; 2]; 2]) -> Result<Self> {
        let m = ExponentMatrix::new(p, m).entries();
        let g = GL2Element { p, m };
        if g.det() == 0 {
            return Err(Error::Singular(p.get()));
        }
        Ok(g)
    }

    pub fn identity(p: Prime) -> Self {
        GL2Element { p, m: [[1, 0], [0, 1]] }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn entries(&self) -> [[u32; 2]; 2] {
        self.m
    }

    pub fn det(&self) -> u32 {
        let q = self.p.get() as u64;
        let [[a, b], [c, d]] = self.m.map(|r| r.map(u64::from));
        ((a * d + q * q - b * c) % q) as u32
    }

    pub fn mul(&self, other: &GL2Element) -> GL2Element {
        GL2Element {
            p: self.p,
            m: mat_mul(&self.m, &other.m, self.p.get()),
        }
    }

    pub fn transpose(&self) -> GL2Element {
        let [[a, b], [c, d]] = self.m;
        GL2Element { p: self.p, m: [[a, c], [b, d]] }
    }

    pub fn inverse(&self) -> GL2Element {
        let q = self.p.get();
        let inv = inv_mod(self.det() as u64, q as u64);
        let [[a, b], [c, d]] = self.m.map(|r| r.map(u64::from));
        let s = |x: u64| (x % q as u64 * inv % q as u64) as u32;
        let n = |x: u64| s(q as u64 - x % q as u64);
        GL2Element {
            p: self.p,
            m: [[s(d), n(b)], [n(c), s(a)]],
        }
    }

    /// `self * (a, b)^T`.
    pub fn apply(&self, (a, b): (i64, i64)) -> (i64, i64) {
        let q = self.p.get() as i64;
        let m = self.m.map(|r| r.map(i64::from));
        (
            (m[0][0] * a + m[0][1] * b).rem_euclid(q),
            (m[1][0] * a + m[1][1] * b).rem_euclid(q),
        )
    }

    /// `[[1, 1], [0, 1]]`.
    pub fn upper_unipotent(p: Prime) -> Self {
        GL2Element { p, m: [[1, 1 % p.get()], [0, 1]] }
    }

    /// `[[1, 0], [1, 1]]`.
    pub fn lower_unipotent(p: Prime) -> Self {
        GL2Element { p, m: [[1, 0], [1 % p.get(), 1]] }
    }

    /// Two unipotents and `diag(g, 1)` for a primitive root `g`; these
    /// generate the whole group.
    pub fn generators(p: Prime) -> Vec<GL2Element> {
        let g = primitive_root(p);
        vec![
            GL2Element::upper_unipotent(p),
            GL2Element::lower_unipotent(p),
            GL2Element { p, m: [[g, 0], [0, 1]] },
        ]
    }
}

impl fmt::Display for GL2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.m;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

fn primitive_root(p: Prime) -> u32 {
    let q = p.get() as u64;
    (1..q)
        .find(|&g| {
            let mut x = 1u64;
            (1..q).all(|k| {
                x = x * g % q;
                x != 1 || k == q - 1
            })
        })
        .expect("every prime has a primitive root") as u32
}

/// All of `GL_2(F_p)`, in lexicographic order of entries.
pub fn enumerate_gl2(p: Prime) -> Result<Vec<GL2Element>> {
    if p.get() > MAX_ENUMERATION_PRIME {
        return Err(Error::PrimeOutOfRange {
            p: p.get() as u64,
            max: MAX_ENUMERATION_PRIME as u64,
        });
    }
    let q = p.get() as i64;
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    if let Ok(g) = GL2Element::new(p, [[a, b], [c, d]]) {
                        out.push(g);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A permutation of the monomial basis, stored as the image of each linear
/// index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialPermutation {
    p: Prime,
    map: Vec<u32>,
}

impl MonomialPermutation {
    pub fn from_fn(p: Prime, f: impl Fn(ExponentMatrix) -> ExponentMatrix) -> Self {
        let map = ExponentMatrix::all(p).map(|e| f(e).index() as u32).collect();
        MonomialPermutation { p, map }
    }

    pub fn identity(p: Prime) -> Self {
        MonomialPermutation {
            p,
            map: (0..p.ambient_dim() as u32).collect(),
        }
    }

    pub fn image(&self, idx: usize) -> usize {
        self.map[idx] as usize
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.map
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &MonomialPermutation) -> MonomialPermutation {
        MonomialPermutation {
            p: self.p,
            map: other.map.iter().map(|&i| self.map[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> MonomialPermutation {
        let mut map = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j as usize] = i as u32;
        }
        MonomialPermutation { p: self.p, map }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.map.len()];
        self.map
            .iter()
            .all(|&j| (j as usize) < seen.len() && !std::mem::replace(&mut seen[j as usize], true))
    }

    /// Push coordinates forward: the coefficient at `i` moves to `image(i)`.
    pub fn apply_vec<T: Clone>(&self, v: &[T]) -> Vec<T> {
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.map[i] as usize] = x.clone();
        }
        out
    }

    pub fn apply<R: CoeffRing>(&self, f: &AlgebraElement<R>) -> Result<AlgebraElement<R>> {
        if f.basis() != Basis::Group {
            return Err(Error::BasisMismatch);
        }
        if f.prime() != self.p {
            return Err(Error::RingMismatch);
        }
        AlgebraElement::from_coeffs(self.p, f.ring().clone(), Basis::Group, self.apply_vec(f.coeffs()))
    }
}

/// Permutation realizing `g` in `Aut((Z/p)^2)`: `E -> E g^T`.
pub fn left_permutation(g: &GL2Element) -> MonomialPermutation {
    let gt = g.transpose().m;
    MonomialPermutation::from_fn(g.p, |e| e.mul_right(&gt))
}

/// Permutation realizing `d` in `Aut(mu_p x mu_p)`: `E -> d^T E`.
pub fn right_permutation(d: &GL2Element) -> MonomialPermutation {
    let dt = d.transpose().m;
    MonomialPermutation::from_fn(d.p, |e| e.mul_left(&dt))
}

pub fn iota_permutation(p: Prime) -> MonomialPermutation {
    MonomialPermutation::from_fn(p, |e| e.transpose())
}

/// `g . f` for `g` in `Aut((Z/p)^2)`.
pub fn act_left<R: CoeffRing>(g: &GL2Element, f: &AlgebraElement<R>) -> Result<AlgebraElement<R>> {
    left_permutation(g).apply(f)
}

/// `f . d` for `d` in `Aut(mu_p x mu_p)`.
pub fn act_right<R: CoeffRing>(d: &GL2Element, f: &AlgebraElement<R>) -> Result<AlgebraElement<R>> {
    right_permutation(d).apply(f)
}

/// Fixes `S` and `V`, swaps `T` and `U`.
pub fn iota<R: CoeffRing>(f: &AlgebraElement<R>) -> Result<AlgebraElement<R>> {
    iota_permutation(f.prime()).apply(f)
}

/// The representative of `(a, b)` in `(1,0), (1,1), ..., (1,p-1), (0,1)`.
pub fn p1_representative(p: Prime, (a, b): (i64, i64)) -> Result<(i64, i64)> {
    let q = p.get() as i64;
    let (a, b) = (a.rem_euclid(q), b.rem_euclid(q));
    match (a, b) {
        (0, 0) => Err(Error::ZeroPair),
        (0, _) => Ok((0, 1)),
        _ => {
            let inv = inv_mod(a as u64, q as u64) as i64;
            Ok((1, b * inv % q))
        }
    }
}

/// Index in `0..=p` of a projective point: `(1, i) -> i`, `(0, 1) -> p`.
pub fn p1_label(p: Prime, pair: (i64, i64)) -> Result<usize> {
    let (a, b) = p1_representative(p, pair)?;
    Ok(if a == 0 { p.as_usize() } else { b as usize })
}

fn label_pair(p: Prime, label: usize) -> (i64, i64) {
    if label == p.as_usize() {
        (0, 1)
    } else {
        (1, label as i64)
    }
}

/// How `g` in `Aut((Z/p)^2)` permutes the column labels: `c_i -> c_{perm[i]}`.
pub fn column_label_action(g: &GL2Element) -> Vec<usize> {
    let p = g.p;
    (0..=p.as_usize())
        .map(|i| p1_label(p, g.apply(label_pair(p, i))).expect("g is invertible"))
        .collect()
}

/// How `d` in `Aut(mu_p x mu_p)` permutes the row labels: `r_i -> r_{perm[i]}`.
pub fn row_label_action(d: &GL2Element) -> Vec<usize> {
    let p = d.p;
    let dt = d.transpose();
    (0..=p.as_usize())
        .map(|i| p1_label(p, dt.apply(label_pair(p, i))).expect("d is invertible"))
        .collect()
}

/// Orbit of the ordered triple `(0, 1, 2)` under the group generated by
/// `perms` acting on `0..n`.
pub fn triple_orbit_size(perms: &[Vec<usize>], n: usize) -> usize {
    if n < 3 {
        return 0;
    }
    let start = (0, 1, 2);
    let mut seen = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((a, b, c)) = queue.pop_front() {
        for g in perms {
            let t = (g[a], g[b], g[c]);
            if seen.insert(t) {
                queue.push_back(t);
            }
        }
    }
    seen.len()
}

/// Whether the generated group acts triply transitively on `0..n`.
pub fn is_triply_transitive(perms: &[Vec<usize>], n: usize) -> bool {
    n >= 3 && triple_orbit_size(perms, n) == n * (n - 1) * (n - 2)
}

/// Outcome of the symmetry checks at one prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub p: u32,
    /// Number of group elements the pairwise checks ran over.
    pub elements_tested: usize,
    pub exhaustive: bool,
    pub left_is_action: bool,
    pub right_is_action: bool,
    pub ring_automorphisms: bool,
    pub actions_commute: bool,
    pub iota_intertwines: bool,
    pub right_stabilizes_columns: bool,
    pub left_stabilizes_rows: bool,
    pub unipotent_cycles_columns: bool,
    pub unipotent_fixes_last_column: bool,
    pub columns_triply_transitive: bool,
    pub rows_triply_transitive: bool,
}

impl SymmetryReport {
    /// Named outcomes, in a fixed order.
    pub fn checks(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("left_is_action", self.left_is_action),
            ("right_is_action", self.right_is_action),
            ("ring_automorphisms", self.ring_automorphisms),
            ("actions_commute", self.actions_commute),
            ("iota_intertwines", self.iota_intertwines),
            ("right_stabilizes_columns", self.right_stabilizes_columns),
            ("left_stabilizes_rows", self.left_stabilizes_rows),
            ("unipotent_cycles_columns", self.unipotent_cycles_columns),
            ("unipotent_fixes_last_column", self.unipotent_fixes_last_column),
            ("columns_triply_transitive", self.columns_triply_transitive),
            ("rows_triply_transitive", self.rows_triply_transitive),
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|&(_, ok)| ok)
    }
}

/// Largest prime for which [`symmetry_report`] uses every group element.
pub const MAX_EXHAUSTIVE_SYMMETRY_PRIME: u32 = 3;

/// Number of group elements used above [`MAX_EXHAUSTIVE_SYMMETRY_PRIME`].
pub const SYMMETRY_SAMPLE_SIZE: usize = 24;

/// A bijection of monomials that is additive on exponents.
fn is_ring_automorphism(perm: &MonomialPermutation) -> bool {
    let p = perm.p;
    let zero = ExponentMatrix::one(p).index();
    if !perm.is_bijective() || perm.image(zero) != zero {
        return false;
    }
    let vars = [Var::S, Var::T, Var::U, Var::V].map(|v| ExponentMatrix::of_var(p, v));
    ExponentMatrix::all(p).into_iter().all(|e| {
        vars.iter().all(|x| {
            let lhs = perm.image(e.add(x).index());
            let rhs = ExponentMatrix::from_index(p, perm.image(e.index()))
                .add(&ExponentMatrix::from_index(p, perm.image(x.index())));
            lhs == rhs.index()
        })
    })
}

fn stabilizes(perm: &MonomialPermutation, sub: &SubspaceBasis) -> bool {
    sub.basis_vectors()
        .all(|v| sub.contains(&perm.apply_vec(&v)).unwrap_or(false))
}

/// Checks both actions, `iota`, the stabilizers of the principal ideals and
/// triple transitivity on labels. For `p <= 3` all of `GL_2(F_p)` is used,
/// otherwise an evenly spaced sample of it.
pub fn symmetry_report(p: Prime) -> Result<SymmetryReport> {
    let all = enumerate_gl2(p)?;
    let exhaustive = p.get() <= MAX_EXHAUSTIVE_SYMMETRY_PRIME;
    let elems: Vec<GL2Element> = if exhaustive {
        all
    } else {
        let step = all.len().div_ceil(SYMMETRY_SAMPLE_SIZE);
        let mut v: Vec<_> = all.into_iter().step_by(step).collect();
        for g in GL2Element::generators(p) {
            if !v.contains(&g) {
                v.push(g);
            }
        }
        v
    };
    let lefts: Vec<_> = elems.iter().map(left_permutation).collect();
    let rights: Vec<_> = elems.iter().map(right_permutation).collect();
    let iota_p = iota_permutation(p);

    let mut left_is_action = true;
    let mut right_is_action = true;
    let mut actions_commute = true;
    for (a, (la, ra)) in elems.iter().zip(lefts.iter().zip(&rights)) {
        for (b, (lb, rb)) in elems.iter().zip(lefts.iter().zip(&rights)) {
            let ab = a.mul(b);
            left_is_action &= left_permutation(&ab) == la.compose(lb);
            right_is_action &= right_permutation(&ab) == rb.compose(ra);
            actions_commute &= la.compose(rb) == rb.compose(la);
        }
    }
    let ring_automorphisms = lefts
        .iter()
        .chain(&rights)
        .chain([&iota_p])
        .all(is_ring_automorphism);
    let iota_intertwines = elems.iter().zip(&lefts).all(|(g, lg)| {
        iota_p.compose(lg) == right_permutation(&g.transpose()).compose(&iota_p)
    });

    let field = PrimeField::new(p.get() as u64)?;
    let q = p.get() as u64;
    let pairs: Vec<(i64, i64)> = (0..p.get() as i64).map(|i| (1, i)).chain([(0, 1)]).collect();
    let mut cols = Vec::new();
    let mut rows = Vec::new();
    let mut col_elems = Vec::new();
    for &pair in &pairs {
        let c = phi_column(p, field, pair)?;
        cols.push(ideal_span(p, q, std::slice::from_ref(&c))?);
        col_elems.push(c);
        rows.push(ideal_span(p, q, &[phi_row(p, field, pair)?])?);
    }
    let right_stabilizes_columns = rights.iter().all(|r| cols.iter().all(|c| stabilizes(r, c)));
    let left_stabilizes_rows = lefts.iter().all(|l| rows.iter().all(|s| stabilizes(l, s)));

    let lower = GL2Element::lower_unipotent(p);
    let n = p.as_usize();
    let mut unipotent_cycles_columns = true;
    for i in 0..n {
        unipotent_cycles_columns &= act_left(&lower, &col_elems[i])? == col_elems[(i + 1) % n];
    }
    let lower_perm = left_permutation(&lower);
    let unipotent_fixes_last_column = cols[n].basis_vectors().all(|v| lower_perm.apply_vec(&v) == v);

    let gens = GL2Element::generators(p);
    let col_labels: Vec<_> = gens.iter().map(column_label_action).collect();
    let row_labels: Vec<_> = gens.iter().map(row_label_action).collect();
    Ok(SymmetryReport {
        p: p.get(),
        elements_tested: elems.len(),
        exhaustive,
        left_is_action,
        right_is_action,
        ring_automorphisms,
        actions_commute,
        iota_intertwines,
        right_stabilizes_columns,
        left_stabilizes_rows,
        unipotent_cycles_columns,
        unipotent_fixes_last_column,
        columns_triply_transitive: is_triply_transitive(&col_labels, n + 1),
        rows_triply_transitive: is_triply_transitive(&row_labels, n + 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Integers;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn pr(p: u32) -> Prime {
        Prime::new(p).unwrap()
    }

    fn element(p: Prime, seed: &[i64]) -> AlgebraElement<Integers> {
        let coeffs = (0..p.ambient_dim())
            .map(|i| BigInt::from(seed[(i * 7 + 3) % seed.len()] - (i % 2) as i64))
            .collect();
        AlgebraElement::from_coeffs(p, Integers, Basis::Group, coeffs).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(enumerate_gl2(pr(2)).unwrap().len(), 6);
        assert_eq!(enumerate_gl2(pr(3)).unwrap().len(), 48);
        for p in [5, 7, 11, 13] {
            let q = p as usize;
            assert_eq!(enumerate_gl2(pr(p)).unwrap().len(), (q * q - 1) * (q * q - q));
        }
        assert!(enumerate_gl2(pr(17)).is_err());
    }

    #[test]
    fn group_contains_identity_and_inverses() {
        let p = pr(3);
        let all = enumerate_gl2(p).unwrap();
        assert!(all.contains(&GL2Element::identity(p)));
        for g in &all {
            let h = g.inverse();
            assert!(all.contains(&h));
            assert_eq!(g.mul(&h), GL2Element::identity(p));
        }
        assert_eq!(GL2Element::new(p, [[1, 2], [2, 4]]).unwrap_err(), Error::Singular(3));
    }

    #[test]
    fn generators_generate() {
        for p in [2, 3, 5] {
            let p = pr(p);
            let gens = GL2Element::generators(p);
            let mut seen = HashSet::from([GL2Element::identity(p)]);
            let mut queue = vec![GL2Element::identity(p)];
            while let Some(x) = queue.pop() {
                for g in &gens {
                    let y = x.mul(g);
                    if seen.insert(y) {
                        queue.push(y);
                    }
                }
            }
            assert_eq!(seen.len(), enumerate_gl2(p).unwrap().len());
        }
    }

    #[test]
    fn anchor_for_the_lower_unipotent() {
        // S -> ST, T -> T, U -> UV, V -> V
        let p = pr(5);
        let g = GL2Element::lower_unipotent(p);
        let image = |v: Var| {
            let x = AlgebraElement::variable(p, Integers, v);
            act_left(&g, &x).unwrap()
        };
        let mono = |e| AlgebraElement::monomial(p, Integers, Basis::Group, ExponentMatrix::new(p, e));
        assert_eq!(image(Var::S), mono([[1, 1], [0, 0]]));
        assert_eq!(image(Var::T), mono([[0, 1], [0, 0]]));
        assert_eq!(image(Var::U), mono([[0, 0], [1, 1]]));
        assert_eq!(image(Var::V), mono([[0, 0], [0, 1]]));
        let perm = left_permutation(&g);
        for e in ExponentMatrix::all(p) {
            let [[i, j], [k, l]] = e.entries().map(|r| r.map(i64::from));
            assert_eq!(perm.image(e.index()), ExponentMatrix::new(p, [[i, i + j], [k, k + l]]).index());
        }
    }

    #[test]
    fn iota_swaps_t_and_u() {
        let p = pr(3);
        let s = AlgebraElement::variable(p, Integers, Var::S);
        let t = AlgebraElement::variable(p, Integers, Var::T);
        let u = AlgebraElement::variable(p, Integers, Var::U);
        assert_eq!(iota(&s).unwrap(), s);
        assert_eq!(iota(&t).unwrap(), u);
        let f = element(p, &[1, -2, 5, 0, 3]);
        assert_eq!(iota(&iota(&f).unwrap()).unwrap(), f);
    }

    #[test]
    fn actions_are_group_actions_and_commute() {
        for p in [2, 3] {
            let p = pr(p);
            let all = enumerate_gl2(p).unwrap();
            for a in &all {
                let (la, ra) = (left_permutation(a), right_permutation(a));
                assert!(la.is_bijective() && ra.is_bijective());
                for b in &all {
                    let (lb, rb) = (left_permutation(b), right_permutation(b));
                    let ab = a.mul(b);
                    assert_eq!(left_permutation(&ab), la.compose(&lb));
                    // right action: f.(ab) = (f.a).b
                    assert_eq!(right_permutation(&ab), rb.compose(&ra));
                    assert_eq!(la.compose(&rb), rb.compose(&la));
                }
            }
        }
    }

    #[test]
    fn actions_commute_sampled_at_five() {
        let p = pr(5);
        let all = enumerate_gl2(p).unwrap();
        for (i, a) in all.iter().enumerate().step_by(37) {
            let b = &all[(i * 11 + 5) % all.len()];
            let (la, rb) = (left_permutation(a), right_permutation(b));
            assert_eq!(la.compose(&rb), rb.compose(&la));
        }
    }

    #[test]
    fn iota_intertwines_the_two_actions() {
        for p in [2, 3] {
            let p = pr(p);
            let f = element(p, &[4, -1, 0, 2, 9, -3]);
            for g in enumerate_gl2(p).unwrap() {
                let lhs = iota(&act_left(&g, &f).unwrap()).unwrap();
                let rhs = act_right(&g.transpose(), &iota(&f).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn lower_unipotent_cycles_the_columns() {
        for p in [2, 3, 5, 7] {
            let p = pr(p);
            let q = p.get() as i64;
            let g = GL2Element::lower_unipotent(p);
            for i in 0..q {
                let c = phi_column(p, Integers, (1, i)).unwrap();
                let next = phi_column(p, Integers, (1, (i + 1) % q)).unwrap();
                assert_eq!(act_left(&g, &c).unwrap(), next);
            }
            let c = phi_column(p, Integers, (0, 1)).unwrap();
            assert_eq!(act_left(&g, &c).unwrap(), c);
        }
    }

    #[test]
    fn upper_unipotent_cycles_the_rows() {
        for p in [2, 3, 5] {
            let p = pr(p);
            let q = p.get() as i64;
            let d = GL2Element::upper_unipotent(p);
            for i in 0..q {
                let r = phi_row(p, Integers, (1, i)).unwrap();
                let next = phi_row(p, Integers, (1, (i + 1) % q)).unwrap();
                assert_eq!(act_right(&d, &r).unwrap(), next);
            }
        }
    }

    fn principal(p: Prime, g: &AlgebraElement<PrimeField>) -> SubspaceBasis {
        ideal_span(p, p.get() as u64, std::slice::from_ref(g)).unwrap()
    }

    fn pointwise_fixed(perm: &MonomialPermutation, sub: &SubspaceBasis) -> bool {
        sub.basis_vectors().all(|v| perm.apply_vec(&v) == v)
    }

    fn maps_onto(perm: &MonomialPermutation, sub: &SubspaceBasis) -> bool {
        sub.basis_vectors().all(|v| sub.contains(&perm.apply_vec(&v)).unwrap())
    }

    #[test]
    fn principal_ideals_stable_and_fixed() {
        for p in [2, 3] {
            let p = pr(p);
            let f = PrimeField::new(p.get() as u64).unwrap();
            let cols: Vec<_> = (0..p.get() as i64)
                .map(|i| (1, i))
                .chain([(0, 1)])
                .map(|pair| principal(p, &phi_column(p, f, pair).unwrap()))
                .collect();
            let rows: Vec<_> = (0..p.get() as i64)
                .map(|i| (1, i))
                .chain([(0, 1)])
                .map(|pair| principal(p, &phi_row(p, f, pair).unwrap()))
                .collect();
            for g in GL2Element::generators(p) {
                let (l, r) = (left_permutation(&g), right_permutation(&g));
                assert!(cols.iter().all(|c| maps_onto(&r, c)));
                assert!(rows.iter().all(|s| maps_onto(&l, s)));
            }
            let lower = left_permutation(&GL2Element::lower_unipotent(p));
            assert!(pointwise_fixed(&lower, &cols[p.as_usize()]));
            assert!(!pointwise_fixed(&lower, &cols[0]));
            let upper = right_permutation(&GL2Element::upper_unipotent(p));
            assert!(pointwise_fixed(&upper, &rows[p.as_usize()]));
        }
    }

    #[test]
    fn projective_representatives() {
        let p = pr(5);
        assert_eq!(p1_representative(p, (2, 4)).unwrap(), (1, 2));
        assert_eq!(p1_representative(p, (0, 3)).unwrap(), (0, 1));
        assert_eq!(p1_representative(p, (1, 3)).unwrap(), (1, 3));
        assert_eq!(p1_representative(p, (5, 10)), Err(Error::ZeroPair));
        assert_eq!(p1_label(p, (3, 0)).unwrap(), 0);
        assert_eq!(p1_label(p, (0, 2)).unwrap(), 5);
    }

    #[test]
    fn label_actions_are_triply_transitive() {
        for p in [2, 3, 5] {
            let p = pr(p);
            let n = p.as_usize() + 1;
            let gens = GL2Element::generators(p);
            let cols: Vec<_> = gens.iter().map(column_label_action).collect();
            let rows: Vec<_> = gens.iter().map(row_label_action).collect();
            assert!(is_triply_transitive(&cols, n));
            assert!(is_triply_transitive(&rows, n));
            // unipotent alone is not
            assert!(p.get() == 2 || !is_triply_transitive(&cols[..1], n));
        }
    }

    #[test]
    fn column_label_action_matches_elements() {
        let p = pr(3);
        let f = PrimeField::new(3).unwrap();
        let pairs: Vec<(i64, i64)> = (0..3).map(|i| (1, i)).chain([(0, 1)]).collect();
        for g in enumerate_gl2(p).unwrap() {
            let perm = column_label_action(&g);
            for (i, &pair) in pairs.iter().enumerate() {
                let moved = act_left(&g, &phi_column(p, f, pair).unwrap()).unwrap();
                assert_eq!(moved, phi_column(p, f, pairs[perm[i]]).unwrap());
            }
        }
    }

    proptest! {
        #[test]
        fn actions_are_ring_automorphisms(a in prop::collection::vec(-4i64..5, 1..7),
                                          b in prop::collection::vec(-4i64..5, 1..7),
                                          gi in 0usize..48, di in 0usize..48) {
            let p = pr(3);
            let all = enumerate_gl2(p).unwrap();
            let (g, d) = (all[gi], all[di]);
            let (f, h) = (element(p, &a), element(p, &b));
            let fh = f.mul(&h).unwrap();
            prop_assert_eq!(act_left(&g, &fh).unwrap(),
                act_left(&g, &f).unwrap().mul(&act_left(&g, &h).unwrap()).unwrap());
            prop_assert_eq!(act_right(&d, &fh).unwrap(),
                act_right(&d, &f).unwrap().mul(&act_right(&d, &h).unwrap()).unwrap());
            prop_assert_eq!(iota(&fh).unwrap(), iota(&f).unwrap().mul(&iota(&h).unwrap()).unwrap());
        }
    }

    #[test]
    fn report_passes_for_small_primes() {
        for p in [2, 3, 5] {
            let r = symmetry_report(pr(p)).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.exhaustive, p <= 3);
        }
        assert_eq!(symmetry_report(pr(3)).unwrap().elements_tested, 48);
    }

    #[test]
    fn non_additive_permutation_is_rejected() {
        let p = pr(2);
        let swap = MonomialPermutation::from_fn(p, |e| {
            let s = ExponentMatrix::of_var(p, Var::S);
            if e == s {
                ExponentMatrix::of_var(p, Var::T)
            } else if e == ExponentMatrix::of_var(p, Var::T) {
                s
            } else {
                e
            }
        });
        assert!(swap.is_bijective());
        assert!(!is_ring_automorphism(&swap));
        assert!(is_ring_automorphism(&iota_permutation(p)));
    }
}
