use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{AlgebraElement, Integers};

/// Coefficients a [`LambdaPolynomial`] can carry.
pub trait LambdaCoeff: Clone + fmt::Debug + PartialEq {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

impl LambdaCoeff for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }
}

/// Group-basis elements of `Z[S,T,U,V]/(...)`; all operands must share `p`.
impl LambdaCoeff for AlgebraElement<Integers> {
    fn is_zero(&self) -> bool {
        AlgebraElement::is_zero(self)
    }

    fn add(&self, other: &Self) -> Self {
        AlgebraElement::add(self, other).expect("coefficients share p and basis")
    }

    fn neg(&self) -> Self {
        AlgebraElement::neg(self)
    }

    fn mul(&self, other: &Self) -> Self {
        AlgebraElement::mul(self, other).expect("coefficients share p and basis")
    }
}

/// Exponent vector of a monomial in `lambda_0, ..., lambda_{n-1}`, ordered
/// graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaMonomial(Vec<u8>);

impl LambdaMonomial {
    pub fn one(nvars: usize) -> Self {
        LambdaMonomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        LambdaMonomial(e)
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&x| x as u32).sum()
    }

    pub fn mul(&self, other: &LambdaMonomial) -> LambdaMonomial {
        LambdaMonomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for LambdaMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for LambdaMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LambdaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("l{i}") } else { format!("l{i}^{e}") })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// A sparse polynomial in `n` variables `lambda_i`; zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaPolynomial<C> {
    nvars: usize,
    terms: BTreeMap<LambdaMonomial, C>,
}

impl<C: LambdaCoeff> LambdaPolynomial<C> {
    pub fn zero(nvars: usize) -> Self {
        LambdaPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        Self::term(LambdaMonomial::one(nvars), c)
    }

    /// `c * lambda_i`.
    pub fn var(nvars: usize, i: usize, c: C) -> Self {
        Self::term(LambdaMonomial::var(nvars, i), c)
    }

    pub fn term(m: LambdaMonomial, c: C) -> Self {
        let mut p = Self::zero(m.0.len());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&LambdaMonomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &LambdaMonomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(LambdaMonomial::degree)
    }

    fn add_term(&mut self, m: LambdaMonomial, c: &C) {
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = x.add(c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                if !c.is_zero() {
                    self.terms.insert(m, c.clone());
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn neg(&self) -> Self {
        LambdaPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &c1.mul(c2));
            }
        }
        out
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), &x.mul(c));
        }
        out
    }

    pub fn map<D: LambdaCoeff>(&self, f: impl Fn(&C) -> D) -> LambdaPolynomial<D> {
        let mut out = LambdaPolynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// Substitute `lambda_i = values[i]`.
    pub fn evaluate(&self, values: &[C], zero: &C) -> C {
        let mut acc = zero.clone();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(&m.0) {
                for _ in 0..e {
                    t = t.mul(v);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn graded_lex_order() {
        let x = LambdaMonomial(vec![1, 0]);
        let y = LambdaMonomial(vec![0, 1]);
        let xy = x.mul(&y);
        assert!(LambdaMonomial::one(2) < y);
        assert!(y < x);
        assert!(x < xy);
        assert!(LambdaMonomial(vec![0, 2]) < xy);
        assert_eq!(xy.to_string(), "l0*l1");
    }

    #[test]
    fn arithmetic() {
        let x = LambdaPolynomial::var(2, 0, b(1));
        let y = LambdaPolynomial::var(2, 1, b(1));
        let s = x.add(&y);
        let d = x.sub(&y);
        // (x+y)(x-y) = x^2 - y^2
        let prod = s.mul(&d);
        assert_eq!(prod.len(), 2);
        assert_eq!(prod.coeff(&LambdaMonomial(vec![2, 0])), Some(&b(1)));
        assert_eq!(prod.coeff(&LambdaMonomial(vec![0, 2])), Some(&b(-1)));
        assert!(s.sub(&s).is_zero());
        assert_eq!(prod.degree(), Some(2));
        assert_eq!(prod.evaluate(&[b(3), b(2)], &b(0)), b(5));
    }
}
