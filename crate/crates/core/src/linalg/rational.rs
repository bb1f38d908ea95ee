use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Row-echelon basis of a `Q`-subspace of `Q^n`, stored as primitive integer
/// rows and grown by fraction-free elimination.
///
/// Only the rank is canonical here; use [`super::IntegerLattice`] when the
/// lattice itself matters.
#[derive(Clone, Debug, Default)]
pub struct RationalEchelon {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl RationalEchelon {
    pub fn new(cols: usize) -> Self {
        RationalEchelon {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` to a primitive vector with zeros in every pivot column.
    fn reduce(&self, v: &mut [BigInt]) {
        // Rows are sorted by pivot, and each row vanishes left of its pivot,
        // so one ascending sweep clears every pivot column.
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[c].is_zero() {
                continue;
            }
            let g = row[c].gcd(&v[c]);
            let (a, b) = (&row[c] / &g, &v[c] / &g);
            for (x, r) in v.iter_mut().zip(row) {
                if r.is_zero() {
                    if !x.is_zero() {
                        *x *= &a;
                    }
                } else {
                    *x = &a * &*x - &b * r;
                }
            }
            make_primitive(v);
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns `true` iff the rank grew.
    pub fn insert(&mut self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.cols, "vector length must match ambient dimension");
        let mut w = v.to_vec();
        make_primitive(&mut w);
        self.reduce(&mut w);
        let Some(c) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        if w[c].is_negative() {
            w.iter_mut().for_each(|x| *x = -x.clone());
        }
        let pos = self.pivots.partition_point(|&p| p < c);
        self.rows.insert(pos, w);
        self.pivots.insert(pos, c);
        true
    }
}

fn make_primitive(v: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g == BigInt::from(1) {
                return;
            }
        }
    }
    if g.is_zero() {
        return;
    }
    v.iter_mut().for_each(|x| *x = &*x / &g);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rank_exact, IntegerMatrix};
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn detects_dependence_over_q() {
        let mut e = RationalEchelon::new(3);
        assert!(e.insert(&big(&[2, 4, 6])));
        assert!(!e.insert(&big(&[1, 2, 3])));
        assert!(e.insert(&big(&[0, 3, 1])));
        assert!(e.contains(&big(&[2, 7, 7])));
        assert!(!e.contains(&big(&[0, 0, 1])));
        assert_eq!(e.rank(), 2);
    }

    proptest! {
        #[test]
        fn agrees_with_bareiss(rows in prop::collection::vec(prop::collection::vec(-5i64..6, 5), 0..7)) {
            let mut e = RationalEchelon::new(5);
            for r in &rows {
                e.insert(&big(r));
            }
            let m = IntegerMatrix::from_i64_rows(5, &rows).unwrap();
            prop_assert_eq!(e.rank(), rank_exact(&m));
        }
    }
}
