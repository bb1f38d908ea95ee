use super::lambda::{LambdaCoeff, LambdaPolynomial};
use crate::error::{Error, Result};

type Poly<C> = LambdaPolynomial<C>;

fn dot<C: LambdaCoeff>(a: &[Poly<C>], b: &[Poly<C>], nvars: usize) -> Poly<C> {
    let mut acc = Poly::zero(nvars);
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc.add_assign(&x.mul(y));
        }
    }
    acc
}

/// Coefficients of `det(T - M)` in ascending powers of `T`, by Berkowitz's
/// division-free algorithm. `one` is the unit of the coefficient ring.
pub fn char_poly_divfree<C: LambdaCoeff>(m: &[Vec<Poly<C>>], one: &C) -> Result<Vec<Poly<C>>> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::RaggedRows {
                row: i,
                len: row.len(),
                expected: n,
            });
        }
    }
    let nvars = m
        .iter()
        .flatten()
        .map(|x| x.nvars())
        .next()
        .unwrap_or(0);
    let unit = Poly::constant(nvars, one.clone());
    // descending coefficients of the leading r×r block
    let mut vect = vec![unit.clone()];
    for r in 0..n {
        let mut t = Vec::with_capacity(r + 2);
        t.push(unit.clone());
        t.push(m[r][r].neg());
        let row = &m[r][..r];
        let mut w: Vec<Poly<C>> = (0..r).map(|i| m[i][r].clone()).collect();
        for k in 0..r {
            t.push(dot(row, &w, nvars).neg());
            if k + 1 < r {
                w = (0..r).map(|i| dot(&m[i][..r], &w, nvars)).collect();
            }
        }
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut acc = Poly::zero(nvars);
            for j in 0..=i.min(r) {
                if !t[i - j].is_zero() && !vect[j].is_zero() {
                    acc.add_assign(&t[i - j].mul(&vect[j]));
                }
            }
            next.push(acc);
        }
        vect = next;
    }
    vect.reverse();
    Ok(vect)
}
