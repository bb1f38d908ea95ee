//! `Ann_B(m/m^d)` versus `m^(d-1)` in `B = F_p[x,y]/(x^p, y^p)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{left_kernel, rref, FieldMatrix, SubspaceBasis};
use crate::prime::Prime;

/// Coordinates of `x^i y^j` in `B`.
fn idx(p: usize, i: usize, j: usize) -> usize {
    i + p * j
}

/// `m_B^n`: spanned by `x^i y^j` with `i + j >= n`.
pub fn maximal_ideal_power(p: Prime, n: usize) -> SubspaceBasis {
    let q = p.as_usize();
    let rows: Vec<Vec<u64>> = (0..q)
        .flat_map(|j| (0..q).map(move |i| (i, j)))
        .filter(|&(i, j)| i + j >= n)
        .map(|(i, j)| {
            let mut v = vec![0; q * q];
            v[idx(q, i, j)] = 1;
            v
        })
        .collect();
    let m = FieldMatrix::from_rows(p.get() as u64, q * q, &rows).expect("prime modulus");
    rref(&m)
}

/// `{f in B : x f, y f in m_B^d}`, as the left kernel of
/// `f -> (x f mod m^d, y f mod m^d)`.
pub fn annihilator_of_quotient(p: Prime, d: usize) -> SubspaceBasis {
    let q = p.as_usize();
    let n = q * q;
    let mut m = FieldMatrix::zeros(p.get() as u64, n, 2 * n).expect("prime modulus");
    for j in 0..q {
        for i in 0..q {
            let row = idx(q, i, j);
            // x * x^i y^j
            if i + 1 < q && i + 1 + j < d {
                m.set(row, idx(q, i + 1, j), 1);
            }
            if j + 1 < q && i + j + 1 < d {
                m.set(row, n + idx(q, i, j + 1), 1);
            }
        }
    }
    left_kernel(&m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisionReport {
    pub p: u32,
    pub d: usize,
    pub annihilator_dim: usize,
    pub power_dim: usize,
    pub equal: bool,
}

/// Compare `Ann_B(m/m^d)` with `m^(d-1)` for `1 <= d <= 2p+3`.
pub fn division_lemma_check(p: Prime, d: usize) -> Result<DivisionReport> {
    let max = 2 * p.as_usize() + 3;
    if d == 0 || d > max {
        return Err(Error::OutOfRange(format!("d = {d} outside 1..={max}")));
    }
    let ann = annihilator_of_quotient(p, d);
    let pow = maximal_ideal_power(p, d - 1);
    Ok(DivisionReport {
        p: p.get(),
        d,
        annihilator_dim: ann.dim(),
        power_dim: pow.dim(),
        equal: ann == pow,
    })
}
