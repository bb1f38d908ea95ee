use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

use super::{check_modulus, rref, Echelon, FieldMatrix, SubspaceBasis};

/// Dense matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedRows {
                    row: i,
                    len: row.len(),
                    expected: cols,
                });
            }
            data.extend(row);
        }
        Ok(IntegerMatrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_i64_rows(cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Reduction mod `q` into a field matrix.
    pub fn reduce_mod(&self, q: u64) -> Result<FieldMatrix> {
        check_modulus(q)?;
        let qb = BigInt::from(q);
        let rows: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| residue(x, &qb))
                    .collect()
            })
            .collect();
        FieldMatrix::from_rows(q, self.cols, &rows)
    }
}

pub(crate) fn residue(x: &BigInt, q: &BigInt) -> u64 {
    let r = x.mod_floor(q);
    u64::try_from(r).expect("residue below a 32-bit modulus")
}

/// Rank of `m` reduced modulo the prime `ell`.
pub fn rank_mod(m: &IntegerMatrix, ell: u64) -> Result<usize> {
    Ok(rref(&m.reduce_mod(ell)?).dim())
}

/// Rank over `Q` by Bareiss fraction-free elimination.
///
/// Every intermediate entry is a minor of `m`, so all divisions are exact.
/// Rows that become zero are dropped as soon as they appear.
pub fn rank_exact(m: &IntegerMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .to_rows()
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let cols = m.cols;
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == a.len() {
            break;
        }
        let Some(pr) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pr);
        let (head, tail) = a.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = pivot_row[col].clone();
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..cols {
                let v = &pivot * &row[j] - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
        let keep = rank;
        let mut idx = 0;
        a.retain(|r| {
            idx += 1;
            idx <= keep || r.iter().any(|x| !x.is_zero())
        });
    }
    rank
}

/// Extended gcd with nonnegative `g = x*a + y*b`.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

fn axpy(dst: &mut [BigInt], k: &BigInt, src: &[BigInt], from: usize) {
    if k.is_zero() {
        return;
    }
    for (d, s) in dst[from..].iter_mut().zip(&src[from..]) {
        if !s.is_zero() {
            *d -= k * s;
        }
    }
}

/// Row-style Hermite normal form, zero rows removed.
///
/// Pivots are positive and every entry above a pivot lies in `[0, pivot)`.
/// Two matrices have the same row lattice iff their forms are identical.
pub fn hnf(m: &IntegerMatrix) -> IntegerMatrix {
    let mut a = m.to_rows();
    let cols = m.cols;
    let mut r = 0;
    for col in 0..cols {
        if r == a.len() {
            break;
        }
        // Euclid down the column until only row r has a nonzero entry.
        loop {
            let best = (r..a.len())
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()).then(i.cmp(&j)));
            let Some(best) = best else {
                break;
            };
            a.swap(r, best);
            let (head, tail) = a.split_at_mut(r + 1);
            let piv = &head[r];
            let mut remaining = false;
            for row in tail.iter_mut() {
                if row[col].is_zero() {
                    continue;
                }
                let k = row[col].div_floor(&piv[col]);
                axpy(row, &k, piv, col);
                remaining |= !row[col].is_zero();
            }
            if !remaining {
                break;
            }
        }
        if a[r][col].is_zero() {
            continue;
        }
        if a[r][col].is_negative() {
            a[r].iter_mut().for_each(|x| *x = -x.clone());
        }
        let (head, tail) = a.split_at_mut(r);
        let piv = &tail[0];
        for row in head.iter_mut() {
            let k = row[col].div_floor(&piv[col]);
            axpy(row, &k, piv, col);
        }
        r += 1;
    }
    a.truncate(r);
    IntegerMatrix::from_rows(cols, a).expect("rows keep their width")
}

/// A `Z`-submodule of `Z^n`, held in Hermite normal form and grown one
/// generator at a time.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegerLattice {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl IntegerLattice {
    pub fn zero(cols: usize) -> Self {
        IntegerLattice {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_matrix(m: &IntegerMatrix) -> Self {
        let mut l = Self::zero(m.cols);
        for i in 0..m.rows {
            l.insert(m.row(i).to_vec());
        }
        l
    }

    pub fn ambient_dim(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn to_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::from_rows(self.cols, self.rows.clone()).expect("rows keep their width")
    }

    /// Adds a generator. Returns `true` iff the lattice grew.
    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        assert_eq!(v.len(), self.cols, "vector length must match ambient dimension");
        let mut changed = false;
        while let Some(c) = v.iter().position(|x| !x.is_zero()) {
            match self.pivots.binary_search(&c) {
                Ok(r) => {
                    let row = &mut self.rows[r];
                    let (piv, a) = (row[c].clone(), v[c].clone());
                    if a.is_multiple_of(&piv) {
                        let k = a / &piv;
                        axpy(&mut v, &k, row, c);
                    } else {
                        let (g, x, y) = ext_gcd(&piv, &a);
                        let (ag, pg) = (&a / &g, &piv / &g);
                        let mut new_row = Vec::with_capacity(self.cols);
                        let mut new_v = Vec::with_capacity(self.cols);
                        for (rj, vj) in row.iter().zip(&v) {
                            new_row.push(&x * rj + &y * vj);
                            new_v.push(&ag * rj - &pg * vj);
                        }
                        *row = new_row;
                        v = new_v;
                        changed = true;
                    }
                }
                Err(pos) => {
                    if v[c].is_negative() {
                        v.iter_mut().for_each(|x| *x = -x.clone());
                    }
                    self.rows.insert(pos, v);
                    self.pivots.insert(pos, c);
                    changed = true;
                    break;
                }
            }
        }
        if changed {
            self.normalize();
        }
        changed
    }

    fn normalize(&mut self) {
        let n = self.rows.len();
        for i in 0..n {
            let (head, tail) = self.rows.split_at_mut(i + 1);
            let row = &mut head[i];
            for (j, other) in tail.iter().enumerate() {
                let c = self.pivots[i + 1 + j];
                if row[c].is_zero() {
                    continue;
                }
                let k = row[c].div_floor(&other[c]);
                axpy(row, &k, other, c);
            }
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut v = v.to_vec();
        while let Some(c) = v.iter().position(|x| !x.is_zero()) {
            let Ok(r) = self.pivots.binary_search(&c) else {
                return false;
            };
            let row = &self.rows[r];
            if !v[c].is_multiple_of(&row[c]) {
                return false;
            }
            let k = &v[c] / &row[c];
            axpy(&mut v, &k, row, c);
        }
        true
    }

    pub fn is_sublattice_of(&self, other: &IntegerLattice) -> bool {
        self.cols == other.cols && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &IntegerLattice) -> IntegerLattice {
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(r.clone());
        }
        out
    }

    /// Image of the lattice in `F_q^n`.
    pub fn reduce_mod(&self, q: u64) -> Result<SubspaceBasis> {
        check_modulus(q)?;
        let qb = BigInt::from(q);
        let mut e = Echelon::new(q, self.cols)?;
        for r in &self.rows {
            let v: Vec<u64> = r.iter().map(|x| residue(x, &qb)).collect();
            e.insert(&v);
        }
        Ok(e.into_basis())
    }
}
