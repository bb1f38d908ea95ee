use crate::error::{Error, Result};

use super::{check_modulus, inv_mod};

/// Dense matrix over the prime field `F_q`, residues stored in `[0, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    q: u64,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FieldMatrix {
    pub fn zeros(q: u64, rows: usize, cols: usize) -> Result<Self> {
        check_modulus(q)?;
        Ok(FieldMatrix {
            q,
            rows,
            cols,
            data: vec![0; rows * cols],
        })
    }

    pub fn identity(q: u64, n: usize) -> Result<Self> {
        let mut m = Self::zeros(q, n, n)?;
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        Ok(m)
    }

    /// Builds a matrix from rows of arbitrary residues, reducing each entry mod `q`.
    pub fn from_rows(q: u64, cols: usize, rows: &[Vec<u64>]) -> Result<Self> {
        let mut m = Self::zeros(q, rows.len(), cols)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedRows {
                    row: i,
                    len: row.len(),
                    expected: cols,
                });
            }
            for (j, &x) in row.iter().enumerate() {
                m.data[i * cols + j] = (x % q) as u32;
            }
        }
        Ok(m)
    }

    /// Like [`FieldMatrix::from_rows`] for signed input.
    pub fn from_signed_rows(q: u64, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let reduced: Vec<Vec<u64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| x.rem_euclid(q as i64) as u64).collect())
            .collect();
        Self::from_rows(q, cols, &reduced)
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j] as u64
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = (x % self.q) as u32;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<u64> {
        self.row(i).iter().map(|&x| x as u64).collect()
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = FieldMatrix {
            q: self.q,
            rows: self.cols,
            cols: self.rows,
            data: vec![0; self.data.len()],
        };
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }
}

/// Canonical basis of a subspace of `F_q^n`: the nonzero rows of its reduced
/// row-echelon form, sorted by strictly increasing pivot column.
///
/// Two values compare equal exactly when they describe the same subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    q: u64,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn zero(q: u64, ambient: usize) -> Result<Self> {
        check_modulus(q)?;
        Ok(SubspaceBasis {
            q,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        })
    }

    pub fn full(q: u64, ambient: usize) -> Result<Self> {
        Ok(rref(&FieldMatrix::identity(q, ambient)?))
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Basis vectors widened to `u64`.
    pub fn basis_vectors(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        self.rows
            .iter()
            .map(|r| r.iter().map(|&x| x as u64).collect())
    }

    pub fn to_matrix(&self) -> FieldMatrix {
        FieldMatrix {
            q: self.q,
            rows: self.rows.len(),
            cols: self.ambient,
            data: self.rows.iter().flatten().copied().collect(),
        }
    }

    /// Membership test by reduction against the echelon rows.
    pub fn contains(&self, v: &[u64]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                actual: v.len(),
            });
        }
        let mut w: Vec<u64> = v.iter().map(|&x| x % self.q).collect();
        Echelon::from_basis(self).reduce(&mut w);
        Ok(w.iter().all(|&x| x == 0))
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> Result<bool> {
        check_compatible(self, other)?;
        let ech = Echelon::from_basis(other);
        Ok(self.basis_vectors().all(|mut v| {
            ech.reduce(&mut v);
            v.iter().all(|&x| x == 0)
        }))
    }
}

fn check_compatible(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<()> {
    if a.q != b.q {
        return Err(Error::ModulusMismatch(a.q, b.q));
    }
    if a.ambient != b.ambient {
        return Err(Error::DimensionMismatch {
            expected: a.ambient,
            actual: b.ambient,
        });
    }
    Ok(())
}

/// Incrementally maintained reduced row-echelon form.
///
/// Rows are kept fully reduced (each pivot column is zero in every other row),
/// so reduction of a vector may visit the rows in any order.
#[derive(Clone, Debug)]
pub struct Echelon {
    q: u64,
    ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    // Number of un-reduced multiply-adds a u64 accumulator can absorb.
    lazy_budget: u64,
}

impl Echelon {
    pub fn new(q: u64, ambient: usize) -> Result<Self> {
        check_modulus(q)?;
        let sq = (q - 1).saturating_mul(q - 1).max(1);
        Ok(Echelon {
            q,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
            lazy_budget: ((u64::MAX - q) / sq).max(1),
        })
    }

    pub fn from_basis(b: &SubspaceBasis) -> Self {
        let mut e = Echelon::new(b.q, b.ambient).expect("basis modulus already validated");
        e.rows = b.rows.clone();
        e.pivots = b.pivots.clone();
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Reduces `v` (entries in `[0, q)`) against the current rows. Afterwards
    /// `v` is zero iff it was in the span.
    pub fn reduce(&self, v: &mut [u64]) {
        debug_assert_eq!(v.len(), self.ambient);
        let q = self.q;
        let mut used = 0u64;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let coef = v[c] % q;
            if coef == 0 {
                v[c] = 0;
                continue;
            }
            if used >= self.lazy_budget {
                v.iter_mut().for_each(|x| *x %= q);
                used = 0;
            }
            let m = q - coef;
            for (x, &r) in v[c..].iter_mut().zip(&row[c..]) {
                *x += m * r as u64;
            }
            used += 1;
            v[c] = 0;
        }
        v.iter_mut().for_each(|x| *x %= q);
    }

    /// Adds `v` to the span. Returns `true` iff the rank grew.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length must match ambient dimension");
        let q = self.q;
        let mut w: Vec<u64> = v.iter().map(|&x| x % q).collect();
        self.reduce(&mut w);
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[c], q);
        let new_row: Vec<u32> = w.iter().map(|&x| (x * inv % q) as u32).collect();
        for row in &mut self.rows {
            let f = row[c] as u64;
            if f == 0 {
                continue;
            }
            let m = q - f;
            for (x, &y) in row[c..].iter_mut().zip(&new_row[c..]) {
                *x = ((*x as u64 + m * y as u64) % q) as u32;
            }
        }
        self.rows.push(new_row);
        self.pivots.push(c);
        true
    }

    pub fn into_basis(self) -> SubspaceBasis {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows: Vec<Option<Vec<u32>>> = self.rows.into_iter().map(Some).collect();
        SubspaceBasis {
            q: self.q,
            ambient: self.ambient,
            pivots: order.iter().map(|&i| self.pivots[i]).collect(),
            rows: order.iter().map(|&i| rows[i].take().unwrap()).collect(),
        }
    }

    pub fn to_basis(&self) -> SubspaceBasis {
        self.clone().into_basis()
    }
}

/// Canonical reduced row-echelon basis of the row space of `m`.
pub fn rref(m: &FieldMatrix) -> SubspaceBasis {
    let mut e = Echelon::new(m.q, m.cols).expect("matrix modulus already validated");
    let mut buf = vec![0u64; m.cols];
    for i in 0..m.rows {
        for (b, &x) in buf.iter_mut().zip(m.row(i)) {
            *b = x as u64;
        }
        e.insert(&buf);
    }
    e.into_basis()
}

pub fn subspace_sum(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<SubspaceBasis> {
    check_compatible(a, b)?;
    let (big, small) = if a.dim() >= b.dim() { (a, b) } else { (b, a) };
    let mut e = Echelon::from_basis(big);
    for v in small.basis_vectors() {
        e.insert(&v);
    }
    Ok(e.into_basis())
}

/// Zassenhaus: reduce the block rows `[a | a]` and `[b | 0]`; the rows whose
/// left half vanishes span `a ∩ b` in their right half.
pub fn subspace_intersection(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<SubspaceBasis> {
    check_compatible(a, b)?;
    let n = a.ambient;
    let mut e = Echelon::new(a.q, 2 * n)?;
    let mut buf = vec![0u64; 2 * n];
    for row in &a.rows {
        for (j, &x) in row.iter().enumerate() {
            buf[j] = x as u64;
            buf[n + j] = x as u64;
        }
        e.insert(&buf);
    }
    for row in &b.rows {
        for (j, &x) in row.iter().enumerate() {
            buf[j] = x as u64;
            buf[n + j] = 0;
        }
        e.insert(&buf);
    }
    let mut out = Echelon::new(a.q, n)?;
    for (row, &c) in e.rows.iter().zip(&e.pivots) {
        if c >= n {
            let v: Vec<u64> = row[n..].iter().map(|&x| x as u64).collect();
            out.insert(&v);
        }
    }
    Ok(out.into_basis())
}

/// Basis of `{ x : x·m = 0 }`, computed by reducing `[m | I]`.
pub fn left_kernel(m: &FieldMatrix) -> SubspaceBasis {
    let (r, c) = (m.rows, m.cols);
    let mut e = Echelon::new(m.q, c + r).expect("matrix modulus already validated");
    let mut buf = vec![0u64; c + r];
    for i in 0..r {
        buf.iter_mut().for_each(|x| *x = 0);
        for (b, &x) in buf.iter_mut().zip(m.row(i)) {
            *b = x as u64;
        }
        buf[c + i] = 1;
        e.insert(&buf);
    }
    let mut out = Echelon::new(m.q, r).expect("matrix modulus already validated");
    for (row, &piv) in e.rows.iter().zip(&e.pivots) {
        if piv >= c {
            let v: Vec<u64> = row[c..].iter().map(|&x| x as u64).collect();
            out.insert(&v);
        }
    }
    out.into_basis()
}
