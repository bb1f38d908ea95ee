use std::fmt;

use crate::prime::Prime;

/// One of the four group-like generators `S, T, U, V` (or, in the shifted
/// basis, `s = S-1`, ...). The position in `[[S, T], [U, V]]` fixes the
/// exponent-matrix slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    S,
    T,
    U,
    V,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::S, Var::T, Var::U, Var::V];

    /// Position in the linear index `i + p j + p^2 k + p^3 l`.
    pub fn axis(self) -> usize {
        match self {
            Var::S => 0,
            Var::T => 1,
            Var::U => 2,
            Var::V => 3,
        }
    }

    fn slot(self) -> (usize, usize) {
        let a = self.axis();
        (a / 2, a % 2)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Var::S => 'S',
            Var::T => 'T',
            Var::U => 'U',
            Var::V => 'V',
        };
        write!(f, "{c}")
    }
}

/// The monomial `S^i T^j U^k V^l`, written as the 2×2 matrix `[[i, j], [k, l]]`
/// over `Z/p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentMatrix {
    p: Prime,
    e: [[u32; 2]; 2],
}

pub(crate) type Mat2 = [[u32; 2]; 2];

impl ExponentMatrix {
    /// Entries are reduced mod `p`.
    pub fn new(p: Prime, e: [[i64; 2]; 2]) -> Self {
        let r = |x: i64| x.rem_euclid(p.get() as i64) as u32;
        ExponentMatrix {
            p,
            e: [[r(e[0][0]), r(e[0][1])], [r(e[1][0]), r(e[1][1])]],
        }
    }

    pub fn one(p: Prime) -> Self {
        ExponentMatrix { p, e: [[0; 2]; 2] }
    }

    pub fn of_var(p: Prime, var: Var) -> Self {
        let mut e = [[0; 2]; 2];
        let (r, c) = var.slot();
        e[r][c] = 1 % p.get();
        ExponentMatrix { p, e }
    }

    pub fn from_index(p: Prime, idx: usize) -> Self {
        let q = p.as_usize();
        debug_assert!(idx < p.ambient_dim());
        let d = |k: u32| ((idx / q.pow(k)) % q) as u32;
        ExponentMatrix {
            p,
            e: [[d(0), d(1)], [d(2), d(3)]],
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn entries(&self) -> Mat2 {
        self.e
    }

    pub fn exponent(&self, var: Var) -> u32 {
        let (r, c) = var.slot();
        self.e[r][c]
    }

    /// `i + p j + p^2 k + p^3 l`.
    pub fn index(&self) -> usize {
        let q = self.p.as_usize();
        let [[i, j], [k, l]] = self.e;
        i as usize + q * (j as usize + q * (k as usize + q * l as usize))
    }

    /// Exponents of a product of monomials.
    pub fn add(&self, other: &ExponentMatrix) -> ExponentMatrix {
        let q = self.p.get();
        let mut e = self.e;
        for r in 0..2 {
            for c in 0..2 {
                e[r][c] = (e[r][c] + other.e[r][c]) % q;
            }
        }
        ExponentMatrix { p: self.p, e }
    }

    pub fn scale(&self, k: u32) -> ExponentMatrix {
        let q = self.p.get() as u64;
        let mut e = self.e;
        e.iter_mut()
            .flatten()
            .for_each(|x| *x = (*x as u64 * k as u64 % q) as u32);
        ExponentMatrix { p: self.p, e }
    }

    pub fn transpose(&self) -> ExponentMatrix {
        let [[i, j], [k, l]] = self.e;
        ExponentMatrix {
            p: self.p,
            e: [[i, k], [j, l]],
        }
    }

    /// `self · m`.
    pub fn mul_right(&self, m: &Mat2) -> ExponentMatrix {
        ExponentMatrix {
            p: self.p,
            e: mat_mul(&self.e, m, self.p.get()),
        }
    }

    /// `m · self`.
    pub fn mul_left(&self, m: &Mat2) -> ExponentMatrix {
        ExponentMatrix {
            p: self.p,
            e: mat_mul(m, &self.e, self.p.get()),
        }
    }

    /// All `p^4` exponent matrices in linear-index order.
    pub fn all(p: Prime) -> impl Iterator<Item = ExponentMatrix> {
        (0..p.ambient_dim()).map(move |i| ExponentMatrix::from_index(p, i))
    }
}

impl fmt::Display for ExponentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for var in Var::ALL {
            let k = self.exponent(var);
            if k == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if k == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{var}^{k}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

pub(crate) fn mat_mul(a: &Mat2, b: &Mat2, q: u32) -> Mat2 {
    let q = q as u64;
    let mut out = [[0u32; 2]; 2];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, x) in row.iter_mut().enumerate() {
            let s = a[r][0] as u64 * b[0][c] as u64 + a[r][1] as u64 * b[1][c] as u64;
            *x = (s % q) as u32;
        }
    }
    out
}
