use serde::{Deserialize, Serialize};

use crate::algebra::{phi, AlgebraElement, Basis, ExponentMatrix, Integers, Var};
use crate::error::{Error, Result};
use crate::prime::Prime;

pub const MAX_TRACE_PRIME: u32 = 13;
pub const MAX_FIBER_PRIME: u32 = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceReport {
    pub p: u32,
    /// Trace of multiplication by `X` on `Z[X,Y]/(X^p-1, Y^p-1)`.
    pub trace_x_on_b: i64,
    /// `Tr(h*(X)) = Phi_p(S) Phi_p(U)`.
    pub x_matches: bool,
    /// `Tr(h*(Y)) = Phi_p(T) Phi_p(V)`.
    pub y_matches: bool,
}

impl TraceReport {
    pub fn passed(&self) -> bool {
        self.trace_x_on_b == 0 && self.x_matches && self.y_matches
    }
}

/// Trace of multiplication by `X^a Y^b` on the monomial basis of
/// `Z[X,Y]/(X^p-1, Y^p-1)`.
fn trace_on_b(p: usize, a: usize, b: usize) -> i64 {
    let mut tr = 0;
    for y in 0..p {
        for x in 0..p {
            // X^a Y^b * X^x Y^y = X^(x+a) Y^(y+b); diagonal entry is 1 iff fixed
            if ((x + a) % p, (y + b) % p) == (x, y) {
                tr += 1;
            }
        }
    }
    tr
}

/// Trace of the diagonal operator with entry `h*(g)` at section `(i, j)`
/// of `A^((Z/p)^2)`, where `g = X` (`S^i U^j`) or `g = Y` (`T^i V^j`).
fn trace_of_pullback(p: Prime, x: bool) -> AlgebraElement<Integers> {
    let q = p.get() as i64;
    let mut tr = AlgebraElement::zero(p, Integers, Basis::Group);
    for i in 0..q {
        for j in 0..q {
            let e = if x { [[i, 0], [j, 0]] } else { [[0, i], [0, j]] };
            let entry = AlgebraElement::monomial(p, Integers, Basis::Group, ExponentMatrix::new(p, e));
            tr = tr.add(&entry).expect("same ring");
        }
    }
    tr
}

pub fn trace_identity_check(p: Prime) -> Result<TraceReport> {
    if p.get() > MAX_TRACE_PRIME {
        return Err(Error::PrimeOutOfRange {
            p: p.get() as u64,
            max: MAX_TRACE_PRIME as u64,
        });
    }
    let var = |v| phi(p, Integers, ExponentMatrix::of_var(p, v));
    let su = var(Var::S).mul(&var(Var::U))?;
    let tv = var(Var::T).mul(&var(Var::V))?;
    Ok(TraceReport {
        p: p.get(),
        trace_x_on_b: trace_on_b(p.as_usize(), 1, 0),
        x_matches: trace_of_pullback(p, true) == su,
        y_matches: trace_of_pullback(p, false) == tv,
    })
}

/// `Tr(h*(X))` as an element, for display.
pub fn trace_of_x(p: Prime) -> AlgebraElement<Integers> {
    trace_of_pullback(p, true)
}

/// Number of 2×2 matrices over `F_p` all of whose nontrivial row
/// combinations and column combinations are nonzero.
pub fn generic_fiber_count(p: Prime) -> Result<u64> {
    if p.get() > MAX_FIBER_PRIME {
        return Err(Error::PrimeOutOfRange {
            p: p.get() as u64,
            max: MAX_FIBER_PRIME as u64,
        });
    }
    let q = p.get() as i64;
    let combos: Vec<(i64, i64)> = (0..q)
        .flat_map(|x| (0..q).map(move |y| (x, y)))
        .filter(|&c| c != (0, 0))
        .collect();
    let independent = |u: (i64, i64), v: (i64, i64)| {
        combos.iter().all(|&(x, y)| {
            ((x * u.0 + y * v.0).rem_euclid(q), (x * u.1 + y * v.1).rem_euclid(q)) != (0, 0)
        })
    };
    let mut count = 0;
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    if independent((a, b), (c, d)) && independent((a, c), (b, d)) {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}
