//! Exact computations for full level structures on `mu_p x mu_p` over `Z`.
//!
//! The coordinate ring of `Hom((Z/p)^2, mu_p x mu_p)` is the group algebra
//! `Z[S,T,U,V]/(S^p-1, T^p-1, U^p-1, V^p-1)`. This crate builds the ideal
//! cutting out the full homomorphisms, the column/row sub-ideals and their
//! filtrations, the two commuting `GL_2(F_p)` actions, and the ideal of
//! Katz–Mazur `×`-homomorphisms, and checks the dimension identities that
//! make the quotient flat over `Z`.

pub mod algebra;
pub mod error;
pub mod km_compare;
pub mod level_ideals;
pub mod linalg;
pub mod prime;
pub mod symmetry;

pub use error::{Error, Result};
pub use prime::Prime;
