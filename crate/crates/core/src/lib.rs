//! Exact q-characters for the quantum affine algebra of type G2.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod catalog;
pub mod dims;
pub mod error;
pub mod fm;
mod kernel;
pub mod monomial;
pub mod poly;
pub mod sl2;
pub mod tsystem;
pub mod weyl;

pub use error::{Error, Result};
pub use monomial::{a_monomial, factor_over_a, weight_of, AVector, LMonomial, Node, Var, Weight};
pub use poly::{Monomial, Poly, QPolynomial};
pub use catalog::{highest_monomial, trivial_aliases, Family, FamilyId};
