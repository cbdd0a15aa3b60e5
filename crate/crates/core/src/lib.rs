//! Exact polynomial arithmetic and classical covariants of `SL3 x SL2`.
//!
//! Everything is computed over the rationals. Polynomials live in a fixed
//! alphabet of variables (see [`poly::Var`]) whose roles decide how the group acts.

pub mod covariants;
pub mod elimination;
pub mod error;
pub mod forms;
pub mod group;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod sl2;
pub mod sl3;

pub use error::{Error, Result};
pub use forms::{BigradedForm, BinaryForm, MapPair};
pub use group::GroupElement;
pub use poly::{rat, ratio, Monomial, Poly, Rational, Substitution, Var};
