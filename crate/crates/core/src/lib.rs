//! Exact lattice computations for K3 surfaces.
//!
//! Everything is exact: rationals are [`num_rational::BigRational`], lattice
//! reductions use big-integer Smith and Hermite forms. No floating point is
//! used anywhere.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod cone;
pub mod error;
pub mod exactpoly;
pub mod intmat;
pub mod lattice;
pub mod overlattice;
pub mod weierstrass;

pub use error::{Error, Result};

pub type Rational = num_rational::BigRational;
