//! Kac-Moody root systems, Weyl group enumeration, admissible words and
//! Weyl-group series attached to Eisenstein series.
//!
//! Combinatorics is exact: roots are integer vectors in the simple-root
//! basis, weights and points are rational vectors, and Weyl elements are
//! identified by their integer action matrices. Analytic quantities are
//! evaluated in arbitrary precision through [`real::Real`].

pub mod cartan;
pub mod certificate;
pub mod cli;
pub mod config;
pub mod eisenstein;
pub mod error;
pub mod lattice;
pub mod property;
pub mod rational;
pub mod real;
pub mod special;
pub mod weyl;

pub use cartan::CartanMatrix;
pub use error::{Error, Result};
pub use lattice::{PointH, RootVector, WeightVector};
pub use real::{PrecisionContext, Real};
pub use weyl::WeylElement;
