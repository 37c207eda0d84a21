//! Lax-pair formulation of Gelfand-Tsetlin integrable systems on adjoint
//! orbits of `U(n)`, together with the hyperelliptic spectral curves whose
//! branch points are the Gelfand-Tsetlin action coordinates.
//!
//! Matrices are kept in the Hermitian picture: a skew-Hermitian `X` in
//! `u(n)` is stored as `-i X`, so every spectrum is real and sorted
//! descending.

pub mod curves;
pub mod error;
pub mod flow;
pub mod gtsystem;
pub mod numerics;
pub mod orbit;
pub mod polytope;

pub use error::{Error, Result};
