//! Self-contained numerical kernel: dense Hermitian linear algebra,
//! polynomials, periodic quadrature and seeded randomness.

mod eigen;
mod expm;
mod matrix;
mod poly;
mod quadrature;
mod random;

pub use eigen::{eig_hermitian, eig_hermitian_with, EigenDecomposition, DEFAULT_MAX_SWEEPS};
pub use expm::expm;
pub use matrix::{CMat, HermitianMatrix};
pub use poly::{
    char_poly, char_poly_cmat, cluster_roots, default_cluster_tol, det_real, discriminant,
    discriminant_from_roots, discriminant_scale, real_roots, resultant, square_free_part,
    square_free_part_from_roots, sylvester_matrix, RealPolynomial, SquareFree,
};
pub use quadrature::{gauss_periodic_quadrature, MAX_NODES};
pub use random::{
    child_seed, complex_normal, householder_qr, random_unitary, rng_from_seed, GtRng,
};

/// `max - min` of a slice, or 0 for fewer than two values.
pub fn diameter(values: &[f64]) -> f64 {
    let (lo, hi) = values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    if values.len() < 2 {
        0.0
    } else {
        hi - lo
    }
}
