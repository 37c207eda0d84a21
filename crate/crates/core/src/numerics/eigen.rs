//! Cyclic Jacobi eigensolver for complex Hermitian matrices.

use num_complex::Complex64 as C64;

use super::matrix::{CMat, HermitianMatrix};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// Eigenvalues sorted descending, with unit eigenvectors stored as the
/// matching columns of a unitary matrix.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: CMat,
}

impl EigenDecomposition {
    pub fn vector(&self, j: usize) -> Vec<C64> {
        self.vectors.column(j)
    }

    /// Rebuilds `V diag(values) V^dagger`.
    pub fn reconstruct(&self) -> HermitianMatrix {
        HermitianMatrix::from_diag(&self.values).conjugate_by(&self.vectors)
    }
}

pub fn eig_hermitian(a: &HermitianMatrix) -> Result<EigenDecomposition> {
    eig_hermitian_with(a, DEFAULT_MAX_SWEEPS)
}

pub fn eig_hermitian_with(a: &HermitianMatrix, max_sweeps: usize) -> Result<EigenDecomposition> {
    let n = a.dim();
    let mut m = a.as_cmat().clone();
    let mut v = CMat::identity(n);
    let scale = m.norm();

    let off = |m: &CMat| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += m[(i, j)].norm_sqr();
            }
        }
        (2.0 * s).sqrt()
    };

    let mut converged = n <= 1 || scale == 0.0;
    let mut sweeps = 0;
    while !converged {
        if sweeps == max_sweeps {
            return Err(Error::NonConvergence {
                sweeps,
                residual: off(&m),
            });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        converged = off(&m) <= f64::EPSILON * 1e-2 * scale;
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep original index order
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = CMat::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// One complex Jacobi rotation annihilating `m[p][q]`.
///
/// `U = diag(1, e^{-i phi}) R` with `R` the real rotation that diagonalizes
/// the phase-corrected 2x2 block `[[a, |b|], [|b|, d]]`.
fn rotate(m: &mut CMat, v: &mut CMat, p: usize, q: usize) {
    let n = m.dim();
    let b = m[(p, q)];
    let babs = b.norm();
    if babs == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    // below this the rotation is a no-op in floating point
    if babs <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        m[(p, q)] = C64::new(0.0, 0.0);
        m[(q, p)] = C64::new(0.0, 0.0);
        return;
    }
    let phase = b / babs;
    let theta = (aqq - app) / (2.0 * babs);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let upp = C64::new(c, 0.0);
    let upq = C64::new(s, 0.0);
    let uqp = -phase.conj() * s;
    let uqq = phase.conj() * c;

    // columns: M <- M U, V <- V U
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * upp + mkq * uqp;
        m[(k, q)] = mkp * upq + mkq * uqq;
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * upp + vkq * uqp;
        v[(k, q)] = vkp * upq + vkq * uqq;
    }
    // rows: M <- U^dagger M
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = upp.conj() * mpk + uqp.conj() * mqk;
        m[(q, k)] = upq.conj() * mpk + uqq.conj() * mqk;
    }
    m[(p, q)] = C64::new(0.0, 0.0);
    m[(q, p)] = C64::new(0.0, 0.0);
    m[(p, p)] = C64::new(app - t * babs, 0.0);
    m[(q, q)] = C64::new(aqq + t * babs, 0.0);
}
