//! The Gelfand-Tsetlin polytope over the free pattern entries: membership,
//! interior sampling, vertex enumeration for small dimension and
//! reconstruction of an orbit point with a prescribed pattern.

use itertools::Itertools;
use num_complex::Complex64 as C64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::gtsystem::{free_coordinates, interlacing_constraints, ActionVector, Constraint, GTPattern};
use crate::numerics::{cluster_roots, eig_hermitian, CMat, HermitianMatrix};
use crate::orbit::{OrbitPoint, OrbitSpec};

/// Relative margin kept from each interval end when sampling.
pub const SAMPLE_MARGIN: f64 = 1e-6;
/// Largest dimension accepted by [`vertices`].
pub const MAX_VERTEX_DIM: usize = 6;
const VERTEX_TOL: f64 = 1e-9;

/// One side of an interlacing inequality in free coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Term {
    Free(usize),
    Const(f64),
}

/// `upper - lower >= 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearConstraint {
    pub upper: Term,
    pub lower: Term,
    pub source: Constraint,
}

impl LinearConstraint {
    fn term(t: Term, x: &[f64]) -> f64 {
        match t {
            Term::Free(i) => x[i],
            Term::Const(v) => v,
        }
    }

    pub fn slack(&self, x: &[f64]) -> f64 {
        Self::term(self.upper, x) - Self::term(self.lower, x)
    }

    /// Row of the linear form `coef . x` and its constant, so that
    /// `slack = coef . x + constant`.
    fn linear_form(&self, dim: usize) -> (Vec<f64>, f64) {
        let mut coef = vec![0.0; dim];
        let mut constant = 0.0;
        match self.upper {
            Term::Free(i) => coef[i] += 1.0,
            Term::Const(v) => constant += v,
        }
        match self.lower {
            Term::Free(i) => coef[i] -= 1.0,
            Term::Const(v) => constant -= v,
        }
        (coef, constant)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolytopeSpec {
    pub spec: OrbitSpec,
    pub dim: usize,
    /// Pattern position `(j, k)` of each free coordinate.
    pub coords: Vec<(usize, usize)>,
    pub constraints: Vec<LinearConstraint>,
}

impl PolytopeSpec {
    pub fn new(spec: &OrbitSpec) -> Self {
        let coords = free_coordinates(spec);
        let index_of = |pos: (usize, usize)| coords.iter().position(|&c| c == pos);
        let term = |pos: (usize, usize)| match index_of(pos) {
            Some(i) => Term::Free(i),
            None => Term::Const(spec.lambda[pos.0 - 1]),
        };
        let constraints = interlacing_constraints(spec)
            .into_iter()
            .map(|c| LinearConstraint {
                upper: term(c.upper),
                lower: term(c.lower),
                source: c,
            })
            .collect();
        Self {
            spec: spec.clone(),
            dim: coords.len(),
            coords,
            constraints,
        }
    }

    pub fn slacks(&self, x: &[f64]) -> Vec<f64> {
        self.constraints.iter().map(|c| c.slack(x)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Membership {
    Interior,
    /// Feasible with the listed constraints (indices into
    /// `PolytopeSpec::constraints`) at `|slack| <= tol`.
    Boundary(Vec<usize>),
    /// Constraints with `slack < -tol`.
    Outside(Vec<usize>),
}

pub fn membership(ps: &PolytopeSpec, a: &ActionVector, tol: f64) -> Result<Membership> {
    if a.len() != ps.dim {
        return Err(Error::DimensionMismatch {
            expected: ps.dim,
            got: a.len(),
        });
    }
    let slacks = ps.slacks(a.values());
    let violated: Vec<usize> = (0..slacks.len()).filter(|&i| slacks[i] < -tol).collect();
    if !violated.is_empty() {
        return Ok(Membership::Outside(violated));
    }
    let saturated: Vec<usize> = (0..slacks.len()).filter(|&i| slacks[i] <= tol).collect();
    if saturated.is_empty() {
        Ok(Membership::Interior)
    } else {
        Ok(Membership::Boundary(saturated))
    }
}

/// Draws an interior point row by row from `k = n-1` down to `1`, each free
/// entry uniform on the open interval between its two parents shrunk by
/// [`SAMPLE_MARGIN`] of its length at both ends.
///
/// The result has full support on the interior but is not uniform over the
/// polytope.
pub fn sample_interior<R: Rng + ?Sized>(ps: &PolytopeSpec, rng: &mut R) -> ActionVector {
    let spec = &ps.spec;
    let n = spec.n;
    let mut rows: Vec<Vec<f64>> = (1..=n).map(|k| vec![0.0; k]).collect();
    rows[n - 1] = spec.lambda.clone();
    for k in (1..n).rev() {
        for j in 1..=k {
            rows[k - 1][j - 1] = if spec.is_frozen(j, k) {
                spec.lambda[j - 1]
            } else {
                let hi = rows[k][j - 1];
                let lo = rows[k][j];
                let len = hi - lo;
                let u: f64 = rng.random();
                lo + len * (SAMPLE_MARGIN + (1.0 - 2.0 * SAMPLE_MARGIN) * u)
            };
        }
    }
    ActionVector(ps.coords.iter().map(|&(j, k)| rows[k - 1][j - 1]).collect())
}

/// Vertices by brute force over all `dim`-subsets of constraints: solve the
/// equality system, keep nonsingular feasible solutions, dedupe. Output is
/// sorted lexicographically descending.
pub fn vertices(ps: &PolytopeSpec) -> Result<Vec<ActionVector>> {
    let dim = ps.dim;
    if dim > MAX_VERTEX_DIM {
        return Err(Error::DimensionTooLarge(dim));
    }
    if dim == 0 {
        return Ok(vec![ActionVector(Vec::new())]);
    }
    let scale = ps.spec.scale();
    let forms: Vec<(Vec<f64>, f64)> = ps.constraints.iter().map(|c| c.linear_form(dim)).collect();
    let mut found: Vec<Vec<f64>> = Vec::new();
    for subset in (0..forms.len()).combinations(dim) {
        let mut a: Vec<Vec<f64>> = subset.iter().map(|&i| forms[i].0.clone()).collect();
        let mut b: Vec<f64> = subset.iter().map(|&i| -forms[i].1).collect();
        let Some(mut x) = solve_square(&mut a, &mut b, VERTEX_TOL) else {
            continue;
        };
        // -0.0 would sort below 0.0
        x.iter_mut().for_each(|v| *v += 0.0);
        if ps.constraints.iter().any(|c| c.slack(&x) < -VERTEX_TOL * scale) {
            continue;
        }
        let dup = found.iter().any(|v| {
            v.iter()
                .zip(&x)
                .all(|(p, q)| (p - q).abs() <= VERTEX_TOL * scale)
        });
        if !dup {
            found.push(x);
        }
    }
    found.sort_by(|a, b| {
        b.iter()
            .zip(a)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(found.into_iter().map(ActionVector).collect())
}

/// Gaussian elimination with partial pivoting; `None` when a pivot is at or
/// below `rank_tol`.
fn solve_square(a: &mut [Vec<f64>], b: &mut [f64], rank_tol: f64) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= rank_tol {
            return None;
        }
        a.swap(piv, col);
        b.swap(piv, col);
        let (top, bottom) = a.split_at_mut(col + 1);
        let pivot = &top[col];
        for (i, row) in bottom.iter_mut().enumerate() {
            let f = row[col] / pivot[col];
            if f == 0.0 {
                continue;
            }
            for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x -= f * p;
            }
            b[col + 1 + i] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| a[i][j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i][i];
    }
    Some(x)
}

/// Cross-checks the polytope dimension against `half_dim`.
///
/// # Panics
/// When the free-entry count disagrees with `n^2 - sum k_j^2` halved; that
/// would mean the freezing rule is wrong.
pub fn dimension_check(ps: &PolytopeSpec) -> usize {
    assert_eq!(
        ps.dim, ps.spec.half_dim,
        "free-entry count disagrees with half the orbit dimension"
    );
    assert_eq!(ps.coords.len(), ps.dim);
    ps.dim
}

/// Builds `Z` with `gt_pattern(Z) = a` by bordering `A_1 = [a_11]` one row
/// and column at a time.
///
/// With `mu` the spectrum of `A_k` and `lambda` the target row `k+1`, the
/// new border in the eigenbasis of `A_k` has
/// `|b_i|^2 = -prod_l (mu_i - lambda_l) / prod_{l != i} (mu_i - mu_l)` and
/// corner `c = sum lambda - sum mu`. Coinciding `mu` are handled by the
/// clustered limit: each cluster of size `m` cancels `m - 1` copies of its
/// value from `lambda`, and its whole weight goes to one direction.
pub fn reconstruct(ps: &PolytopeSpec, a: &ActionVector) -> Result<OrbitPoint> {
    let tol = 1e-9 * ps.spec.scale();
    if let Membership::Outside(v) = membership(ps, a, tol)? {
        return Err(Error::InfeasiblePattern { violated: v.len() });
    }
    let pattern = GTPattern::from_action(&ps.spec, a)?;
    let z = reconstruct_pattern(&pattern)?;
    Ok(OrbitPoint::new_unchecked(ps.spec.clone(), z))
}

/// Bordering on explicit pattern rows; returns the final `n x n` matrix.
pub fn reconstruct_pattern(p: &GTPattern) -> Result<HermitianMatrix> {
    reconstruct_levels(p).map(|mut levels| levels.pop().expect("n >= 1"))
}

/// All intermediate matrices `A_1, ..., A_n`.
pub fn reconstruct_levels(p: &GTPattern) -> Result<Vec<HermitianMatrix>> {
    let n = p.n();
    let cluster_tol = 1e-12 * p.spec.scale();
    let mut levels = Vec::with_capacity(n);
    let mut a = HermitianMatrix::from_diag(&[p.entry(1, 1)]);
    levels.push(a.clone());
    for k in 1..n {
        let mu = p.row(k);
        let lam = p.row(k + 1);
        let eig = eig_hermitian(&a)?;
        let b = border_weights(mu, lam, cluster_tol);
        let c = lam.iter().sum::<f64>() - mu.iter().sum::<f64>();

        let bc: Vec<C64> = b.iter().map(|&x| C64::new(x, 0.0)).collect();
        let y = eig.vectors.mul_vec(&bc);
        let mut next = CMat::zeros(k + 1);
        for i in 0..k {
            for j in 0..k {
                next[(i, j)] = a[(i, j)];
            }
            next[(i, k)] = y[i];
            next[(k, i)] = y[i].conj();
        }
        next[(k, k)] = C64::new(c, 0.0);
        a = HermitianMatrix::new(next);
        levels.push(a.clone());
    }
    Ok(levels)
}

/// Border magnitudes `b_i >= 0` in the eigenbasis ordering of `mu`
/// (descending).
fn border_weights(mu: &[f64], lam: &[f64], cluster_tol: f64) -> Vec<f64> {
    let k = mu.len();
    // cluster_roots sorts ascending; rebuild descending cluster membership
    let (reps_asc, mults_asc) = cluster_roots(mu, cluster_tol);
    let reps: Vec<f64> = reps_asc.iter().rev().copied().collect();
    let mults: Vec<usize> = mults_asc.iter().rev().copied().collect();

    let mut used = vec![false; lam.len()];
    for (&x, &m) in reps.iter().zip(&mults) {
        for _ in 1..m {
            let pick = (0..lam.len())
                .filter(|&l| !used[l])
                .min_by(|&p, &q| (lam[p] - x).abs().total_cmp(&(lam[q] - x).abs()))
                .expect("interlacing leaves enough target values");
            used[pick] = true;
        }
    }
    let reduced: Vec<f64> = (0..lam.len()).filter(|&l| !used[l]).map(|l| lam[l]).collect();

    let mut b = vec![0.0; k];
    let mut start = 0;
    for (ci, (&x, &m)) in reps.iter().zip(&mults).enumerate() {
        let num: f64 = reduced.iter().map(|&l| x - l).product();
        let den: f64 = reps
            .iter()
            .enumerate()
            .filter(|&(cj, _)| cj != ci)
            .map(|(_, &y)| x - y)
            .product();
        let weight = (-num / den).max(0.0);
        b[start] = weight.sqrt();
        start += m;
    }
    b
}
