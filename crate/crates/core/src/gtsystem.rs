//! The block Lax matrix `L(Z) = diag(L_1, ..., L_{n-1})`, Gelfand-Tsetlin
//! patterns as its spectrum, interlacing checks and the action map.
//!
//! Pattern entries are addressed 1-based as `(j, k)` with `1 <= j <= k <= n`:
//! `a_{j,k}` is the `j`-th largest eigenvalue of the leading `k x k` block.
//!
//! The free entries of a pattern are read in a fixed order: rows from
//! `k = n-1` down to `k = 1`, and left to right (`j` ascending) inside a
//! row. For `u(3)` this is `(a_12, a_22, a_11)`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::numerics::{char_poly, char_poly_cmat, eig_hermitian, CMat, HermitianMatrix, RealPolynomial};
use crate::orbit::{moment_block, OrbitPoint, OrbitSpec};

/// `L(Z)`: the leading principal blocks of sizes `1..n-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaxMatrix {
    pub blocks: Vec<HermitianMatrix>,
}

impl LaxMatrix {
    /// Total size `r = n(n-1)/2`.
    pub fn r(&self) -> usize {
        self.blocks.iter().map(|b| b.dim()).sum()
    }

    /// The block-diagonal `r x r` matrix.
    pub fn full(&self) -> CMat {
        let blocks: Vec<CMat> = self.blocks.iter().map(|b| b.as_cmat().clone()).collect();
        CMat::block_diag(&blocks)
    }

    /// `det(w 1_r - L)` computed on the full block-diagonal matrix.
    pub fn char_poly(&self) -> RealPolynomial {
        char_poly_cmat(&self.full())
    }

    /// `prod_k det(w 1_k - L_k)`.
    pub fn char_poly_factored(&self) -> RealPolynomial {
        self.blocks
            .iter()
            .fold(RealPolynomial::constant(1.0), |acc, b| acc.mul(&char_poly(b)))
    }
}

pub fn lax_matrix(z: &OrbitPoint) -> LaxMatrix {
    let n = z.n();
    let blocks = (1..n).map(|k| z.z.leading_block(k)).collect();
    LaxMatrix { blocks }
}

/// Coefficients (lowest degree first) of `det(w 1_r - (zeta 1_r + L))`,
/// i.e. the characteristic polynomial of `L` in the shifted variable
/// `w - zeta`.
pub fn shift_spectral_parameter(l: &LaxMatrix, zeta: C64) -> Vec<C64> {
    l.char_poly().shift_complex(zeta)
}

/// One interlacing inequality `a[upper] >= a[lower]`, 1-based `(j, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    pub upper: (usize, usize),
    pub lower: (usize, usize),
}

impl std::fmt::Display for Constraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "a[{},{}] >= a[{},{}]",
            self.upper.0, self.upper.1, self.lower.0, self.lower.1
        )
    }
}

/// The interlacing inequalities that involve at least one free entry.
/// Inequalities between two frozen entries hold with equality by
/// construction and are left out.
pub fn interlacing_constraints(spec: &OrbitSpec) -> Vec<Constraint> {
    let n = spec.n;
    let mut out = Vec::new();
    for k in (1..n).rev() {
        for j in 1..=k {
            let here = (j, k);
            let free_here = !spec.is_frozen(j, k);
            let above = (j, k + 1);
            let below = (j + 1, k + 1);
            if free_here || !spec.is_frozen(above.0, above.1) {
                out.push(Constraint { upper: above, lower: here });
            }
            if free_here || !spec.is_frozen(below.0, below.1) {
                out.push(Constraint { upper: here, lower: below });
            }
        }
    }
    out
}

/// Free coordinates in action-vector order.
pub fn free_coordinates(spec: &OrbitSpec) -> Vec<(usize, usize)> {
    let n = spec.n;
    let mut out = Vec::new();
    for k in (1..n).rev() {
        for j in 1..=k {
            if !spec.is_frozen(j, k) {
                out.push((j, k));
            }
        }
    }
    out
}

/// Number of free pattern entries; equals `spec.half_dim`.
pub fn free_entries(spec: &OrbitSpec) -> usize {
    free_coordinates(spec).len()
}

/// Triangular array of eigenvalues; row `k` holds `k` entries and row `n`
/// is `lambda`.
#[derive(Clone, Debug, PartialEq)]
pub struct GTPattern {
    pub spec: OrbitSpec,
    rows: Vec<Vec<f64>>,
}

impl GTPattern {
    /// Builds from explicit rows `1..=n`. Frozen entries are overwritten
    /// with their forced values and row `n` with `lambda`.
    pub fn from_rows(spec: &OrbitSpec, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = spec.n;
        if rows.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: rows.len() });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::DimensionMismatch { expected: i + 1, got: row.len() });
            }
        }
        let mut p = Self { spec: spec.clone(), rows };
        p.snap_frozen();
        Ok(p)
    }

    /// Inserts an action vector into the free slots and fills frozen slots
    /// with their forced values.
    pub fn from_action(spec: &OrbitSpec, action: &ActionVector) -> Result<Self> {
        let coords = free_coordinates(spec);
        if action.0.len() != coords.len() {
            return Err(Error::DimensionMismatch {
                expected: coords.len(),
                got: action.0.len(),
            });
        }
        let mut rows: Vec<Vec<f64>> = (1..=spec.n).map(|k| vec![0.0; k]).collect();
        for (&(j, k), &v) in coords.iter().zip(&action.0) {
            rows[k - 1][j - 1] = v;
        }
        let mut p = Self { spec: spec.clone(), rows };
        p.snap_frozen();
        Ok(p)
    }

    fn snap_frozen(&mut self) {
        let n = self.spec.n;
        for k in 1..=n {
            for j in 1..=k {
                if self.spec.is_frozen(j, k) {
                    self.rows[k - 1][j - 1] = self.spec.lambda[j - 1];
                }
            }
        }
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    /// `a_{j,k}`, 1-based.
    pub fn entry(&self, j: usize, k: usize) -> f64 {
        self.rows[k - 1][j - 1]
    }

    pub fn row(&self, k: usize) -> &[f64] {
        &self.rows[k - 1]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn is_free(&self, j: usize, k: usize) -> bool {
        k < self.spec.n && !self.spec.is_frozen(j, k)
    }

    pub fn action(&self) -> ActionVector {
        ActionVector(
            free_coordinates(&self.spec)
                .into_iter()
                .map(|(j, k)| self.entry(j, k))
                .collect(),
        )
    }

    /// All entries of rows `1..n-1`, i.e. the spectrum of `L` with
    /// multiplicity.
    pub fn lax_spectrum(&self) -> Vec<f64> {
        self.rows[..self.spec.n - 1].iter().flatten().copied().collect()
    }

    /// Number of frozen entries in rows `1..n-1` equal to each distinct
    /// eigenvalue, in block order.
    pub fn frozen_counts(&self) -> Vec<(f64, usize)> {
        let n = self.spec.n;
        self.spec
            .blocks
            .iter()
            .map(|&(v, _)| {
                let count = (1..n)
                    .flat_map(|k| (1..=k).map(move |j| (j, k)))
                    .filter(|&(j, k)| self.spec.is_frozen(j, k) && self.spec.lambda[j - 1] == v)
                    .count();
                (v, count)
            })
            .collect()
    }

    pub fn slack(&self, c: &Constraint) -> f64 {
        self.entry(c.upper.0, c.upper.1) - self.entry(c.lower.0, c.lower.1)
    }
}

/// Free pattern entries in the fixed order documented at module level.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionVector(pub Vec<f64>);

impl ActionVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

pub fn gt_pattern(z: &OrbitPoint) -> Result<GTPattern> {
    let n = z.n();
    let mut rows = Vec::with_capacity(n);
    for k in 1..n {
        rows.push(eig_hermitian(&moment_block(z, k)?)?.values);
    }
    rows.push(z.spec.lambda.clone());
    GTPattern::from_rows(&z.spec, rows)
}

pub fn action_map(z: &OrbitPoint) -> Result<ActionVector> {
    Ok(gt_pattern(z)?.action())
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct InterlacingReport {
    pub ok: bool,
    /// Every checked constraint with its slack `a[upper] - a[lower]`.
    pub slacks: Vec<(Constraint, f64)>,
    pub saturated: Vec<Constraint>,
    pub violated: Vec<Constraint>,
}

/// A constraint is violated when its slack is below `-tol` and saturated
/// when `|slack| <= tol`.
pub fn check_interlacing(p: &GTPattern, tol: f64) -> InterlacingReport {
    let mut rep = InterlacingReport::default();
    for c in interlacing_constraints(&p.spec) {
        let s = p.slack(&c);
        if s < -tol {
            rep.violated.push(c);
        } else if s <= tol {
            rep.saturated.push(c);
        }
        rep.slacks.push((c, s));
    }
    rep.ok = rep.violated.is_empty();
    rep
}

/// `Z` lies in the regular locus: every free entry is separated from its
/// interlacing neighbors by more than `tol`.
pub fn is_regular(z: &OrbitPoint, tol: f64) -> Result<bool> {
    let p = gt_pattern(z)?;
    Ok(interlacing_constraints(&p.spec)
        .iter()
        .all(|c| p.slack(c) > tol))
}

/// Eigenvalues of `ad(L_k)` off the Cartan: the `k(k-1)` differences
/// `mu_i - mu_j`, `i != j`, sorted descending.
pub fn adjoint_spectrum(block: &HermitianMatrix) -> Result<Vec<f64>> {
    let k = block.dim();
    if k < 2 {
        return Err(Error::InvalidArgument(
            "adjoint spectrum needs a block of size >= 2".into(),
        ));
    }
    let mu = eig_hermitian(block)?.values;
    let mut out = Vec::with_capacity(k * (k - 1));
    for i in 0..k {
        for j in 0..k {
            if i != j {
                out.push(mu[i] - mu[j]);
            }
        }
    }
    out.sort_by(|a, b| b.total_cmp(a));
    Ok(out)
}
