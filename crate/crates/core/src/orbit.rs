//! Adjoint orbits `O(Lambda)` of `U(n)` in the Hermitian picture: orbit
//! descriptors, Haar sampling, `U(k)` moment maps, the KKS form and
//! Poisson brackets of functions given by their gradients.
//!
//! Sign conventions. A tangent vector at `Z` is generated by a
//! skew-Hermitian `S` as `V = [S, Z]`. The Hamiltonian generator of `f` is
//! `S_f = i grad f(Z)`, and
//!
//! ```text
//! {f, g}(Z) = Im Tr(Z [grad f, grad g]) = omega(X_f, X_g)
//! ```
//!
//! so that `d/dt g(phi^f_t(Z)) = {f, g}(Z)` along the flow of `f`.

use num_complex::Complex64 as C64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::numerics::{diameter, eig_hermitian, random_unitary, CMat, HermitianMatrix};

/// Relative eigenvalue gap below which an eigenvalue is treated as not
/// simple.
pub const SIMPLE_GAP_REL: f64 = 1e-8;

/// Eigenvalue data of an adjoint orbit: `lambda` sorted descending, grouped
/// into blocks of exactly equal values.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitSpec {
    pub n: usize,
    pub lambda: Vec<f64>,
    /// `(value, multiplicity)` per distinct eigenvalue, descending.
    pub blocks: Vec<(f64, usize)>,
    pub orbit_dim: usize,
    pub half_dim: usize,
}

impl OrbitSpec {
    /// Sorts descending and groups exactly equal values. Values that are only
    /// numerically close stay in separate blocks.
    pub fn new(lambda: &[f64]) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::InvalidArgument("lambda must be nonempty".into()));
        }
        if lambda.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("lambda entries must be finite".into()));
        }
        let mut sorted = lambda.to_vec();
        sorted.sort_by(|a, b| b.total_cmp(a));
        let mut blocks: Vec<(f64, usize)> = Vec::new();
        for &v in &sorted {
            match blocks.last_mut() {
                Some((val, k)) if *val == v => *k += 1,
                _ => blocks.push((v, 1)),
            }
        }
        let n = sorted.len();
        let orbit_dim = n * n - blocks.iter().map(|&(_, k)| k * k).sum::<usize>();
        Ok(Self {
            n,
            lambda: sorted,
            blocks,
            orbit_dim,
            half_dim: orbit_dim / 2,
        })
    }

    pub fn is_regular(&self) -> bool {
        self.blocks.len() == self.n
    }

    /// `lambda_1 - lambda_n`
    pub fn diameter(&self) -> f64 {
        diameter(&self.lambda)
    }

    /// Positive length scale for relative tolerances.
    pub fn scale(&self) -> f64 {
        let d = self.diameter();
        if d > 0.0 {
            d
        } else {
            self.lambda.iter().fold(1.0f64, |m, v| m.max(v.abs()))
        }
    }

    /// Whether GT entry `(j, k)` (1-based, `j <= k <= n`) is pinned to
    /// `lambda_j` by repeated eigenvalues: `lambda_j == lambda_{j+n-k}`.
    pub fn is_frozen(&self, j: usize, k: usize) -> bool {
        debug_assert!(1 <= j && j <= k && k <= self.n);
        self.lambda[j - 1] == self.lambda[j + self.n - k - 1]
    }

    /// `m_j = k_j (k_j - 1) / 2` per block: how often each repeated
    /// eigenvalue occurs among the frozen entries of rows `1..n-1`.
    pub fn frozen_multiplicities(&self) -> Vec<(f64, usize)> {
        self.blocks
            .iter()
            .map(|&(v, k)| (v, k * (k - 1) / 2))
            .collect()
    }
}

/// A point `Z` of `O(Lambda)`: a Hermitian matrix with spectrum `lambda`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitPoint {
    pub spec: OrbitSpec,
    pub z: HermitianMatrix,
}

impl OrbitPoint {
    /// Checks `spectrum(z) == spec.lambda` to `1e-8` relative to
    /// `spec.scale()`.
    pub fn new(spec: OrbitSpec, z: HermitianMatrix) -> Result<Self> {
        if z.dim() != spec.n {
            return Err(Error::DimensionMismatch {
                expected: spec.n,
                got: z.dim(),
            });
        }
        let eig = eig_hermitian(&z)?;
        let err = eig
            .values
            .iter()
            .zip(&spec.lambda)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        if err > 1e-8 * spec.scale() {
            return Err(Error::InvalidArgument(format!(
                "matrix spectrum differs from lambda by {err:e}"
            )));
        }
        Ok(Self { spec, z })
    }

    /// Skips the spectrum check (used by integrators, whose drift is measured
    /// separately).
    pub fn new_unchecked(spec: OrbitSpec, z: HermitianMatrix) -> Self {
        Self { spec, z }
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    /// The diagonal point `diag(lambda)`.
    pub fn diagonal(spec: &OrbitSpec) -> Self {
        Self {
            z: HermitianMatrix::from_diag(&spec.lambda),
            spec: spec.clone(),
        }
    }

    /// `Z` in the skew-Hermitian picture, `i Z`.
    pub fn skew(&self) -> CMat {
        self.z.as_cmat().scale(C64::new(0.0, 1.0))
    }

    /// `exp(S) Z exp(-S)` for a skew-Hermitian (or any) generator.
    pub fn conjugated(&self, u: &CMat) -> Self {
        Self {
            spec: self.spec.clone(),
            z: self.z.conjugate_by(u),
        }
    }
}

/// `Z = U diag(lambda) U^dagger` with `U` Haar-distributed.
pub fn sample_point<R: Rng + ?Sized>(spec: &OrbitSpec, rng: &mut R) -> OrbitPoint {
    if spec.blocks.len() == 1 {
        return OrbitPoint::diagonal(spec);
    }
    let u = random_unitary(spec.n, rng);
    OrbitPoint {
        spec: spec.clone(),
        z: HermitianMatrix::from_diag(&spec.lambda).conjugate_by(&u),
    }
}

/// `U(k)` moment map: the leading `k x k` principal submatrix.
pub fn moment_block(z: &OrbitPoint, k: usize) -> Result<HermitianMatrix> {
    if k == 0 || k > z.n() {
        return Err(Error::IndexOutOfRange {
            index: k,
            max: z.n(),
        });
    }
    Ok(z.z.leading_block(k))
}

/// Tangent vector `V = [S, Z]` carrying its skew-Hermitian generator `S`.
#[derive(Clone, Debug)]
pub struct TangentVector {
    pub base: OrbitPoint,
    pub generator: CMat,
    pub v: HermitianMatrix,
}

impl TangentVector {
    /// Projects `s` onto its skew-Hermitian part `(S - S^dagger)/2`.
    pub fn from_generator(base: &OrbitPoint, s: &CMat) -> Self {
        let skew = (s - &s.adjoint()).scale_real(0.5);
        let v = HermitianMatrix::new(skew.commutator(base.z.as_cmat()));
        Self {
            base: base.clone(),
            generator: skew,
            v,
        }
    }

    /// Generator `S = i H` for a Hermitian `H`.
    pub fn from_hermitian(base: &OrbitPoint, h: &HermitianMatrix) -> Self {
        Self::from_generator(base, &h.as_cmat().scale(C64::new(0.0, 1.0)))
    }

    pub fn scaled(&self, a: f64) -> Self {
        Self {
            base: self.base.clone(),
            generator: self.generator.scale_real(a),
            v: self.v.scale(a),
        }
    }
}

/// `omega(u, v) = -(Z_skew, [S_u, S_v])` with `(A, B) = -Re Tr(A B)`, i.e.
/// `Re Tr(i Z [S_u, S_v])`.
pub fn kks_form(u: &TangentVector, v: &TangentVector) -> Result<f64> {
    if u.base.z != v.base.z {
        return Err(Error::MismatchedBasePoint);
    }
    let bracket = u.generator.commutator(&v.generator);
    Ok((&u.base.skew() * &bracket).trace().re)
}

/// Gap of eigenvalue `idx` (0-based) to its neighbors in a descending list.
pub(crate) fn eigen_gap(values: &[f64], idx: usize) -> f64 {
    let mut gap = f64::INFINITY;
    if idx > 0 {
        gap = gap.min(values[idx - 1] - values[idx]);
    }
    if idx + 1 < values.len() {
        gap = gap.min(values[idx] - values[idx + 1]);
    }
    gap
}

/// Gradient of `Lambda_j(L_k(Z))` (1-based `j <= k`): the projector
/// `v_j v_j^dagger` of the `k x k` block, padded with zeros to `n x n`.
pub fn grad_eigenvalue(z: &OrbitPoint, k: usize, j: usize) -> Result<HermitianMatrix> {
    let block = moment_block(z, k)?;
    if j == 0 || j > k {
        return Err(Error::IndexOutOfRange { index: j, max: k });
    }
    let eig = eig_hermitian(&block)?;
    let gap = eigen_gap(&eig.values, j - 1);
    let tol = SIMPLE_GAP_REL * z.spec.diameter();
    if gap <= tol {
        return Err(Error::NearDegenerateEigenvalue {
            level: k,
            index: j,
            gap,
            tol,
        });
    }
    let proj = CMat::outer(&eig.vector(j - 1));
    Ok(HermitianMatrix::new(proj.pad_to(z.n())))
}

/// A smooth function on the orbit exposing value and gradient. The gradient
/// is taken with respect to the pairing `df(Z)[V] = Re Tr(grad f . V)`.
pub trait OrbitFunction {
    fn value(&self, z: &OrbitPoint) -> Result<f64>;
    fn gradient(&self, z: &OrbitPoint) -> Result<HermitianMatrix>;
}

/// The GT entry `a_{j,k} = Lambda_j(L_k(Z))`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EigenvalueFunction {
    pub level: usize,
    pub index: usize,
}

impl OrbitFunction for EigenvalueFunction {
    fn value(&self, z: &OrbitPoint) -> Result<f64> {
        let block = moment_block(z, self.level)?;
        if self.index == 0 || self.index > self.level {
            return Err(Error::IndexOutOfRange {
                index: self.index,
                max: self.level,
            });
        }
        Ok(eig_hermitian(&block)?.values[self.index - 1])
    }

    fn gradient(&self, z: &OrbitPoint) -> Result<HermitianMatrix> {
        grad_eigenvalue(z, self.level, self.index)
    }
}

/// `f(Z) = Re Tr(C Z)` for a fixed Hermitian `C`; `grad f = C`.
#[derive(Clone, Debug)]
pub struct LinearFunction {
    pub c: HermitianMatrix,
}

impl LinearFunction {
    /// `Re Z_{ab}` (0-based) as a linear function.
    pub fn real_entry(n: usize, a: usize, b: usize) -> Self {
        let mut c = CMat::zeros(n);
        c[(a, b)] += C64::new(0.5, 0.0);
        c[(b, a)] += C64::new(0.5, 0.0);
        Self {
            c: HermitianMatrix::new(c),
        }
    }
}

impl OrbitFunction for LinearFunction {
    fn value(&self, z: &OrbitPoint) -> Result<f64> {
        Ok(self.c.pairing(&z.z))
    }

    fn gradient(&self, _z: &OrbitPoint) -> Result<HermitianMatrix> {
        Ok(self.c.clone())
    }
}

/// Pointwise product `f g`, with `grad(f g) = f grad g + g grad f`.
pub struct Product<'a> {
    pub f: &'a dyn OrbitFunction,
    pub g: &'a dyn OrbitFunction,
}

impl OrbitFunction for Product<'_> {
    fn value(&self, z: &OrbitPoint) -> Result<f64> {
        Ok(self.f.value(z)? * self.g.value(z)?)
    }

    fn gradient(&self, z: &OrbitPoint) -> Result<HermitianMatrix> {
        let (fv, gv) = (self.f.value(z)?, self.g.value(z)?);
        let a = self.g.gradient(z)?.scale(fv);
        let b = self.f.gradient(z)?.scale(gv);
        Ok(HermitianMatrix::new(a.as_cmat() + b.as_cmat()))
    }
}

/// `{f, g}(Z) = Im Tr(Z [grad f, grad g])`.
pub fn poisson_bracket(
    f: &dyn OrbitFunction,
    g: &dyn OrbitFunction,
    z: &OrbitPoint,
) -> Result<f64> {
    let gf = f.gradient(z)?;
    let gg = g.gradient(z)?;
    Ok(bracket_of_gradients(z, &gf, &gg))
}

pub(crate) fn bracket_of_gradients(z: &OrbitPoint, gf: &HermitianMatrix, gg: &HermitianMatrix) -> f64 {
    let comm = gf.as_cmat().commutator(gg.as_cmat());
    (z.z.as_cmat() * &comm).trace().im
}
