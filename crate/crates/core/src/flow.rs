//! Hamiltonian flows of collective Hamiltonians `H = F o Phi_k` written as
//! zero-curvature equations `dZ/dt = [S(Z), Z]` with `S = i pad(grad F(L_k))`.
//!
//! Two integrators: `Rk4Direct` steps the matrix ODE with classical RK4 and
//! so drifts off the orbit at `O(dt^4)`; `LieMidpoint` conjugates by
//! `exp(dt S(Z_mid))` and is isospectral up to rounding.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::gtsystem::{free_coordinates, gt_pattern};
use crate::numerics::{eig_hermitian, expm, CMat, HermitianMatrix};
use crate::orbit::{eigen_gap, moment_block, EigenvalueFunction, OrbitFunction, OrbitPoint};

/// Eigenvalue Hamiltonians refuse to step when the gap falls below this
/// fraction of the spectral diameter.
pub const FLOW_GAP_REL: f64 = 1e-6;
/// Step-doubling error bound for `Rk4Direct`.
pub const RK4_LOCAL_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq)]
pub enum HamiltonianKind {
    /// `Tr(A^m)`
    TracePower(u32),
    /// `Re Tr(C A)` for a Hermitian `C` of the level size.
    Linear(HermitianMatrix),
    /// `Lambda_j(A)`, 1-based.
    Eigenvalue(usize),
}

/// `H(Z) = F(L_k(Z))` for the level-`k` block.
#[derive(Clone, Debug, PartialEq)]
pub struct CollectiveHamiltonian {
    pub level: usize,
    pub kind: HamiltonianKind,
}

impl CollectiveHamiltonian {
    pub fn trace_power(level: usize, m: u32) -> Self {
        Self { level, kind: HamiltonianKind::TracePower(m) }
    }

    pub fn linear(c: HermitianMatrix) -> Self {
        Self { level: c.dim(), kind: HamiltonianKind::Linear(c) }
    }

    pub fn eigenvalue(level: usize, j: usize) -> Self {
        Self { level, kind: HamiltonianKind::Eigenvalue(j) }
    }

    /// `F` on a `k x k` Hermitian argument.
    pub fn block_value(&self, a: &HermitianMatrix) -> Result<f64> {
        match &self.kind {
            HamiltonianKind::TracePower(m) => Ok(matrix_power(a.as_cmat(), *m).trace().re),
            HamiltonianKind::Linear(c) => Ok(c.pairing(a)),
            HamiltonianKind::Eigenvalue(j) => {
                let vals = eig_hermitian(a)?.values;
                vals.get(j.wrapping_sub(1)).copied().ok_or(Error::IndexOutOfRange {
                    index: *j,
                    max: vals.len(),
                })
            }
        }
    }

    /// `grad F` on a `k x k` Hermitian argument.
    pub fn block_gradient(&self, a: &HermitianMatrix, diameter: f64) -> Result<HermitianMatrix> {
        match &self.kind {
            HamiltonianKind::TracePower(0) => Ok(HermitianMatrix::zeros(a.dim())),
            HamiltonianKind::TracePower(m) => Ok(HermitianMatrix::new(
                matrix_power(a.as_cmat(), m - 1).scale_real(*m as f64),
            )),
            HamiltonianKind::Linear(c) => {
                if c.dim() != a.dim() {
                    return Err(Error::DimensionMismatch { expected: a.dim(), got: c.dim() });
                }
                Ok(c.clone())
            }
            HamiltonianKind::Eigenvalue(j) => {
                let k = a.dim();
                if *j == 0 || *j > k {
                    return Err(Error::IndexOutOfRange { index: *j, max: k });
                }
                let eig = eig_hermitian(a)?;
                let gap = eigen_gap(&eig.values, j - 1);
                let tol = crate::orbit::SIMPLE_GAP_REL * diameter;
                if gap <= tol {
                    return Err(Error::NearDegenerateEigenvalue { level: k, index: *j, gap, tol });
                }
                Ok(HermitianMatrix::new(CMat::outer(&eig.vector(j - 1))))
            }
        }
    }
}

impl OrbitFunction for CollectiveHamiltonian {
    fn value(&self, z: &OrbitPoint) -> Result<f64> {
        self.block_value(&moment_block(z, self.level)?)
    }

    fn gradient(&self, z: &OrbitPoint) -> Result<HermitianMatrix> {
        let g = self.block_gradient(&moment_block(z, self.level)?, z.spec.diameter())?;
        Ok(g.pad_to(z.n()))
    }
}

fn matrix_power(a: &CMat, m: u32) -> CMat {
    let mut out = CMat::identity(a.dim());
    for _ in 0..m {
        out = &out * a;
    }
    out
}

/// `S = i pad(grad F(L_k(Z)))`, skew-Hermitian `n x n`.
pub fn generator(z: &OrbitPoint, h: &CollectiveHamiltonian) -> Result<CMat> {
    Ok(h.gradient(z)?.as_cmat().scale(C64::new(0.0, 1.0)))
}

/// `X_H(Z) = [S, Z]`.
pub fn hamiltonian_vector_field(z: &OrbitPoint, h: &CollectiveHamiltonian) -> Result<HermitianMatrix> {
    let s = generator(z, h)?;
    Ok(HermitianMatrix::new(s.commutator(z.z.as_cmat())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Rk4Direct,
    LieMidpoint,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::Rk4Direct => "rk4_direct",
            Method::LieMidpoint => "lie_midpoint",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegrateOptions {
    /// Midpoint evaluations of `S` per Lie step, `1..=5`.
    pub corrector_passes: usize,
    /// Step-doubling bound for RK4; `None` disables the check.
    pub rk4_local_tol: Option<f64>,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self {
            corrector_passes: 1,
            rk4_local_tol: Some(RK4_LOCAL_TOL),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub points: Vec<OrbitPoint>,
    pub hamiltonian: CollectiveHamiltonian,
    pub method: Method,
    pub dt: f64,
}

fn conjugate_exp(z: &OrbitPoint, s: &CMat, h: f64) -> OrbitPoint {
    z.conjugated(&expm(&s.scale_real(h)))
}

fn check_flow_gap(z: &OrbitPoint, h: &CollectiveHamiltonian) -> Result<()> {
    if let HamiltonianKind::Eigenvalue(j) = h.kind {
        let vals = eig_hermitian(&moment_block(z, h.level)?)?.values;
        if j == 0 || j > vals.len() {
            return Err(Error::IndexOutOfRange { index: j, max: vals.len() });
        }
        let gap = eigen_gap(&vals, j - 1);
        let tol = FLOW_GAP_REL * z.spec.diameter();
        if gap < tol {
            return Err(Error::NearDegenerateEigenvalue { level: h.level, index: j, gap, tol });
        }
    }
    Ok(())
}

/// One exponential-midpoint step of signed size `h`:
/// `Z' = exp(h S_mid) Z exp(-h S_mid)` with `S_mid` refined by `passes`
/// fixed-point evaluations at the half-step point.
pub fn lie_midpoint_step(z: &OrbitPoint, ham: &CollectiveHamiltonian, h: f64, passes: usize) -> Result<OrbitPoint> {
    let mut s = generator(z, ham)?;
    for _ in 0..passes.max(1) {
        let mid = conjugate_exp(z, &s, 0.5 * h);
        s = generator(&mid, ham)?;
    }
    Ok(conjugate_exp(z, &s, h))
}

/// One classical RK4 step of `dZ/dt = [S(Z), Z]`.
pub fn rk4_step(z: &OrbitPoint, ham: &CollectiveHamiltonian, h: f64) -> Result<OrbitPoint> {
    let field = |m: &CMat| -> Result<CMat> {
        let p = OrbitPoint::new_unchecked(z.spec.clone(), HermitianMatrix::new(m.clone()));
        Ok(hamiltonian_vector_field(&p, ham)?.into_cmat())
    };
    let z0 = z.z.as_cmat();
    let k1 = field(z0)?;
    let k2 = field(&(z0 + &k1.scale_real(0.5 * h)))?;
    let k3 = field(&(z0 + &k2.scale_real(0.5 * h)))?;
    let k4 = field(&(z0 + &k3.scale_real(h)))?;
    let incr = &(&k1 + &k4) + &(&k2 + &k3).scale_real(2.0);
    let next = z0 + &incr.scale_real(h / 6.0);
    Ok(OrbitPoint::new_unchecked(z.spec.clone(), HermitianMatrix::new(next)))
}

pub fn integrate(
    z0: &OrbitPoint,
    ham: &CollectiveHamiltonian,
    dt: f64,
    t_final: f64,
    method: Method,
) -> Result<Trajectory> {
    integrate_with(z0, ham, dt, t_final, method, IntegrateOptions::default())
}

/// Integrates on `[0, t_final]` with steps of `dt` (the last step is
/// shortened to land on `t_final`).
pub fn integrate_with(
    z0: &OrbitPoint,
    ham: &CollectiveHamiltonian,
    dt: f64,
    t_final: f64,
    method: Method,
    opts: IntegrateOptions,
) -> Result<Trajectory> {
    let mut traj = Trajectory {
        times: Vec::new(),
        points: Vec::new(),
        hamiltonian: ham.clone(),
        method,
        dt,
    };
    integrate_streaming(z0, ham, dt, t_final, method, opts, |t, z| {
        traj.times.push(t);
        traj.points.push(z.clone());
        Ok(())
    })?;
    Ok(traj)
}

/// Like [`integrate_with`] but hands each `(t, Z_t)`, starting with
/// `(0, z0)`, to `sink` instead of storing it. Points accepted before a
/// failure have already been delivered when the error is returned. Returns
/// the number of steps taken.
pub fn integrate_streaming<F>(
    z0: &OrbitPoint,
    ham: &CollectiveHamiltonian,
    dt: f64,
    t_final: f64,
    method: Method,
    opts: IntegrateOptions,
    mut sink: F,
) -> Result<usize>
where
    F: FnMut(f64, &OrbitPoint) -> Result<()>,
{
    if !(dt > 0.0 && t_final >= dt) {
        return Err(Error::InvalidArgument(format!(
            "need dt > 0 and t_final >= dt (dt = {dt}, t_final = {t_final})"
        )));
    }
    if !(1..=5).contains(&opts.corrector_passes) {
        return Err(Error::InvalidArgument("corrector passes must be in 1..=5".into()));
    }
    let steps = ((t_final / dt) - 1e-9).ceil() as usize;
    sink(0.0, z0)?;
    let mut z = z0.clone();
    for i in 0..steps {
        let t = i as f64 * dt;
        let last = i + 1 == steps;
        let h = if last { t_final - t } else { dt };
        check_flow_gap(&z, ham)?;
        z = match method {
            Method::LieMidpoint => lie_midpoint_step(&z, ham, h, opts.corrector_passes)?,
            Method::Rk4Direct => {
                let full = rk4_step(&z, ham, h)?;
                if let Some(tol) = opts.rk4_local_tol {
                    let half = rk4_step(&rk4_step(&z, ham, 0.5 * h)?, ham, 0.5 * h)?;
                    let est = full.z.as_cmat().max_abs_diff(half.z.as_cmat());
                    if est > tol {
                        return Err(Error::StepRejected { t, estimate: est });
                    }
                }
                full
            }
        };
        sink(if last { t_final } else { t + h }, &z)?;
    }
    Ok(steps)
}

impl Trajectory {
    /// `max_t max_i |lambda_i(Z_t) - lambda_i|` over the full matrix.
    pub fn spectral_drift(&self) -> Result<f64> {
        let lam = &self.points[0].spec.lambda;
        let mut worst: f64 = 0.0;
        for p in &self.points {
            let vals = eig_hermitian(&p.z)?.values;
            for (a, b) in vals.iter().zip(lam) {
                worst = worst.max((a - b).abs());
            }
        }
        Ok(worst)
    }

    /// Per row `k = 1..n`, the largest change of the block-`k` spectrum.
    pub fn row_drifts(&self) -> Result<Vec<f64>> {
        let n = self.points[0].n();
        let spectra = |p: &OrbitPoint| -> Result<Vec<Vec<f64>>> {
            (1..=n).map(|k| Ok(eig_hermitian(&moment_block(p, k)?)?.values)).collect()
        };
        let base = spectra(&self.points[0])?;
        let mut drift = vec![0.0f64; n];
        for p in &self.points[1..] {
            let cur = spectra(p)?;
            for k in 0..n {
                for (a, b) in cur[k].iter().zip(&base[k]) {
                    drift[k] = drift[k].max((a - b).abs());
                }
            }
        }
        Ok(drift)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Drift {
    pub name: String,
    pub max_drift: f64,
}

/// `max_t |q(Z_t) - q(Z_0)|` per quantity, sorted by drift descending.
pub fn conservation_report(traj: &Trajectory, quantities: &[(&str, &dyn OrbitFunction)]) -> Result<Vec<Drift>> {
    let mut out = Vec::with_capacity(quantities.len());
    for (name, q) in quantities {
        let q0 = q.value(&traj.points[0])?;
        let mut worst: f64 = 0.0;
        for p in &traj.points[1..] {
            worst = worst.max((q.value(p)? - q0).abs());
        }
        out.push(Drift { name: name.to_string(), max_drift: worst });
    }
    out.sort_by(|a, b| b.max_drift.total_cmp(&a.max_drift));
    Ok(out)
}

/// Every free GT entry as a named eigenvalue function, in action order.
pub fn gt_quantities(z: &OrbitPoint) -> Vec<(String, EigenvalueFunction)> {
    free_coordinates(&z.spec)
        .into_iter()
        .map(|(j, k)| (format!("a[{j},{k}]"), EigenvalueFunction { level: k, index: j }))
        .collect()
}

/// Max drift of the free GT entries along a trajectory, via patterns.
pub fn gt_drift(traj: &Trajectory) -> Result<f64> {
    let a0 = gt_pattern(&traj.points[0])?.action();
    let mut worst: f64 = 0.0;
    for p in &traj.points[1..] {
        let a = gt_pattern(p)?.action();
        for (x, y) in a.values().iter().zip(a0.values()) {
            worst = worst.max((x - y).abs());
        }
    }
    Ok(worst)
}

/// Closed-form and Lax-integrated harmonic oscillator
/// `L = [[p, C q], [C q, -p]]`, `P = (1/2) [[0, -C], [C, 0]]`,
/// `dL/dt = [P, L]`.
#[derive(Clone, Debug)]
pub struct OscillatorRun {
    pub times: Vec<f64>,
    /// `(q, p)` from `q0 cos(Ct) + (p0/C) sin(Ct)`.
    pub exact: Vec<(f64, f64)>,
    /// `(q, p)` read off `L(t)` as `(L_12 / C, L_11)`.
    pub lax: Vec<(f64, f64)>,
    /// Eigenvalues of `L(t)`, descending.
    pub eigenvalues: Vec<(f64, f64)>,
    /// `(1/4) Tr(L^2)`.
    pub energy: Vec<f64>,
}

pub fn oscillator_lax(q: f64, p: f64, c: f64) -> HermitianMatrix {
    HermitianMatrix::from_real_rows(&[&[p, c * q], &[c * q, -p]])
}

pub fn oscillator_energy(l: &HermitianMatrix) -> f64 {
    0.25 * (l.as_cmat() * l.as_cmat()).trace().re
}

pub fn harmonic_oscillator(q0: f64, p0: f64, c: f64, dt: f64, t_final: f64) -> Result<OscillatorRun> {
    if c == 0.0 {
        return Err(Error::InvalidArgument("oscillator constant C must be nonzero".into()));
    }
    if !(dt > 0.0 && t_final >= dt) {
        return Err(Error::InvalidArgument("need dt > 0 and t_final >= dt".into()));
    }
    let p_mat = CMat::from_real_rows(&[&[0.0, -0.5 * c], &[0.5 * c, 0.0]]);
    let step = expm(&p_mat.scale_real(dt));
    let steps = ((t_final / dt) - 1e-9).ceil() as usize;
    let mut run = OscillatorRun {
        times: Vec::with_capacity(steps + 1),
        exact: Vec::with_capacity(steps + 1),
        lax: Vec::with_capacity(steps + 1),
        eigenvalues: Vec::with_capacity(steps + 1),
        energy: Vec::with_capacity(steps + 1),
    };
    let mut l = oscillator_lax(q0, p0, c);
    for i in 0..=steps {
        let t = if i == steps { t_final } else { i as f64 * dt };
        if i > 0 {
            let e = if i == steps {
                expm(&p_mat.scale_real(t - run.times[i - 1]))
            } else {
                step.clone()
            };
            l = l.conjugate_by(&e);
        }
        let (s, co) = (c * t).sin_cos();
        let q = q0 * co + p0 / c * s;
        let qd = -q0 * c * s + p0 * co;
        let eig = eig_hermitian(&l)?.values;
        run.times.push(t);
        run.exact.push((q, qd));
        run.lax.push((l[(0, 1)].re / c, l[(0, 0)].re));
        run.eigenvalues.push((eig[0], eig[1]));
        run.energy.push(oscillator_energy(&l));
    }
    Ok(run)
}
