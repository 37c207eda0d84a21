//! Hyperelliptic spectral curves `zeta^2 = F(w)` whose branch points are the
//! free Gelfand-Tsetlin entries: discriminant, classification, degenerations,
//! genus and period lattices.
//!
//! Periods are taken over the loops around consecutive branch-point gaps
//! `[e_m, e_{m+1}]`, `m = 1..2g`. This spans a period lattice but is not a
//! normalized symplectic basis.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::gtsystem::{gt_pattern, lax_matrix, GTPattern};
use crate::numerics::{
    cluster_roots, default_cluster_tol, diameter, discriminant_from_roots, eig_hermitian,
    gauss_periodic_quadrature, HermitianMatrix, RealPolynomial,
};
use crate::orbit::OrbitPoint;
use crate::polytope::{membership, reconstruct_pattern, Membership, PolytopeSpec};

/// Coefficientwise agreement required between the root product and the
/// divided characteristic polynomial, relative to the largest coefficient.
pub const CROSS_CHECK_TOL: f64 = 1e-7;
/// Periods refuse to run when two branch points are closer than this
/// fraction of the root diameter.
pub const MIN_GAP_REL: f64 = 1e-6;
/// Relative singular-value threshold for the lattice rank.
pub const RANK_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralCurve {
    /// Monic `F(w) = prod (w - a)` over the free entries.
    pub poly: RealPolynomial,
    /// Free entries, ascending.
    pub roots: Vec<f64>,
    /// `(lambda value, multiplicity)` removed from `det(w - L)`.
    pub frozen_divisors: Vec<(f64, usize)>,
    pub disc: f64,
    pub degree: usize,
    /// No two roots within [`default_cluster_tol`].
    pub smooth: bool,
    /// Largest relative coefficient mismatch seen by the cross-check.
    pub cross_check_residual: f64,
}

impl SpectralCurve {
    /// Builds `F` from roots only, without the characteristic-polynomial
    /// cross-check.
    pub fn from_roots(roots: &[f64]) -> Result<Self> {
        let mut sorted = roots.to_vec();
        sorted.sort_by(f64::total_cmp);
        let poly = RealPolynomial::from_roots(&sorted);
        let disc = discriminant_from_roots(&sorted);
        let tol = default_cluster_tol(&sorted);
        let (_, mults) = cluster_roots(&sorted, tol);
        Ok(Self {
            poly,
            degree: sorted.len(),
            smooth: mults.iter().all(|&m| m == 1),
            roots: sorted,
            frozen_divisors: Vec::new(),
            disc,
            cross_check_residual: 0.0,
        })
    }

    pub fn eval(&self, w: f64) -> f64 {
        self.poly.eval(w)
    }
}

fn divide_frozen(full: &RealPolynomial, frozen: &[(f64, usize)]) -> RealPolynomial {
    let mut q = full.clone();
    for &(v, m) in frozen {
        for _ in 0..m {
            q = q.divide_linear(v).0;
        }
    }
    q
}

fn build_curve(pattern: &GTPattern, lax_char: &RealPolynomial) -> Result<SpectralCurve> {
    let roots = pattern.action().0;
    let mut curve = SpectralCurve::from_roots(&roots)?;
    let frozen: Vec<(f64, usize)> = pattern.frozen_counts().into_iter().filter(|&(_, m)| m > 0).collect();
    let divided = divide_frozen(lax_char, &frozen);
    let a = curve.poly.coeffs();
    let b = divided.coeffs();
    let scale = a.iter().chain(b).fold(1.0f64, |m, c| m.max(c.abs()));
    let len = a.len().max(b.len());
    let residual = (0..len)
        .map(|i| (a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0)).abs())
        .fold(0.0, f64::max)
        / scale;
    if residual > CROSS_CHECK_TOL {
        return Err(Error::SpectralCrossCheck { residual });
    }
    curve.frozen_divisors = frozen;
    curve.cross_check_residual = residual;
    Ok(curve)
}

/// `F` from the free entries of `pattern`, cross-checked against
/// `det(w - L)` of a matrix reconstructed from the pattern with the frozen
/// factors divided out.
pub fn spectral_poly(pattern: &GTPattern) -> Result<SpectralCurve> {
    let z = reconstruct_pattern(pattern)?;
    let point = OrbitPoint::new_unchecked(pattern.spec.clone(), z);
    build_curve(pattern, &lax_matrix(&point).char_poly())
}

/// `F` at an orbit point; the cross-check uses `L(Z)` directly.
pub fn spectral_curve(z: &OrbitPoint) -> Result<SpectralCurve> {
    let pattern = gt_pattern(z)?;
    build_curve(&pattern, &lax_matrix(z).char_poly())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    /// The pattern lies on the polytope boundary.
    pub critical: bool,
    pub membership: Membership,
    /// Saturated constraints, rendered as `upper >= lower`.
    pub saturated: Vec<String>,
    pub disc: f64,
    /// Some pair of free entries coincides within `tol * max(diameter, 1)`.
    pub disc_zero: bool,
}

/// Boundary test (authoritative for criticality) with the discriminant
/// reported alongside.
pub fn classify(pattern: &GTPattern, tol: f64) -> Result<Classification> {
    let ps = PolytopeSpec::new(&pattern.spec);
    let action = pattern.action();
    let scale = pattern.spec.scale();
    let m = membership(&ps, &action, tol * scale)?;
    let saturated = match &m {
        Membership::Boundary(idx) => idx.iter().map(|&i| ps.constraints[i].source.to_string()).collect(),
        _ => Vec::new(),
    };
    let roots = action.0;
    let disc = if roots.is_empty() { 1.0 } else { discriminant_from_roots(&roots) };
    let (_, mults) = cluster_roots(&roots, tol * diameter(&roots).max(1.0));
    Ok(Classification {
        critical: matches!(m, Membership::Boundary(_)),
        membership: m,
        saturated,
        disc,
        disc_zero: mults.iter().any(|&k| k > 1),
    })
}

/// `floor((d - 1) / 2)` for a smooth curve.
pub fn genus(curve: &SpectralCurve) -> Result<usize> {
    if !curve.smooth {
        return Err(Error::SingularCurve);
    }
    Ok(curve.degree.saturating_sub(1) / 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegenerationReport {
    /// Cluster sizes in ascending root order.
    pub multiplicities: Vec<usize>,
    pub singular_points: usize,
    pub square_free_degree: usize,
    /// Genus of `zeta^2 = prod (w - a)` over odd-multiplicity clusters.
    pub normalization_genus: usize,
}

impl DegenerationReport {
    /// Multiplicities sorted descending.
    pub fn multiset(&self) -> Vec<usize> {
        let mut m = self.multiplicities.clone();
        m.sort_unstable_by(|a, b| b.cmp(a));
        m
    }
}

pub fn degeneration_type(curve: &SpectralCurve, tol: f64) -> DegenerationReport {
    degeneration_from_roots(&curve.roots, tol)
}

pub fn degeneration_from_roots(roots: &[f64], tol: f64) -> DegenerationReport {
    let (_, mults) = cluster_roots(roots, tol);
    let odd = mults.iter().filter(|&&m| m % 2 == 1).count();
    DegenerationReport {
        singular_points: mults.iter().filter(|&&m| m >= 2).count(),
        square_free_degree: mults.len(),
        normalization_genus: odd.saturating_sub(1) / 2,
        multiplicities: mults,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodData {
    pub genus: usize,
    /// Branch points ascending.
    pub branch_points: Vec<f64>,
    /// The `2g` gaps `[e_m, e_{m+1}]`.
    pub intervals: Vec<(f64, f64)>,
    /// `true` where `F > 0` on the gap, so the column is real.
    pub real_column: Vec<bool>,
    /// `g x 2g`; entry `(i, j)` is the loop integral of `w^i dw / sqrt(F)`.
    pub matrix: Vec<Vec<C64>>,
}

impl PeriodData {
    /// Column `j` as a vector in `C^g`.
    pub fn column(&self, j: usize) -> Vec<C64> {
        self.matrix.iter().map(|row| row[j]).collect()
    }
}

/// `2 int_{e_m}^{e_{m+1}} w^i dw / sqrt(|F|)` by `w = c + rho cos(theta)`,
/// which cancels the endpoint square-root singularities.
fn gap_integral(roots: &[f64], m: usize, power: usize, tol: f64) -> Result<f64> {
    let (lo, hi) = (roots[m], roots[m + 1]);
    let c = 0.5 * (lo + hi);
    let rho = 0.5 * (hi - lo);
    let integrand = |theta: f64| {
        let w = c + rho * theta.cos();
        let denom: f64 = roots
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != m && l != m + 1)
            .map(|(_, &e)| (w - e).abs())
            .product();
        w.powi(power as i32) / denom.sqrt()
    };
    let rough = PI * integrand(0.5 * PI).abs().max(integrand(0.0).abs()).max(integrand(PI).abs());
    Ok(2.0 * gauss_periodic_quadrature(integrand, tol * rough.max(f64::MIN_POSITIVE))?)
}

/// Period matrix over the first `2g` gap loops. `tol` is the relative
/// quadrature target.
pub fn period_matrix(curve: &SpectralCurve, tol: f64) -> Result<PeriodData> {
    let g = genus(curve)?;
    let e = &curve.roots;
    let d = e.len();
    if d >= 2 {
        let min_gap = e.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        if min_gap < MIN_GAP_REL * diameter(e) {
            return Err(Error::NearSingular { min_gap });
        }
    }
    let mut matrix = vec![Vec::with_capacity(2 * g); g];
    let mut intervals = Vec::with_capacity(2 * g);
    let mut real_column = Vec::with_capacity(2 * g);
    for m in 0..2 * g {
        // sign of F on the gap is (-1)^(number of roots at or above e_{m+1})
        let real = (d - m - 1).is_multiple_of(2);
        intervals.push((e[m], e[m + 1]));
        real_column.push(real);
        for (i, row) in matrix.iter_mut().enumerate() {
            let v = gap_integral(e, m, i, tol)?;
            row.push(if real { C64::new(v, 0.0) } else { C64::new(0.0, -v) });
        }
    }
    Ok(PeriodData {
        genus: g,
        branch_points: e.clone(),
        intervals,
        real_column,
        matrix,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobianLattice {
    /// The `2g` generators `c_j` in `C^g`.
    pub generators: Vec<Vec<C64>>,
    /// Rank of the stacked `2g x 2g` real matrix.
    pub rank: usize,
    /// Ratio of extreme singular values of the stacked matrix.
    pub condition: f64,
}

/// The period columns as generators of a lattice in `C^g = R^{2g}`; fails
/// unless they are `R`-linearly independent.
pub fn jacobian_lattice(pd: &PeriodData) -> Result<JacobianLattice> {
    let g = pd.genus;
    let generators: Vec<Vec<C64>> = (0..2 * g).map(|j| pd.column(j)).collect();
    if g == 0 {
        return Ok(JacobianLattice { generators, rank: 0, condition: 1.0 });
    }
    // rows: real parts then imaginary parts; columns: generators
    let stacked: Vec<Vec<f64>> = (0..2 * g)
        .map(|r| {
            generators
                .iter()
                .map(|c| if r < g { c[r].re } else { c[r - g].im })
                .collect()
        })
        .collect();
    let gram: Vec<Vec<f64>> = (0..2 * g)
        .map(|a| {
            (0..2 * g)
                .map(|b| (0..2 * g).map(|r| stacked[r][a] * stacked[r][b]).sum())
                .collect()
        })
        .collect();
    let rows: Vec<&[f64]> = gram.iter().map(|r| r.as_slice()).collect();
    let sigma2 = eig_hermitian(&HermitianMatrix::from_real_rows(&rows))?.values;
    let sigma: Vec<f64> = sigma2.iter().map(|&s| s.max(0.0).sqrt()).collect();
    let smax = sigma[0];
    let rank = sigma.iter().filter(|&&s| s > RANK_TOL * smax).count();
    if rank < 2 * g {
        return Err(Error::RankDeficient { rank, expected: 2 * g });
    }
    Ok(JacobianLattice {
        generators,
        rank,
        condition: smax / sigma[2 * g - 1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gtsystem::ActionVector;
    use crate::orbit::OrbitSpec;

    fn u3() -> OrbitSpec {
        OrbitSpec::new(&[2.0, 0.0, -2.0]).unwrap()
    }

    #[test]
    fn vertex_pattern_is_singular() {
        let p = GTPattern::from_action(&u3(), &ActionVector(vec![2.0, 0.0, 2.0])).unwrap();
        let c = spectral_poly(&p).unwrap();
        assert_eq!(c.roots, vec![0.0, 2.0, 2.0]);
        assert_eq!(c.disc, 0.0);
        assert!(!c.smooth);
        assert_eq!(genus(&c), Err(Error::SingularCurve));
        let d = degeneration_type(&c, 1e-9);
        assert_eq!(d.multiset(), vec![2, 1]);
        assert_eq!(d.singular_points, 1);
    }

    #[test]
    fn grassmannian_divides_frozen_factors() {
        let spec = OrbitSpec::new(&[1.0, 1.0, -1.0, -1.0]).unwrap();
        let p = GTPattern::from_action(&spec, &ActionVector(vec![0.3, 0.9, -0.5, 0.2])).unwrap();
        let c = spectral_poly(&p).unwrap();
        assert_eq!(c.degree, 4);
        assert_eq!(c.frozen_divisors, vec![(1.0, 1), (-1.0, 1)]);
        assert!(c.smooth);
        assert_eq!(genus(&c).unwrap(), 1);
    }

    #[test]
    fn degeneration_classes() {
        let smooth = degeneration_from_roots(&[-1.0, 0.0, 1.0, 2.0], 1e-9);
        assert_eq!((smooth.singular_points, smooth.normalization_genus), (0, 1));
        let two_spheres = degeneration_from_roots(&[-1.0, -1.0, 1.0, 1.0], 1e-9);
        assert_eq!((two_spheres.singular_points, two_spheres.normalization_genus), (2, 0));
        let pinched = degeneration_from_roots(&[-1.0, -1.0, 0.0, 1.0], 1e-9);
        assert_eq!((pinched.singular_points, pinched.normalization_genus), (1, 0));
        assert_eq!(pinched.multiset(), vec![2, 1, 1]);
    }

    #[test]
    fn phase_rule_on_cubic() {
        let c = SpectralCurve::from_roots(&[-1.0, 0.0, 1.0]).unwrap();
        let pd = period_matrix(&c, 1e-13).unwrap();
        assert_eq!(pd.real_column, vec![true, false]);
        assert!(c.eval(-0.5) > 0.0 && c.eval(0.5) < 0.0);
        assert_eq!(pd.matrix[0][0].im, 0.0);
        assert_eq!(pd.matrix[0][1].re, 0.0);
    }

    #[test]
    fn symmetric_quartic_outer_gaps_match() {
        let c = SpectralCurve::from_roots(&[-2.0, -1.0, 1.0, 2.0]).unwrap();
        let pd = period_matrix(&c, 1e-13).unwrap();
        assert_eq!(pd.matrix[0].len(), 2);
        // the third gap is not a cycle; compare against its integral directly
        let outer = gap_integral(&c.roots, 2, 0, 1e-13).unwrap();
        assert!((pd.matrix[0][0].norm() - outer).abs() < 1e-12);
    }

    #[test]
    fn near_singular_guard() {
        let c = SpectralCurve::from_roots(&[0.0, 1.0, 1.0 + 1e-6, 2.0]).unwrap();
        assert!(matches!(period_matrix(&c, 1e-12), Err(Error::NearSingular { .. })));
    }

    #[test]
    fn facet_witness_is_critical_with_nonzero_disc() {
        let spec = OrbitSpec::new(&[1.0, 1.0, -1.0, -1.0]).unwrap();
        let p = GTPattern::from_action(&spec, &ActionVector(vec![0.3, 1.0, -0.5, 0.2])).unwrap();
        let c = classify(&p, 1e-9).unwrap();
        assert!(c.critical);
        assert!(!c.disc_zero);
        assert!(c.disc.abs() > 1e-3);
    }

    #[test]
    fn elliptic_lattice_has_full_rank() {
        let c = SpectralCurve::from_roots(&[-1.0, 0.0, 1.0]).unwrap();
        let lat = jacobian_lattice(&period_matrix(&c, 1e-13).unwrap()).unwrap();
        assert_eq!(lat.rank, 2);
        assert!(lat.condition >= 1.0);
    }

    #[test]
    fn degenerate_lattice_is_rejected() {
        let pd = PeriodData {
            genus: 1,
            branch_points: vec![],
            intervals: vec![],
            real_column: vec![true, true],
            matrix: vec![vec![C64::new(1.0, 0.0), C64::new(2.0, 0.0)]],
        };
        assert_eq!(
            jacobian_lattice(&pd),
            Err(Error::RankDeficient { rank: 1, expected: 2 })
        );
    }
}
