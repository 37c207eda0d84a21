//! Real polynomials: characteristic polynomials, discriminants, real-rooted
//! root finding and root clustering.

use num_complex::Complex64 as C64;

use super::matrix::{CMat, HermitianMatrix};
use crate::error::{Error, Result};

/// Coefficients lowest degree first. The zero polynomial has no
/// coefficients and degree `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `prod_i (w - r_i)`
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut c = vec![1.0];
        for &r in roots {
            let mut next = vec![0.0; c.len() + 1];
            for (i, &ci) in c.iter().enumerate() {
                next[i + 1] += ci;
                next[i] -= r * ci;
            }
            c = next;
        }
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the `-1` sentinel for the zero polynomial.
    pub fn degree_signed(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1.0
    }

    pub fn eval(&self, w: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * w + c)
    }

    pub fn eval_complex(&self, w: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * w + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| i as f64 * c)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut c = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    /// Synthetic division by `(w - a)`: returns quotient and remainder.
    pub fn divide_linear(&self, a: f64) -> (Self, f64) {
        let Some(d) = self.degree() else {
            return (Self::zero(), 0.0);
        };
        if d == 0 {
            return (Self::zero(), self.coeffs[0]);
        }
        let mut q = vec![0.0; d];
        let mut carry = self.coeffs[d];
        for i in (0..d).rev() {
            q[i] = carry;
            carry = self.coeffs[i] + a * carry;
        }
        (Self::new(q), carry)
    }

    /// Coefficients of `p(w - zeta)` for complex `zeta` (Taylor shift by
    /// repeated synthetic division).
    pub fn shift_complex(&self, zeta: C64) -> Vec<C64> {
        let mut c: Vec<C64> = self.coeffs.iter().map(|&x| C64::new(x, 0.0)).collect();
        let d = c.len();
        // p(w - zeta) = sum b_i w^i where b_i are Taylor coefficients at -zeta
        let at = -zeta;
        for i in 0..d {
            for j in (i..d - 1).rev() {
                let t = c[j + 1];
                c[j] += at * t;
            }
        }
        c
    }
}

/// Characteristic polynomial `det(w 1 - A)` via the Faddeev-LeVerrier
/// recursion. Monic of degree `n`.
pub fn char_poly(a: &HermitianMatrix) -> RealPolynomial {
    char_poly_cmat(a.as_cmat())
}

pub fn char_poly_cmat(a: &CMat) -> RealPolynomial {
    let n = a.dim();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut m = CMat::zeros(n);
    let ident = CMat::identity(n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k) / k
        let shifted = &(a * &m) + &ident.scale_real(coeffs[n - k + 1]);
        m = shifted;
        let am = a * &m;
        coeffs[n - k] = -am.trace().re / k as f64;
    }
    RealPolynomial::new(coeffs)
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det_real(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[piv][col] == 0.0 {
            return 0.0;
        }
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        det *= a[col][col];
        let (top, bottom) = a.split_at_mut(col + 1);
        let pivot = &top[col];
        for row in bottom {
            let f = row[col] / pivot[col];
            if f == 0.0 {
                continue;
            }
            for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x -= f * p;
            }
        }
    }
    det
}

/// Sylvester matrix of `p` (degree m) and `q` (degree n), size m+n.
pub fn sylvester_matrix(p: &RealPolynomial, q: &RealPolynomial) -> Vec<Vec<f64>> {
    let m = p.degree().unwrap_or(0);
    let n = q.degree().unwrap_or(0);
    let size = m + n;
    let mut s = vec![vec![0.0; size]; size];
    // rows hold coefficients highest degree first
    for r in 0..n {
        for (i, &c) in p.coeffs().iter().rev().enumerate() {
            s[r][r + i] = c;
        }
    }
    for r in 0..m {
        for (i, &c) in q.coeffs().iter().rev().enumerate() {
            s[n + r][r + i] = c;
        }
    }
    s
}

pub fn resultant(p: &RealPolynomial, q: &RealPolynomial) -> f64 {
    det_real(sylvester_matrix(p, q))
}

/// `Disc(F) = (-1)^{d(d-1)/2} Res(F, F') / lc(F)`.
pub fn discriminant(f: &RealPolynomial) -> Result<f64> {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::DegenerateDegree(f.degree_signed())),
    };
    if d == 1 {
        return Ok(1.0);
    }
    let (g, s) = normalized(f);
    let res = resultant(&g, &g.derivative());
    let sign = if (d * (d - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let lc = f.leading();
    Ok(sign * res * s.powi((d * (d - 1)) as i32) * lc.abs().powi(2 * d as i32 - 2))
}

/// Monic `G(x) = F(c + s x) / (lc s^d)` with the root centroid moved to 0
/// and the Fujiwara root bound scaled to 1, so the Sylvester determinant is
/// well scaled. `Disc(F) = lc^{2d-2} s^{d(d-1)} Disc(G)`.
fn normalized(f: &RealPolynomial) -> (RealPolynomial, f64) {
    let d = f.degree().expect("nonzero polynomial");
    let lc = f.leading();
    let monic: Vec<f64> = f.coeffs().iter().map(|c| c / lc).collect();
    let c = -monic[d - 1] / d as f64;
    let shifted: Vec<f64> = RealPolynomial::new(monic)
        .shift_complex(C64::new(-c, 0.0))
        .iter()
        .map(|z| z.re)
        .collect();
    let bound = (0..d)
        .map(|k| (shifted[k].abs() * if k == 0 { 0.5 } else { 1.0 }).powf(1.0 / (d - k) as f64))
        .fold(0.0f64, f64::max);
    let s = if bound > 0.0 { 2.0 * bound } else { 1.0 };
    let scaled: Vec<f64> = shifted
        .iter()
        .enumerate()
        .map(|(k, b)| b * s.powi(k as i32 - d as i32))
        .collect();
    (RealPolynomial::new(scaled), s)
}

/// `prod_{i<j} (r_i - r_j)^2` for a monic polynomial with the given roots.
pub fn discriminant_from_roots(roots: &[f64]) -> f64 {
    let mut p = 1.0;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let d = roots[i] - roots[j];
            p *= d * d;
        }
    }
    p
}

/// Scale used to decide `Disc == 0` in a unit-consistent way:
/// `diameter^{d(d-1)}`.
pub fn discriminant_scale(roots: &[f64]) -> f64 {
    let d = roots.len();
    if d < 2 {
        return 1.0;
    }
    let (lo, hi) = roots
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &r| (lo.min(r), hi.max(r)));
    let diam = (hi - lo).max(f64::MIN_POSITIVE);
    diam.powi((d * (d - 1)) as i32)
}

/// All roots of a polynomial known to be real-rooted, ascending, with
/// multiplicity.
///
/// Recurses on the derivative: between consecutive critical points the
/// polynomial is monotone, so each interval holds exactly one root, found by
/// bisection. A multiple root sits on a critical point.
pub fn real_roots(f: &RealPolynomial) -> Vec<f64> {
    let Some(d) = f.degree() else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let lc = f.leading();
    if d == 1 {
        return vec![-f.coeffs()[0] / lc];
    }
    let bound = 1.0
        + f.coeffs()[..d]
            .iter()
            .map(|c| (c / lc).abs())
            .fold(0.0, f64::max);
    let crit = real_roots(&f.derivative());
    let mut edges = Vec::with_capacity(d + 1);
    edges.push(-bound);
    edges.extend(crit.iter().map(|c| c.clamp(-bound, bound)));
    edges.push(bound);
    edges
        .windows(2)
        .map(|w| bisect_monotone(f, w[0], w[1]))
        .collect()
}

fn bisect_monotone(f: &RealPolynomial, a: f64, b: f64) -> f64 {
    let (mut lo, mut hi) = (a, b);
    let flo = f.eval(lo);
    let fhi = f.eval(hi);
    if flo == 0.0 {
        return lo;
    }
    if fhi == 0.0 {
        return hi;
    }
    if flo.signum() == fhi.signum() {
        // no sign change: the root is a repeated one at an endpoint
        return if flo.abs() <= fhi.abs() { lo } else { hi };
    }
    let rising = fhi > 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f.eval(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == rising {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Roots grouped into clusters of nearby values.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareFree {
    /// One root per cluster (the cluster mean), monic.
    pub poly: RealPolynomial,
    /// Cluster representatives, ascending.
    pub roots: Vec<f64>,
    /// Cluster sizes, aligned with `roots`.
    pub multiplicities: Vec<usize>,
}

/// Default clustering tolerance `1e-7 * spectral diameter`.
pub fn default_cluster_tol(roots: &[f64]) -> f64 {
    let (lo, hi) = roots
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &r| (lo.min(r), hi.max(r)));
    if roots.is_empty() {
        return 0.0;
    }
    1e-7 * (hi - lo).max(1.0)
}

/// Clusters sorted roots whose consecutive gaps are `<= tol`.
pub fn cluster_roots(roots: &[f64], tol: f64) -> (Vec<f64>, Vec<usize>) {
    let mut sorted = roots.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut reps = Vec::new();
    let mut mults = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] - sorted[j - 1] <= tol {
            j += 1;
        }
        let mean = sorted[i..j].iter().sum::<f64>() / (j - i) as f64;
        reps.push(mean);
        mults.push(j - i);
        i = j;
    }
    (reps, mults)
}

/// Square-free part of a real-rooted polynomial, given its roots.
pub fn square_free_part_from_roots(roots: &[f64], tol: f64) -> SquareFree {
    let (reps, mults) = cluster_roots(roots, tol);
    SquareFree {
        poly: RealPolynomial::from_roots(&reps),
        roots: reps,
        multiplicities: mults,
    }
}

/// Square-free part of a real-rooted polynomial; roots are computed with
/// [`real_roots`]. A non-monic input is normalized first.
pub fn square_free_part(f: &RealPolynomial, tol: f64) -> SquareFree {
    let roots = real_roots(f);
    square_free_part_from_roots(&roots, tol)
}
