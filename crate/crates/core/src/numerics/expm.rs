//! Matrix exponential by scaling and squaring with a diagonal Pade(6)
//! approximant.
//!
//! For skew-Hermitian input the approximant is `N(X)^{-dagger} N(X)`, which
//! is unitary in exact arithmetic, so conjugation by it is isospectral up to
//! rounding.

use super::matrix::CMat;

const PADE_ORDER: usize = 6;

pub fn expm(x: &CMat) -> CMat {
    let n = x.dim();
    // Frobenius norm bounds the spectral norm from above
    let norm = x.norm();
    let mut squarings = 0u32;
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as u32;
    }
    let scaled = x.scale_real(0.5f64.powi(squarings as i32));

    let mut coeffs = [0.0; PADE_ORDER + 1];
    coeffs[0] = 1.0;
    for k in 1..=PADE_ORDER {
        let p = PADE_ORDER as f64;
        let kf = k as f64;
        coeffs[k] = coeffs[k - 1] * (p - kf + 1.0) / (kf * (2.0 * p - kf + 1.0));
    }

    let mut num = CMat::identity(n).scale_real(coeffs[0]);
    let mut den = num.clone();
    let mut power = CMat::identity(n);
    for (k, &c) in coeffs.iter().enumerate().skip(1) {
        power = &power * &scaled;
        let term = power.scale_real(c);
        num = &num + &term;
        den = if k % 2 == 0 { &den + &term } else { &den - &term };
    }
    let mut r = den
        .solve(&num)
        .expect("Pade denominator is nonsingular for scaled arguments");
    for _ in 0..squarings {
        r = &r * &r;
    }
    r
}
