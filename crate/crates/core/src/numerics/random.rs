//! Seeded randomness: a ChaCha stream per seed, seed splitting for parallel
//! campaigns, and Haar-distributed unitaries.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::matrix::CMat;

pub type GtRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> GtRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `child_seed = hash(parent_seed, stream_index)` using the splitmix64
/// finalizer, so sibling streams are decorrelated.
pub fn child_seed(parent: u64, index: u64) -> u64 {
    let mut z = parent
        .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Standard complex Gaussian `(N(0,1) + i N(0,1)) / sqrt 2`.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-random unitary: complex Ginibre matrix, Householder QR, then the
/// columns of Q are multiplied by the phases of diag(R).
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMat {
    assert!(n >= 1, "random_unitary needs n >= 1");
    let mut g = CMat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = complex_normal(rng);
        }
    }
    let (q, r) = householder_qr(&g);
    let mut u = q;
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() == 0.0 { C64::new(1.0, 0.0) } else { d / d.norm() };
        for i in 0..n {
            u[(i, j)] *= phase;
        }
    }
    u
}

/// Complex Householder QR: `a = q r` with `q` unitary and `r` upper
/// triangular.
pub fn householder_qr(a: &CMat) -> (CMat, CMat) {
    let n = a.dim();
    let mut r = a.clone();
    let mut q = CMat::identity(n);
    for k in 0..n.saturating_sub(1) {
        let norm_x: f64 = (k..n).map(|i| r[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = r[(k, k)];
        let phase = if x0.norm() == 0.0 { C64::new(1.0, 0.0) } else { x0 / x0.norm() };
        // v = x + phase * |x| e_1, reflector H = I - 2 v v^dagger / (v^dagger v)
        let mut v: Vec<C64> = (k..n).map(|i| r[(i, k)]).collect();
        v[0] += phase * norm_x;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for j in 0..n {
            let s: C64 = (k..n).map(|i| v[i - k].conj() * r[(i, j)]).sum();
            let f = s * (2.0 / vnorm2);
            for i in k..n {
                r[(i, j)] -= v[i - k] * f;
            }
        }
        // q <- q H
        for i in 0..n {
            let s: C64 = (k..n).map(|l| q[(i, l)] * v[l - k]).sum();
            let f = s * (2.0 / vnorm2);
            for l in k..n {
                q[(i, l)] -= f * v[l - k].conj();
            }
        }
    }
    (q, r)
}
