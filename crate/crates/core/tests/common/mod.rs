#![allow(dead_code)]

use gtlax_core::orbit::OrbitSpec;

pub fn u3() -> OrbitSpec {
    OrbitSpec::new(&[2.0, 0.5, -1.5]).unwrap()
}

pub fn u4() -> OrbitSpec {
    OrbitSpec::new(&[3.0, 1.0, -0.5, -2.0]).unwrap()
}

pub fn gr24() -> OrbitSpec {
    OrbitSpec::new(&[1.0, 1.0, -1.0, -1.0]).unwrap()
}

pub fn all_specs() -> Vec<(&'static str, OrbitSpec)> {
    vec![("u3", u3()), ("u4", u4()), ("gr24", gr24())]
}

/// Complete elliptic integral of the first kind, `K(k) = pi / (2 AGM(1, k'))`
/// with `m = k^2`.
pub fn ellip_k(m: f64) -> f64 {
    let mut a = 1.0f64;
    let mut b = (1.0 - m).sqrt();
    for _ in 0..64 {
        if (a - b).abs() <= 4.0 * f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
    }
    std::f64::consts::PI / (2.0 * a)
}

/// Adaptive Simpson on `[a, b]` with absolute tolerance `eps`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, eps: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        eps: f64,
        whole: f64,
        m: f64,
        fm: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * eps.max(1e-18) {
            return left + right + delta / 15.0;
        }
        rec(f, a, fa, m, fm, 0.5 * eps, left, lm, flm, depth - 1)
            + rec(f, m, fm, b, fb, 0.5 * eps, right, rm, frm, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    rec(f, a, fa, b, fb, eps, whole, m, fm, 30)
}
