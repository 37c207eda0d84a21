//! Midpoint rule on `[0, pi]` for integrands that extend to smooth even
//! `2 pi`-periodic functions, where it converges geometrically.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const MAX_NODES: usize = 1 << 20;
const MIN_NODES: usize = 8;

/// Integrates `f` over `[0, pi]`, doubling the node count until two
/// successive midpoint sums differ by at most `target_tol`.
pub fn gauss_periodic_quadrature<F>(f: F, target_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut n = MIN_NODES;
    let mut prev = midpoint(&f, n);
    loop {
        let next_n = 2 * n;
        if next_n > MAX_NODES {
            return Err(Error::QuadratureNotConverged {
                nodes: n,
                estimate: f64::NAN,
            });
        }
        // midpoint nodes of the doubled rule sit at odd multiples of h/2
        let h = PI / next_n as f64;
        let fresh: f64 = (0..n)
            .map(|i| f((4 * i + 1) as f64 * h * 0.5) + f((4 * i + 3) as f64 * h * 0.5))
            .sum::<f64>();
        let cur = fresh * h;
        let err = (cur - prev).abs();
        if !err.is_finite() {
            return Err(Error::QuadratureNotConverged {
                nodes: next_n,
                estimate: err,
            });
        }
        if err <= target_tol {
            return Ok(cur);
        }
        if next_n == MAX_NODES {
            return Err(Error::QuadratureNotConverged {
                nodes: next_n,
                estimate: err,
            });
        }
        prev = cur;
        n = next_n;
    }
}

fn midpoint<F: Fn(f64) -> f64>(f: &F, n: usize) -> f64 {
    let h = PI / n as f64;
    (0..n).map(|i| f((i as f64 + 0.5) * h)).sum::<f64>() * h
}
