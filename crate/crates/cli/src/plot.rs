//! Hand-written SVG: the real locus of `zeta^2 = F(w)` next to a projection
//! of the polytope with the analyzed point marked.

use std::fmt::Write as _;
use std::path::Path;

use gtlax_core::curves::SpectralCurve;
use gtlax_core::gtsystem::ActionVector;
use gtlax_core::polytope::{vertices, PolytopeSpec, MAX_VERTEX_DIM};

use crate::error::CliResult;

pub const BAND_SAMPLES: usize = 512;
const PANEL: f64 = 400.0;
const MARGIN: f64 = 30.0;

/// Maps a data box onto one panel, `y` pointing up.
struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    left: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        self.left + MARGIN + (x - self.x0) / (self.x1 - self.x0) * (PANEL - 2.0 * MARGIN)
    }
    fn py(&self, y: f64) -> f64 {
        PANEL - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (PANEL - 2.0 * MARGIN)
    }
}

/// Maximal intervals of `[lo, hi]` where `F >= 0`, cut at the roots.
pub fn positive_bands(curve: &SpectralCurve, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let mut cuts = vec![lo];
    cuts.extend(curve.roots.iter().copied().filter(|&r| r > lo && r < hi));
    cuts.push(hi);
    cuts.windows(2)
        .filter(|w| w[1] > w[0] && curve.eval(0.5 * (w[0] + w[1])) > 0.0)
        .map(|w| (w[0], w[1]))
        .collect()
}

fn curve_panel(svg: &mut String, curve: &SpectralCurve) {
    let roots = &curve.roots;
    let (rmin, rmax) = match (roots.first(), roots.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => (-1.0, 1.0),
    };
    let pad = 0.25 * (rmax - rmin).max(1e-3);
    let (lo, hi) = (rmin - pad, rmax + pad);
    let bands: Vec<Vec<(f64, f64)>> = positive_bands(curve, lo, hi)
        .into_iter()
        .map(|(a, b)| {
            (0..BAND_SAMPLES)
                .map(|i| {
                    let w = a + (b - a) * i as f64 / (BAND_SAMPLES - 1) as f64;
                    (w, curve.eval(w).max(0.0).sqrt())
                })
                .collect()
        })
        .collect();
    let zmax = bands.iter().flatten().map(|p| p.1).fold(0.0f64, f64::max).max(1e-12);
    let f = Frame { x0: lo, x1: hi, y0: -1.1 * zmax, y1: 1.1 * zmax, left: 0.0 };
    let _ = writeln!(
        svg,
        r#"<text x="{:.3}" y="18" font-size="13" text-anchor="middle">real locus of zeta^2 = F(w), degree {}</text>"#,
        PANEL / 2.0,
        curve.degree
    );
    let _ = writeln!(
        svg,
        r##"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="#999" stroke-width="1"/>"##,
        f.px(lo),
        f.py(0.0),
        f.px(hi),
        f.py(0.0)
    );
    for band in &bands {
        let mut pts = String::new();
        let upper = band.iter().copied();
        let lower = band.iter().rev().map(|&(w, z)| (w, -z));
        for (w, z) in upper.chain(lower) {
            let _ = write!(pts, "{:.3},{:.3} ", f.px(w), f.py(z));
        }
        let _ = writeln!(
            svg,
            r##"<polyline points="{}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>"##,
            pts.trim_end()
        );
    }
    for &r in roots {
        let _ = writeln!(
            svg,
            r##"<circle cx="{:.3}" cy="{:.3}" r="3" fill="#c0392b"/>"##,
            f.px(r),
            f.py(0.0)
        );
    }
}

/// Andrew's monotone chain, counter-clockwise.
pub fn convex_hull(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &(f64, f64)>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

fn polytope_panel(svg: &mut String, ps: &PolytopeSpec, a: &ActionVector) -> CliResult<()> {
    let cx = PANEL + PANEL / 2.0;
    let names: Vec<String> = ps.coords.iter().map(|&(j, k)| format!("a[{j},{k}]")).collect();
    if ps.dim == 0 || ps.dim > MAX_VERTEX_DIM {
        let _ = writeln!(
            svg,
            r#"<text x="{cx:.3}" y="{:.3}" font-size="13" text-anchor="middle">no projection for polytope dimension {}</text>"#,
            PANEL / 2.0,
            ps.dim
        );
        return Ok(());
    }
    let verts = vertices(ps)?;
    let proj = |v: &[f64]| (v[0], if ps.dim > 1 { v[1] } else { 0.0 });
    let pts: Vec<(f64, f64)> = verts.iter().map(|v| proj(v.values())).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let pad = |lo: f64, hi: f64| {
        let p = 0.05 * (hi - lo).max(1e-3);
        (lo - p, hi + p)
    };
    let ((x0, x1), (y0, y1)) = (pad(x0, x1), pad(y0, y1));
    let f = Frame { x0, x1, y0, y1, left: PANEL };
    let title = if ps.dim > 1 {
        format!("polytope projected to ({}, {})", names[0], names[1])
    } else {
        format!("polytope segment in {}", names[0])
    };
    let _ = writeln!(svg, r#"<text x="{cx:.3}" y="18" font-size="13" text-anchor="middle">{title}</text>"#);
    let hull = convex_hull(pts);
    let mut poly = String::new();
    for &(x, y) in &hull {
        let _ = write!(poly, "{:.3},{:.3} ", f.px(x), f.py(y));
    }
    let _ = writeln!(
        svg,
        r##"<polygon points="{}" fill="#dfe8f5" stroke="#1f4e9c" stroke-width="1.5"/>"##,
        poly.trim_end()
    );
    let (sx, sy) = proj(a.values());
    let _ = writeln!(
        svg,
        r##"<circle cx="{:.3}" cy="{:.3}" r="4" fill="#c0392b"/>"##,
        f.px(sx),
        f.py(sy)
    );
    Ok(())
}

pub fn render(curve: &SpectralCurve, ps: &PolytopeSpec, a: &ActionVector) -> CliResult<String> {
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = 2.0 * PANEL,
        h = PANEL
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    curve_panel(&mut svg, curve);
    polytope_panel(&mut svg, ps, a)?;
    svg.push_str("</svg>\n");
    Ok(svg)
}

pub fn write_svg(path: &Path, curve: &SpectralCurve, ps: &PolytopeSpec, a: &ActionVector) -> CliResult<()> {
    std::fs::write(path, render(curve, ps, a)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_of_square_with_interior_point() {
        let h = convex_hull(vec![(0.0, 0.0), (1.0, 0.0), (0.5, 0.5), (1.0, 1.0), (0.0, 1.0)]);
        assert_eq!(h, vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
    }

    #[test]
    fn cubic_bands() {
        let c = SpectralCurve::from_roots(&[-1.0, 0.0, 1.0]).unwrap();
        let b = positive_bands(&c, -2.0, 2.0);
        assert_eq!(b, vec![(-1.0, 0.0), (1.0, 2.0)]);
    }

    #[test]
    fn quartic_bands_include_both_ends() {
        let c = SpectralCurve::from_roots(&[-2.0, -1.0, 1.0, 2.0]).unwrap();
        let b = positive_bands(&c, -3.0, 3.0);
        assert_eq!(b, vec![(-3.0, -2.0), (-1.0, 1.0), (2.0, 3.0)]);
    }
}
