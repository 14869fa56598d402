//! Two brute-force oracles for `χ̂_P(λ)` that share nothing with the
//! triangulation and divided-difference route.
//!
//! * [`ft_indicator_quadrature`]: midpoint rule over the bounding box with an
//!   inside-P indicator. Cheap and obviously right, first-order accurate.
//! * [`ft_indicator_slices`]: iterated integration over parallel slices.
//!   The innermost integral over a chord is done in closed form and each outer
//!   integral by composite Gauss-Legendre between the vertex heights, where the
//!   integrand is analytic. Accurate to near machine precision.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::linalg::TAU_GEOM;
use crate::polytope::{enumerate_vertices, HPolytope, HalfSpace};

/// Midpoint-rule value of `∫_P e^{-2πi<λ,x>} dx` on an `n`-per-axis grid over
/// the bounding box of `P`.
pub fn ft_indicator_quadrature(p: &HPolytope, lambda: &[f64], n_per_axis: usize) -> Complex64 {
    assert!(n_per_axis >= 2, "need at least two cells per axis");
    let d = p.dim();
    let verts = p.extreme_points();
    if !p.is_full() {
        return Complex64::new(0.0, 0.0);
    }
    let lo: Vec<f64> = (0..d)
        .map(|i| verts.iter().map(|v| v[i]).fold(f64::INFINITY, f64::min))
        .collect();
    let hi: Vec<f64> = (0..d)
        .map(|i| verts.iter().map(|v| v[i]).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let h: Vec<f64> = (0..d).map(|i| (hi[i] - lo[i]) / n_per_axis as f64).collect();
    let cell: f64 = h.iter().product();

    // Rows along the first axis: the phase advances by a fixed factor per
    // cell, and inside cells are tested against every half-space.
    let step = Complex64::new(0.0, -2.0 * PI * lambda[0] * h[0]).exp();
    let rows = n_per_axis.pow((d - 1) as u32);
    let mut total = Complex64::new(0.0, 0.0);
    let mut x = vec![0.0; d];
    for r in 0..rows {
        let mut rem = r;
        for i in 1..d {
            x[i] = lo[i] + (rem % n_per_axis) as f64 * h[i] + 0.5 * h[i];
            rem /= n_per_axis;
        }
        x[0] = lo[0] + 0.5 * h[0];
        let rest: f64 = (1..d).map(|i| lambda[i] * x[i]).sum();
        let mut phase = Complex64::new(0.0, -2.0 * PI * (lambda[0] * x[0] + rest)).exp();
        let mut row = Complex64::new(0.0, 0.0);
        for _ in 0..n_per_axis {
            if p.halfspaces().iter().all(|hs| hs.excess(&x) <= 0.0) {
                row += phase;
            }
            phase *= step;
            x[0] += h[0];
        }
        total += row;
    }
    total * cell
}

/// Slice-integration value of `∫_P e^{-2πi<λ,x>} dx`.
pub fn ft_indicator_slices(p: &HPolytope, lambda: &[f64]) -> Complex64 {
    if !p.is_full() {
        return Complex64::new(0.0, 0.0);
    }
    let cons: Vec<(Vec<f64>, f64)> = p
        .halfspaces()
        .iter()
        .map(|h| (h.normal.clone(), h.offset))
        .collect();
    slice_integral(&cons, lambda)
}

fn slice_integral(cons: &[(Vec<f64>, f64)], lambda: &[f64]) -> Complex64 {
    let k = lambda.len();
    if k == 1 {
        return match chord(cons) {
            Some((lo, hi)) => interval_transform(lo, hi, lambda[0]),
            None => Complex64::new(0.0, 0.0),
        };
    }
    // Breakpoints: heights of the vertices along the last axis.
    let hs: Vec<HalfSpace> = cons
        .iter()
        .filter_map(|(a, b)| HalfSpace::new(a.clone(), *b).ok())
        .collect();
    let verts = enumerate_vertices(&hs, k);
    let mut heights: Vec<f64> = verts.iter().map(|v| v[k - 1]).collect();
    heights.sort_by(f64::total_cmp);
    heights.dedup_by(|a, b| (*a - *b).abs() <= TAU_GEOM * (1.0 + b.abs()));
    if heights.len() < 2 {
        return Complex64::new(0.0, 0.0);
    }

    // Between breakpoints the slice vertices move linearly inside P, so the
    // phase of the slice transform turns by at most |λ_k| (c1 - c0) plus the
    // tangential phase spread of P.
    let spread: f64 = (0..k - 1)
        .map(|i| {
            let (lo, hi) = verts
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v[i]), hi.max(v[i])));
            lambda[i].abs() * (hi - lo)
        })
        .sum();

    let (nodes, weights) = gauss_legendre();
    let mut total = Complex64::new(0.0, 0.0);
    for w in heights.windows(2) {
        let (c0, c1) = (w[0], w[1]);
        let cycles = lambda[k - 1].abs() * (c1 - c0) + spread;
        // Order-16 Gauss-Legendre is exact to ~1e-28 for two cycles per panel.
        let panels = (0.5 * cycles).ceil().max(1.0) as usize;
        let pw = (c1 - c0) / panels as f64;
        for j in 0..panels {
            let a = c0 + j as f64 * pw;
            for (x, wt) in nodes.iter().zip(weights) {
                let c = a + 0.5 * pw * (x + 1.0);
                let reduced: Vec<(Vec<f64>, f64)> = cons
                    .iter()
                    .map(|(a, b)| (a[..k - 1].to_vec(), b - a[k - 1] * c))
                    .collect();
                let inner = slice_integral(&reduced, &lambda[..k - 1]);
                let phase = Complex64::new(0.0, -2.0 * PI * lambda[k - 1] * c).exp();
                total += inner * phase * (0.5 * pw * wt);
            }
        }
    }
    total
}

/// Feasible interval of one-dimensional constraints `a x <= b`.
fn chord(cons: &[(Vec<f64>, f64)]) -> Option<(f64, f64)> {
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (a, b) in cons {
        let a = a[0];
        if a.abs() <= 1e-14 {
            if *b < 0.0 {
                return None;
            }
        } else if a > 0.0 {
            hi = hi.min(b / a);
        } else {
            lo = lo.max(b / a);
        }
    }
    (hi > lo).then_some((lo, hi))
}

/// `∫_lo^hi e^{-2πiλx} dx` in closed form.
fn interval_transform(lo: f64, hi: f64, lambda: f64) -> Complex64 {
    let w = -2.0 * PI * lambda;
    let len = hi - lo;
    let mid = 0.5 * (lo + hi);
    // e^{iw mid} * len * sinc(w len / 2)
    let half = 0.5 * w * len;
    let sinc = if half.abs() < 1e-8 { 1.0 - half * half / 6.0 } else { half.sin() / half };
    Complex64::new(0.0, w * mid).exp() * (len * sinc)
}

const GL_ORDER: usize = 16;

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
fn gauss_legendre() -> (&'static [f64], &'static [f64]) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    let (x, w) = RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut xs = vec![0.0; n];
        let mut ws = vec![0.0; n];
        for i in 0..n {
            let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, 0.0);
                for j in 0..n {
                    let p2 = p1;
                    p1 = p0;
                    p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
                }
                dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
                let dz = p0 / dp;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            xs[i] = z;
            ws[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
        (xs, ws)
    });
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::ft_indicator;
    use crate::polytope::fixtures::{pentagon, unit_square};

    #[test]
    fn gauss_rule_integrates_polynomials() {
        let (x, w) = gauss_legendre();
        let s: f64 = w.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        let m: f64 = x.iter().zip(w).map(|(x, w)| w * x.powi(30)).sum();
        assert!((m - 2.0 / 31.0).abs() < 1e-14);
    }

    #[test]
    fn midpoint_square_at_zero() {
        let v = ft_indicator_quadrature(&unit_square(), &[0.0, 0.0], 100);
        assert!((v.re - 1.0).abs() < 1e-3 && v.im.abs() < 1e-3);
    }

    #[test]
    fn midpoint_interval_full_period() {
        let seg = HPolytope::axis_box(&[0.0], &[1.0]).unwrap();
        assert!(ft_indicator_quadrature(&seg, &[1.0], 10_000).norm() < 1e-3);
    }

    #[test]
    fn slices_match_exact_transform() {
        let p = pentagon();
        for lam in [[1.0, 0.0], [2.0, 3.0], [-0.3, 7.5], [12.0, -4.0]] {
            let a = ft_indicator(&p, &lam);
            let b = ft_indicator_slices(&p, &lam);
            assert!((a - b).norm() < 1e-12, "{lam:?}: {a} vs {b}");
        }
    }
}
