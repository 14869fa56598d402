//! Deterministic sample grids shared by the margin, cone and certificate scans.

use std::f64::consts::PI;

/// Deterministic samples of the closed ball `{|t| <= radius}` in R^d.
///
/// `n` is the resolution per axis. In the plane this is a polar grid with `n`
/// rings and `8n` angles per ring (so the diagonals are always hit); on the
/// line it is a uniform grid; in higher dimension a cube grid clipped to the
/// ball plus the `2d` axis endpoints. The origin is always included.
pub fn ball_samples(dim: usize, radius: f64, n: usize) -> Vec<Vec<f64>> {
    let mut out = vec![vec![0.0; dim]];
    if radius <= 0.0 || n == 0 {
        return out;
    }
    match dim {
        1 => {
            for k in 1..=n {
                let r = radius * k as f64 / n as f64;
                out.push(vec![r]);
                out.push(vec![-r]);
            }
        }
        2 => {
            let n_ang = 8 * n;
            for k in 1..=n {
                let r = radius * k as f64 / n as f64;
                for j in 0..n_ang {
                    let a = 2.0 * PI * j as f64 / n_ang as f64;
                    out.push(vec![r * a.cos(), r * a.sin()]);
                }
            }
        }
        _ => {
            let m = 2 * n + 1;
            let total = m.pow(dim as u32);
            for idx in 0..total {
                let mut rem = idx;
                let p: Vec<f64> = (0..dim)
                    .map(|_| {
                        let i = rem % m;
                        rem /= m;
                        radius * (i as f64 - n as f64) / n as f64
                    })
                    .collect();
                let r2: f64 = p.iter().map(|x| x * x).sum();
                if r2 > 0.0 && r2 <= radius * radius * (1.0 + 1e-12) {
                    out.push(p);
                }
            }
            for i in 0..dim {
                for s in [1.0, -1.0] {
                    let mut e = vec![0.0; dim];
                    e[i] = s * radius;
                    if !out.contains(&e) {
                        out.push(e);
                    }
                }
            }
        }
    }
    out
}

/// `n` points from `lo` to `hi` inclusive, geometrically spaced.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// `n` points from `lo` to `hi` inclusive, uniformly spaced.
pub fn lin_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![0.5 * (lo + hi)];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Cartesian product of per-axis coordinate lists.
pub fn grid(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = vec![Vec::new()];
    for axis in axes {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Deterministic samples of the open ball `{|w| < radius}` in R^k, for the
/// cylinder cross-section. `k = 0` gives the single empty point.
pub fn cross_section_samples(k: usize, radius: f64, n: usize) -> Vec<Vec<f64>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    // Stay strictly inside the open ball.
    let r = radius * (1.0 - 1e-9);
    let axis = lin_space(-r, r, n.max(1));
    grid(&vec![axis; k])
        .into_iter()
        .filter(|p| p.iter().map(|x| x * x).sum::<f64>() < radius * radius)
        .collect()
}
