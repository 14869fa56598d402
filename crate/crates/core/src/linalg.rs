//! Small dense helpers over `&[f64]` points.
//!
//! Dimensions in this crate are at most four, so points stay plain `Vec<f64>`
//! and only the square solves go through nalgebra.

use nalgebra::DMatrix;

/// Geometric tolerance for incidence, deduplication and normal matching.
pub const TAU_GEOM: f64 = 1e-9;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn centroid(points: &[Vec<f64>]) -> Vec<f64> {
    let d = points[0].len();
    let mut c = vec![0.0; d];
    for p in points {
        for (ci, pi) in c.iter_mut().zip(p) {
            *ci += pi;
        }
    }
    scale(&c, 1.0 / points.len() as f64)
}

/// Solves the square system `rows · x = rhs`, or `None` when it is singular.
pub fn solve(rows: &[&[f64]], rhs: &[f64]) -> Option<Vec<f64>> {
    let n = rows.len();
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let lu = m.lu();
    // Reject near-singular systems relative to the row scale.
    let u = lu.u();
    let max_piv = (0..n).map(|i| u[(i, i)].abs()).fold(0.0, f64::max);
    let min_piv = (0..n).map(|i| u[(i, i)].abs()).fold(f64::INFINITY, f64::min);
    if max_piv == 0.0 || min_piv <= 1e-12 * max_piv.max(1.0) {
        return None;
    }
    let b = nalgebra::DVector::from_column_slice(rhs);
    lu.solve(&b).map(|x| x.iter().copied().collect())
}

/// Affine dimension of a point set (rank of the difference vectors).
pub fn affine_dim(points: &[&[f64]]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = points[0];
    let diffs: Vec<Vec<f64>> = points[1..].iter().map(|p| sub(p, base)).collect();
    let scale = diffs.iter().map(|d| norm(d)).fold(0.0, f64::max).max(1.0);
    rank_gram_schmidt(diffs, TAU_GEOM * scale)
}

fn rank_gram_schmidt(mut vs: Vec<Vec<f64>>, tol: f64) -> usize {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    // Greedy: always take the longest remaining residual next.
    loop {
        let best = vs
            .iter()
            .enumerate()
            .map(|(i, v)| (i, norm(v)))
            .max_by(|a, b| a.1.total_cmp(&b.1));
        match best {
            Some((i, n)) if n > tol => {
                let q = scale(&vs[i], 1.0 / n);
                vs.swap_remove(i);
                for v in vs.iter_mut() {
                    let c = dot(v, &q);
                    for (vj, qj) in v.iter_mut().zip(&q) {
                        *vj -= c * qj;
                    }
                }
                basis.push(q);
            }
            _ => return basis.len(),
        }
    }
}

/// Orthonormal basis of the orthogonal complement of a unit vector.
///
/// Built from the Householder reflection that sends `n` to a signed standard
/// basis vector, so the result depends only on `n`.
pub fn orthonormal_complement(n: &[f64]) -> Vec<Vec<f64>> {
    let d = n.len();
    let k = (0..d)
        .max_by(|&i, &j| n[i].abs().total_cmp(&n[j].abs()))
        .unwrap_or(0);
    let sign = if n[k] >= 0.0 { 1.0 } else { -1.0 };
    let mut v = n.to_vec();
    v[k] += sign;
    let vv = dot(&v, &v);
    let mut out = Vec::with_capacity(d.saturating_sub(1));
    for j in (0..d).filter(|&j| j != k) {
        // Column j of I - 2 v v^T / v^T v.
        let col: Vec<f64> = (0..d)
            .map(|i| {
                let delta = if i == j { 1.0 } else { 0.0 };
                delta - 2.0 * v[i] * v[j] / vv
            })
            .collect();
        out.push(col);
    }
    out
}

/// k-dimensional volume of the simplex spanned by `k+1` points in R^d.
pub fn simplex_volume(points: &[&[f64]]) -> f64 {
    let k = points.len() - 1;
    if k == 0 {
        return 1.0;
    }
    let base = points[0];
    let edges: Vec<Vec<f64>> = points[1..].iter().map(|p| sub(p, base)).collect();
    let gram = DMatrix::from_fn(k, k, |i, j| dot(&edges[i], &edges[j]));
    let det = gram.determinant().max(0.0);
    det.sqrt() / factorial(k)
}

pub fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}
