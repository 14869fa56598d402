use itertools::Itertools;
use nalgebra::{DMatrix, DVector};

use super::halfspace::HalfSpace;
use super::hpolytope::HPolytope;
use crate::error::{GonbError, Result};
use crate::linalg::dist;

/// Euclidean distance from `x` to the polytope `{<a_i, y> <= b_i}`.
///
/// The nearest point is the orthogonal projection of `x` onto the affine
/// hull of some set of at most `d` active constraints, so enumerating those
/// sets and keeping the feasible projections gives the exact distance.
pub fn distance_to_polytope(x: &[f64], p: &HPolytope) -> Result<f64> {
    if p.is_empty() {
        return Err(GonbError::EmptyPolytope);
    }
    if p.contains(x) {
        return Ok(0.0);
    }
    let hs = p.halfspaces();
    let mut best = f64::INFINITY;
    // Any vertex is a feasible upper bound.
    for v in p.extreme_points() {
        best = best.min(dist(x, v));
    }
    for k in 1..=p.dim().min(hs.len()) {
        for combo in (0..hs.len()).combinations(k) {
            if let Some(y) = project_onto_flat(x, &combo.iter().map(|&i| &hs[i]).collect::<Vec<_>>()) {
                if p.contains(&y) {
                    best = best.min(dist(x, &y));
                }
            }
        }
    }
    Ok(best)
}

fn project_onto_flat(x: &[f64], active: &[&HalfSpace]) -> Option<Vec<f64>> {
    let d = x.len();
    let k = active.len();
    let a = DMatrix::from_fn(k, d, |i, j| active[i].normal[j]);
    let gram = &a * a.transpose();
    let xv = DVector::from_column_slice(x);
    let resid = &a * &xv - DVector::from_fn(k, |i, _| active[i].offset);
    let chol = gram.cholesky()?;
    let mult = chol.solve(&resid);
    let y = xv - a.transpose() * mult;
    Some(y.iter().copied().collect())
}

/// Hausdorff distance between two nonempty polytopes (full or flat).
///
/// Distance to a convex set is convex, so the one-sided maximum over a
/// polytope is attained at one of its vertices.
pub fn hausdorff_distance(p: &HPolytope, q: &HPolytope) -> Result<f64> {
    if p.is_empty() || q.is_empty() {
        return Err(GonbError::EmptyPolytope);
    }
    if p.dim() != q.dim() {
        return Err(GonbError::DimensionMismatch {
            expected: p.dim(),
            got: q.dim(),
        });
    }
    let mut h: f64 = 0.0;
    for v in p.extreme_points() {
        h = h.max(distance_to_polytope(v, q)?);
    }
    for v in q.extreme_points() {
        h = h.max(distance_to_polytope(v, p)?);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::fixtures::unit_square;

    #[test]
    fn self_distance_is_zero() {
        let p = unit_square();
        assert_eq!(hausdorff_distance(&p, &p).unwrap(), 0.0);
    }

    #[test]
    fn shifted_square() {
        let p = unit_square();
        let q = p.translate(&[0.5, 0.0]);
        assert!((hausdorff_distance(&p, &q).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn corner_distance() {
        let p = unit_square();
        let d = distance_to_polytope(&[2.0, 2.0], &p).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-12);
        let e = distance_to_polytope(&[0.5, 3.0], &p).unwrap();
        assert!((e - 2.0).abs() < 1e-12);
    }

    #[test]
    fn collapsing_triangles_approach_their_base() {
        // v1, v2 unit apart, v3 the apex of the equilateral triangle.
        let v1 = [0.0, 0.0];
        let v2 = [1.0, 0.0];
        let v3 = [0.5, 3f64.sqrt() / 2.0];
        let segment = HPolytope::normalize(
            &[
                (vec![1.0, 0.0], 1.0),
                (vec![-1.0, 0.0], 0.0),
                (vec![0.0, 1.0], 0.0),
                (vec![0.0, -1.0], 0.0),
            ],
            2,
        )
        .unwrap();
        let mut last = f64::INFINITY;
        for n in [1.0, 2.0, 4.0, 16.0, 256.0] {
            let apex = [
                v3[0] / n + (1.0 - 1.0 / n) * v1[0],
                v3[1] / n + (1.0 - 1.0 / n) * v1[1],
            ];
            let t = crate::polytope::from_vertices(&[v1.to_vec(), v2.to_vec(), apex.to_vec()]).unwrap();
            let h = hausdorff_distance(&t, &segment).unwrap();
            assert!(h < last);
            assert!((h - apex[1]).abs() < 1e-12);
            last = h;
        }
        assert!(last < 0.01);
    }
}
