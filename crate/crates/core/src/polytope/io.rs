//! Polytope JSON:
//! `{ "dim": d, "halfspaces": [{"normal": [...], "offset": b}, ...] }` or
//! `{ "dim": d, "vertices": [[...], ...] }` (vertex input for `d <= 3`).

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::halfspace::HalfSpace;
use super::hpolytope::HPolytope;
use crate::error::{GonbError, Result};
use crate::linalg::{affine_dim, dot, norm, sub};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub halfspaces: Option<Vec<HalfSpace>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<Vec<f64>>>,
}

impl PolytopeJson {
    /// Canonical H-representation, with vertices attached for readability.
    pub fn from_polytope(p: &HPolytope) -> Self {
        Self {
            dim: p.dim(),
            halfspaces: Some(p.halfspaces().to_vec()),
            vertices: Some(p.extreme_points().to_vec()),
        }
    }

    /// Half-spaces take precedence when both forms are present.
    pub fn to_polytope(&self) -> Result<HPolytope> {
        if let Some(hs) = &self.halfspaces {
            let raw: Vec<(Vec<f64>, f64)> =
                hs.iter().map(|h| (h.normal.clone(), h.offset)).collect();
            HPolytope::normalize(&raw, self.dim)
        } else if let Some(vs) = &self.vertices {
            if let Some(v) = vs.iter().find(|v| v.len() != self.dim) {
                return Err(GonbError::DimensionMismatch {
                    expected: self.dim,
                    got: v.len(),
                });
            }
            from_vertices(vs)
        } else {
            Err(GonbError::InvalidInput(
                "polytope needs \"halfspaces\" or \"vertices\"".into(),
            ))
        }
    }
}

pub fn parse_polytope(json: &str) -> Result<HPolytope> {
    let doc: PolytopeJson =
        serde_json::from_str(json).map_err(|e| GonbError::InvalidInput(e.to_string()))?;
    doc.to_polytope()
}

pub fn polytope_to_json(p: &HPolytope) -> String {
    serde_json::to_string_pretty(&PolytopeJson::from_polytope(p)).expect("plain data")
}

/// H-representation of the convex hull of points in dimension 1, 2 or 3.
pub fn from_vertices(points: &[Vec<f64>]) -> Result<HPolytope> {
    let d = points.first().map(Vec::len).unwrap_or(0);
    if d == 0 || d > 3 {
        return Err(GonbError::InvalidInput(format!(
            "vertex input supports dimensions 1..=3, got {d}"
        )));
    }
    let refs: Vec<&[f64]> = points.iter().map(|p| p.as_slice()).collect();
    if affine_dim(&refs) < d {
        return Err(GonbError::DegeneratePolytope);
    }
    let raw = match d {
        1 => {
            let lo = points.iter().map(|p| p[0]).fold(f64::INFINITY, f64::min);
            let hi = points.iter().map(|p| p[0]).fold(f64::NEG_INFINITY, f64::max);
            vec![(vec![1.0], hi), (vec![-1.0], -lo)]
        }
        2 => hull_2d(points),
        _ => hull_3d(points),
    };
    HPolytope::normalize(&raw, d)
}

/// Monotone-chain hull; edges in counter-clockwise order starting from the
/// lexicographically smallest point.
fn hull_2d(points: &[Vec<f64>]) -> Vec<(Vec<f64>, f64)> {
    let mut pts: Vec<[f64; 2]> = points.iter().map(|p| [p[0], p[1]]).collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let mut lower: Vec<[f64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    let hull: Vec<[f64; 2]> = lower.into_iter().chain(upper).collect();
    (0..hull.len())
        .map(|i| {
            let p = hull[i];
            let q = hull[(i + 1) % hull.len()];
            // Outward normal of a counter-clockwise edge.
            let n = vec![q[1] - p[1], p[0] - q[0]];
            let b = n[0] * p[0] + n[1] * p[1];
            (n, b)
        })
        .collect()
}

/// Brute-force facet search: every plane through three points that has all
/// points on one side.
fn hull_3d(points: &[Vec<f64>]) -> Vec<(Vec<f64>, f64)> {
    let mut out = Vec::new();
    let scale = points.iter().map(|p| norm(p)).fold(1.0, f64::max);
    for (i, j, k) in (0..points.len()).tuple_combinations() {
        let u = sub(&points[j], &points[i]);
        let v = sub(&points[k], &points[i]);
        let n = vec![
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        ];
        let nn = norm(&n);
        if nn <= 1e-12 * scale * scale {
            continue;
        }
        let n: Vec<f64> = n.iter().map(|x| x / nn).collect();
        let b = dot(&n, &points[i]);
        let tol = 1e-9 * scale;
        let above = points.iter().filter(|p| dot(&n, p) - b > tol).count();
        let below = points.iter().filter(|p| dot(&n, p) - b < -tol).count();
        if above == 0 {
            out.push((n, b));
        } else if below == 0 {
            out.push((n.iter().map(|x| -x).collect(), -b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::fixtures::pentagon_vertices;

    #[test]
    fn pentagon_from_vertices_recovers_vertices() {
        let p = from_vertices(&pentagon_vertices()).unwrap();
        assert_eq!(p.halfspaces().len(), 5);
        let mut expect = pentagon_vertices();
        expect.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        assert_eq!(p.vertices().unwrap(), expect.as_slice());
        assert!((p.volume() - 3.5).abs() < 1e-12);
    }

    #[test]
    fn interior_points_are_ignored() {
        let mut pts = pentagon_vertices();
        pts.push(vec![1.0, 1.0]);
        pts.push(vec![0.5, 0.5]);
        let p = from_vertices(&pts).unwrap();
        assert_eq!(p.vertices().unwrap().len(), 5);
    }

    #[test]
    fn octahedron_in_three_dimensions() {
        let mut pts = Vec::new();
        for i in 0..3 {
            for s in [1.0, -1.0] {
                let mut e = vec![0.0; 3];
                e[i] = s;
                pts.push(e);
            }
        }
        let p = from_vertices(&pts).unwrap();
        assert_eq!(p.facets().len(), 8);
        assert!((p.volume() - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn collinear_points_rejected() {
        let pts = vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]];
        assert_eq!(from_vertices(&pts).unwrap_err(), GonbError::DegeneratePolytope);
    }

    #[test]
    fn json_forms() {
        let h = parse_polytope(
            r#"{"dim": 2, "halfspaces": [
                {"normal": [1, 0], "offset": 1}, {"normal": [0, 1], "offset": 1},
                {"normal": [-1, 0], "offset": 0}, {"normal": [0, -1], "offset": 0}]}"#,
        )
        .unwrap();
        let v = parse_polytope(r#"{"dim": 2, "vertices": [[0,0],[1,0],[1,1],[0,1]]}"#).unwrap();
        assert!(h.same_vertices(&v, 1e-12));
        assert!(parse_polytope(r#"{"dim": 2}"#).is_err());
        assert!(parse_polytope("not json").is_err());
    }
}
