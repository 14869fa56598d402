use std::sync::OnceLock;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::facet::{build_facets, Facet};
use super::halfspace::HalfSpace;
use super::triangulate::{triangulate_face, Simplex};
use crate::error::{GonbError, Result};
use crate::linalg::{affine_dim, dist, dot, norm, solve, TAU_GEOM};

/// Half-width of the auxiliary box used to detect unbounded systems.
const BOUNDING_BOX: f64 = 1e6;

/// What kind of point set a half-space system describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// Nonempty interior.
    Full,
    /// Nonempty but contained in a hyperplane.
    Degenerate,
    Empty,
}

/// Bounded intersection of finitely many closed half-spaces.
///
/// Values are immutable after construction. Vertices are computed eagerly;
/// the triangulation and facet list are filled in on first use.
#[derive(Clone, Debug)]
pub struct HPolytope {
    dim: usize,
    halfspaces: Vec<HalfSpace>,
    vertices: Vec<Vec<f64>>,
    shape: Shape,
    simplices: OnceLock<Vec<Simplex>>,
    facets: OnceLock<Vec<Facet>>,
}

impl HPolytope {
    /// Canonicalizes a raw half-space list `(a_i, b_i)`.
    ///
    /// Normals are scaled to unit length, duplicate normals merged keeping the
    /// smallest offset, and half-spaces that do not support a facet dropped.
    pub fn normalize(raw: &[(Vec<f64>, f64)], dim: usize) -> Result<Self> {
        let hs = raw
            .iter()
            .map(|(a, b)| {
                if a.len() != dim {
                    return Err(GonbError::DimensionMismatch {
                        expected: dim,
                        got: a.len(),
                    });
                }
                HalfSpace::new(a.clone(), *b)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_halfspaces(hs, dim)
    }

    /// Like [`HPolytope::normalize`] for already-built half-spaces.
    pub fn from_halfspaces(halfspaces: Vec<HalfSpace>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(GonbError::InvalidInput("dimension must be positive".into()));
        }
        if let Some(h) = halfspaces.iter().find(|h| h.dim() != dim) {
            return Err(GonbError::DimensionMismatch {
                expected: dim,
                got: h.dim(),
            });
        }
        let p = Self::canonical(halfspaces, dim, false)?;
        if p.shape == Shape::Empty {
            return Err(GonbError::EmptyPolytope);
        }
        Ok(p)
    }

    /// Axis-aligned box `[lo_1, hi_1] x ... x [lo_d, hi_d]`.
    pub fn axis_box(lo: &[f64], hi: &[f64]) -> Result<Self> {
        let d = lo.len();
        let mut raw = Vec::with_capacity(2 * d);
        for i in 0..d {
            let mut e = vec![0.0; d];
            e[i] = 1.0;
            raw.push((e.clone(), hi[i]));
            e[i] = -1.0;
            raw.push((e, -lo[i]));
        }
        Self::normalize(&raw, d)
    }

    /// Builds the canonical form. Empty systems are returned flagged rather
    /// than rejected; unbounded ones are an error unless `bounded` is known.
    pub(crate) fn canonical(halfspaces: Vec<HalfSpace>, dim: usize, bounded: bool) -> Result<Self> {
        let mut merged: Vec<HalfSpace> = Vec::with_capacity(halfspaces.len());
        for h in halfspaces {
            match merged.iter_mut().find(|m| m.same_direction(&h.normal)) {
                Some(m) => m.offset = m.offset.min(h.offset),
                None => merged.push(h),
            }
        }

        let vertices = if bounded {
            enumerate_vertices(&merged, dim)
        } else {
            let mut boxed = merged.clone();
            for i in 0..dim {
                for s in [1.0, -1.0] {
                    let mut e = vec![0.0; dim];
                    e[i] = s;
                    boxed.push(HalfSpace {
                        normal: e,
                        offset: BOUNDING_BOX,
                    });
                }
            }
            let vs = enumerate_vertices(&boxed, dim);
            if vs
                .iter()
                .any(|v| v.iter().any(|x| x.abs() >= BOUNDING_BOX * (1.0 - 1e-9)))
            {
                return Err(GonbError::UnboundedPolytope);
            }
            vs
        };

        let shape = if vertices.is_empty() {
            Shape::Empty
        } else {
            let refs: Vec<&[f64]> = vertices.iter().map(|v| v.as_slice()).collect();
            if affine_dim(&refs) < dim {
                Shape::Degenerate
            } else {
                Shape::Full
            }
        };

        let halfspaces = if shape == Shape::Full {
            merged
                .into_iter()
                .filter(|h| {
                    let tight: Vec<&[f64]> = vertices
                        .iter()
                        .filter(|v| h.is_tight(v))
                        .map(|v| v.as_slice())
                        .collect();
                    tight.len() >= dim && affine_dim(&tight) == dim - 1
                })
                .collect()
        } else {
            merged
        };

        Ok(Self {
            dim,
            halfspaces,
            vertices,
            shape,
            simplices: OnceLock::new(),
            facets: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[HalfSpace] {
        &self.halfspaces
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_full(&self) -> bool {
        self.shape == Shape::Full
    }

    pub fn is_empty(&self) -> bool {
        self.shape == Shape::Empty
    }

    /// Vertices of a full-dimensional polytope.
    pub fn vertices(&self) -> Result<&[Vec<f64>]> {
        match self.shape {
            Shape::Full => Ok(&self.vertices),
            _ => Err(GonbError::DegeneratePolytope),
        }
    }

    /// Vertices regardless of shape (empty for an empty system).
    pub fn extreme_points(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// Lebesgue measure; zero for degenerate or empty polytopes.
    pub fn volume(&self) -> f64 {
        self.simplices().iter().map(|s| s.volume).sum()
    }

    /// Deterministic triangulation into d-simplices: a fan from the vertex
    /// centroid over recursively triangulated facets.
    pub fn simplices(&self) -> &[Simplex] {
        self.simplices.get_or_init(|| {
            if self.shape != Shape::Full {
                return Vec::new();
            }
            let all: Vec<usize> = (0..self.vertices.len()).collect();
            let mut out = Vec::new();
            triangulate_face(&self.vertices, &all, self.dim, &self.halfspaces, &mut out);
            out.into_iter().map(Simplex::new).collect()
        })
    }

    /// One facet per retained half-space; empty unless the polytope is full.
    pub fn facets(&self) -> &[Facet] {
        self.facets.get_or_init(|| {
            if self.shape != Shape::Full {
                return Vec::new();
            }
            build_facets(&self.vertices, &self.halfspaces, self.dim)
        })
    }

    /// Facet whose outward unit normal matches `normal`.
    pub fn facet_with_normal(&self, normal: &[f64]) -> Option<&Facet> {
        self.facets()
            .iter()
            .find(|f| f.supporting.same_direction(normal))
    }

    /// `Omega ∩ (Omega + t)`, obtained by replacing every offset `b_i` with
    /// `min(b_i, b_i + <a_i, t>)` and re-canonicalizing.
    pub fn translate_intersection(&self, t: &[f64]) -> Self {
        assert_eq!(t.len(), self.dim, "translation dimension");
        let hs: Vec<HalfSpace> = self
            .halfspaces
            .iter()
            .map(|h| HalfSpace {
                normal: h.normal.clone(),
                offset: h.offset.min(h.offset + dot(&h.normal, t)),
            })
            .collect();
        Self::canonical(hs, self.dim, true).expect("shared normals keep the system bounded")
    }

    /// `Omega + v`.
    pub fn translate(&self, v: &[f64]) -> Self {
        let hs = self
            .halfspaces
            .iter()
            .map(|h| HalfSpace {
                normal: h.normal.clone(),
                offset: h.offset + dot(&h.normal, v),
            })
            .collect();
        Self::canonical(hs, self.dim, true).expect("translation keeps the system bounded")
    }

    /// Intersection by concatenating H-representations.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        if other.dim != self.dim {
            return Err(GonbError::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let hs = self
            .halfspaces
            .iter()
            .chain(other.halfspaces.iter())
            .cloned()
            .collect();
        Self::canonical(hs, self.dim, false)
    }

    /// The (degenerate) polytope `F = Omega ∩ {<a, x> = b}` for a facet.
    pub fn facet_polytope(&self, facet: &Facet) -> Self {
        let mut hs = self.halfspaces.clone();
        hs.push(facet.supporting.flipped());
        let mut p = Self::canonical(hs, self.dim, true).expect("facet of a bounded polytope");
        // The reversed constraint is merged away only if it was already present.
        p.shape = if p.vertices.is_empty() {
            Shape::Empty
        } else {
            Shape::Degenerate
        };
        p
    }

    /// Same vertex set within `tol` (order-free).
    pub fn same_vertices(&self, other: &Self, tol: f64) -> bool {
        same_point_sets(&self.vertices, &other.vertices, tol)
    }
}

pub(crate) fn same_point_sets(a: &[Vec<f64>], b: &[Vec<f64>], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter().all(|p| b.iter().any(|q| dist(p, q) <= tol))
        && b.iter().all(|q| a.iter().any(|p| dist(p, q) <= tol))
}

/// All vertices of `{x : <a_i, x> <= b_i}` by brute force over d-subsets of
/// constraints, deduplicated within the geometric tolerance.
pub(crate) fn enumerate_vertices(hs: &[HalfSpace], dim: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = Vec::new();
    if hs.len() < dim {
        return out;
    }
    for combo in (0..hs.len()).combinations(dim) {
        let rows: Vec<&[f64]> = combo.iter().map(|&i| hs[i].normal.as_slice()).collect();
        let rhs: Vec<f64> = combo.iter().map(|&i| hs[i].offset).collect();
        let Some(x) = solve(&rows, &rhs) else { continue };
        if !x.iter().all(|v| v.is_finite()) || !hs.iter().all(|h| h.contains(&x)) {
            continue;
        }
        let tol = TAU_GEOM * (1.0 + norm(&x));
        if !out.iter().any(|v| dist(v, &x) <= tol) {
            out.push(x);
        }
    }
    // Deterministic order: lexicographic.
    out.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square() -> HPolytope {
        HPolytope::axis_box(&[0.0, 0.0], &[1.0, 1.0]).unwrap()
    }

    #[test]
    fn dominated_constraint_dropped() {
        let p = HPolytope::normalize(
            &[(vec![1.0], 1.0), (vec![1.0], 2.0), (vec![-1.0], 0.0)],
            1,
        )
        .unwrap();
        assert_eq!(
            p.halfspaces(),
            &[
                HalfSpace {
                    normal: vec![1.0],
                    offset: 1.0
                },
                HalfSpace {
                    normal: vec![-1.0],
                    offset: 0.0
                }
            ]
        );
    }

    #[test]
    fn canonical_square_is_unchanged() {
        let raw = vec![
            (vec![1.0, 0.0], 1.0),
            (vec![0.0, 1.0], 1.0),
            (vec![-1.0, 0.0], 0.0),
            (vec![0.0, -1.0], 0.0),
        ];
        let p = HPolytope::normalize(&raw, 2).unwrap();
        let got: Vec<(Vec<f64>, f64)> = p
            .halfspaces()
            .iter()
            .map(|h| (h.normal.clone(), h.offset))
            .collect();
        assert_eq!(got, raw);
    }

    #[test]
    fn half_line_is_unbounded() {
        assert_eq!(
            HPolytope::normalize(&[(vec![1.0], 1.0)], 1).unwrap_err(),
            GonbError::UnboundedPolytope
        );
    }

    #[test]
    fn infeasible_is_empty() {
        assert_eq!(
            HPolytope::normalize(&[(vec![1.0], 0.0), (vec![-1.0], -1.0)], 1).unwrap_err(),
            GonbError::EmptyPolytope
        );
    }

    #[test]
    fn scaled_normals_are_normalized() {
        let p = HPolytope::normalize(
            &[(vec![2.0, 0.0], 2.0), (vec![0.0, 3.0], 3.0), (vec![-1.0, -1.0], 0.0)],
            2,
        )
        .unwrap();
        for h in p.halfspaces() {
            assert!((norm(&h.normal) - 1.0).abs() < 1e-12);
        }
        assert!((p.volume() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn square_vertices_and_volume() {
        let p = unit_square();
        assert_eq!(
            p.vertices().unwrap(),
            &[vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]]
        );
        assert!((p.volume() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn simplex_vertices() {
        let p = HPolytope::normalize(
            &[(vec![-1.0, 0.0], 0.0), (vec![0.0, -1.0], 0.0), (vec![1.0, 1.0], 1.0)],
            2,
        )
        .unwrap();
        assert_eq!(
            p.vertices().unwrap(),
            &[vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0]]
        );
    }

    #[test]
    fn flat_polytope_is_degenerate() {
        let p = HPolytope::normalize(
            &[
                (vec![1.0, 0.0], 1.0),
                (vec![-1.0, 0.0], 0.0),
                (vec![0.0, 1.0], 0.0),
                (vec![0.0, -1.0], 0.0),
            ],
            2,
        )
        .unwrap();
        assert_eq!(p.shape(), Shape::Degenerate);
        assert_eq!(p.vertices().unwrap_err(), GonbError::DegeneratePolytope);
        assert_eq!(p.volume(), 0.0);
        assert!(p.facets().is_empty());
    }

    #[test]
    fn cube_volume_in_three_and_four_dimensions() {
        let c3 = HPolytope::axis_box(&[0.0; 3], &[1.0, 2.0, 3.0]).unwrap();
        assert!((c3.volume() - 6.0).abs() < 1e-12);
        let c4 = HPolytope::axis_box(&[-1.0; 4], &[1.0; 4]).unwrap();
        assert!((c4.volume() - 16.0).abs() < 1e-11);
        assert_eq!(c4.facets().len(), 8);
    }

    #[test]
    fn translate_intersection_of_square() {
        let p = unit_square();
        let q = p.translate_intersection(&[0.5, 0.0]);
        let expect = HPolytope::axis_box(&[0.5, 0.0], &[1.0, 1.0]).unwrap();
        assert!(q.same_vertices(&expect, 1e-12));
        assert!(p.translate_intersection(&[0.0, 0.0]).same_vertices(&p, 0.0));
    }

    #[test]
    fn far_translate_is_empty() {
        let q = unit_square().translate_intersection(&[2.0, 0.0]);
        assert_eq!(q.shape(), Shape::Empty);
        assert_eq!(q.volume(), 0.0);
        let edge = unit_square().translate_intersection(&[1.0, 0.0]);
        assert_eq!(edge.shape(), Shape::Degenerate);
    }
}
