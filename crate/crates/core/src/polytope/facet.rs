use serde::Serialize;

use super::halfspace::HalfSpace;
use super::triangulate::{subfaces, triangulate_face, Simplex};
use crate::linalg::{dot, orthonormal_complement, scale, simplex_volume, sub, TAU_GEOM};

/// A (d-1)-face `Omega ∩ {<a, x> = b}` of positive (d-1)-volume.
#[derive(Clone, Debug, Serialize)]
pub struct Facet {
    pub supporting: HalfSpace,
    pub vertices: Vec<Vec<f64>>,
    pub volume_dm1: f64,
    /// (d-2)-volume of the relative boundary (sum over ridges).
    pub boundary_volume: f64,
    /// Orthonormal basis of the facet hyperplane's direction space.
    #[serde(skip)]
    pub(crate) tangent: Vec<Vec<f64>>,
    /// Triangulation in tangent coordinates around `foot()`.
    #[serde(skip)]
    pub(crate) local_simplices: Vec<Simplex>,
}

impl Facet {
    pub fn normal(&self) -> &[f64] {
        &self.supporting.normal
    }

    /// Point of the supporting hyperplane closest to the origin.
    pub fn foot(&self) -> Vec<f64> {
        scale(&self.supporting.normal, self.supporting.offset)
    }

    pub fn tangent_basis(&self) -> &[Vec<f64>] {
        &self.tangent
    }

    /// Isometric coordinates of `x` in the facet hyperplane.
    pub fn to_local(&self, x: &[f64]) -> Vec<f64> {
        let rel = sub(x, &self.foot());
        self.tangent.iter().map(|u| dot(u, &rel)).collect()
    }

    /// Triangulation of the facet in tangent coordinates, as (d-1)-simplices.
    pub fn local_simplices(&self) -> &[Simplex] {
        &self.local_simplices
    }
}

pub(crate) fn build_facets(verts: &[Vec<f64>], hs: &[HalfSpace], dim: usize) -> Vec<Facet> {
    let mut out = Vec::with_capacity(hs.len());
    for h in hs {
        let tight: Vec<usize> = (0..verts.len()).filter(|&i| h.is_tight(&verts[i])).collect();
        if tight.is_empty() {
            continue;
        }
        let mut simplices = Vec::new();
        triangulate_face(verts, &tight, dim - 1, hs, &mut simplices);

        let tangent = orthonormal_complement(&h.normal);
        let foot = scale(&h.normal, h.offset);
        let local_simplices: Vec<Simplex> = simplices
            .iter()
            .map(|s| {
                Simplex::new(
                    s.iter()
                        .map(|p| {
                            let rel = sub(p, &foot);
                            tangent.iter().map(|u| dot(u, &rel)).collect()
                        })
                        .collect(),
                )
            })
            .collect();
        let volume_dm1: f64 = local_simplices.iter().map(|s| s.volume).sum();
        if volume_dm1 <= TAU_GEOM {
            continue;
        }

        let boundary_volume = if dim >= 2 {
            subfaces(verts, &tight, dim - 1, hs)
                .iter()
                .map(|ridge| {
                    let mut rs = Vec::new();
                    triangulate_face(verts, ridge, dim - 2, hs, &mut rs);
                    rs.iter()
                        .map(|s| {
                            let refs: Vec<&[f64]> = s.iter().map(|p| p.as_slice()).collect();
                            simplex_volume(&refs)
                        })
                        .sum::<f64>()
                })
                .sum()
        } else {
            0.0
        };

        out.push(Facet {
            supporting: h.clone(),
            vertices: tight.iter().map(|&i| verts[i].clone()).collect(),
            volume_dm1,
            boundary_volume,
            tangent,
            local_simplices,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use crate::polytope::HPolytope;

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(f64::total_cmp);
        v
    }

    #[test]
    fn square_facets_have_unit_length() {
        let p = HPolytope::axis_box(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        let f = p.facets();
        assert_eq!(f.len(), 4);
        for facet in f {
            assert!((facet.volume_dm1 - 1.0).abs() < 1e-14);
            assert!((facet.boundary_volume - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn simplex_edge_lengths() {
        let p = HPolytope::normalize(
            &[(vec![-1.0, 0.0], 0.0), (vec![0.0, -1.0], 0.0), (vec![1.0, 1.0], 1.0)],
            2,
        )
        .unwrap();
        let lens = sorted(p.facets().iter().map(|f| f.volume_dm1).collect());
        let expect = [1.0, 1.0, 2f64.sqrt()];
        for (a, b) in lens.iter().zip(expect) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn cube_facets_in_three_dimensions() {
        let p = HPolytope::axis_box(&[0.0; 3], &[1.0, 2.0, 3.0]).unwrap();
        let areas = sorted(p.facets().iter().map(|f| f.volume_dm1).collect());
        let expect = [2.0, 2.0, 3.0, 3.0, 6.0, 6.0];
        for (a, b) in areas.iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{areas:?}");
        }
        // Face of size 2 x 3 has perimeter 10.
        let big = p.facets().iter().find(|f| (f.volume_dm1 - 6.0).abs() < 1e-9).unwrap();
        assert!((big.boundary_volume - 10.0).abs() < 1e-12);
    }

    #[test]
    fn facet_vertices_are_on_the_hyperplane() {
        let p = HPolytope::normalize(
            &[
                (vec![1.0, 0.3, 0.1], 1.0),
                (vec![-1.0, 0.2, 0.0], 1.0),
                (vec![0.0, 1.0, -0.4], 1.0),
                (vec![0.1, -1.0, 0.0], 1.0),
                (vec![0.0, 0.0, 1.0], 1.0),
                (vec![0.2, 0.1, -1.0], 1.0),
            ],
            3,
        )
        .unwrap();
        for f in p.facets() {
            for v in &f.vertices {
                assert!(f.supporting.is_tight(v));
            }
            assert!(f.volume_dm1 > 0.0);
        }
    }
}
