//! Convex polytopes in half-space form: canonicalization, vertices, facets,
//! volumes, translate-intersections, the parallel-facet symmetry test and the
//! Hausdorff metric.

mod facet;
mod halfspace;
mod hausdorff;
mod hpolytope;
mod io;
mod symmetry;
mod triangulate;

pub use facet::Facet;
pub use halfspace::{normals_match, HalfSpace};
pub use hausdorff::{distance_to_polytope, hausdorff_distance};
pub use hpolytope::{HPolytope, Shape};
pub(crate) use hpolytope::enumerate_vertices;
pub use io::{from_vertices, parse_polytope, polytope_to_json, PolytopeJson};
pub use triangulate::Simplex;
pub use symmetry::{
    is_symmetric, nonsymmetry_margin, pair_gap_at, pair_margin, parallel_facet,
    persistence_radius, FacetPair, SymmetryReport,
};

/// Named polytopes used throughout the tests, the guide and the CLI.
pub mod fixtures {
    use super::{from_vertices, HPolytope};

    /// Vertices of the square `[0,2]^2` with its top-left corner cut off.
    pub fn pentagon_vertices() -> Vec<Vec<f64>> {
        vec![
            vec![0.0, 0.0],
            vec![2.0, 0.0],
            vec![2.0, 2.0],
            vec![1.0, 2.0],
            vec![0.0, 1.0],
        ]
    }

    /// `conv{(0,0), (2,0), (2,2), (1,2), (0,1)}`, a non-symmetric pentagon.
    pub fn pentagon() -> HPolytope {
        from_vertices(&pentagon_vertices()).expect("pentagon")
    }

    pub fn unit_square() -> HPolytope {
        HPolytope::axis_box(&[0.0, 0.0], &[1.0, 1.0]).expect("square")
    }

    /// `{x >= 0, y >= 0, x + y <= 1}`.
    pub fn simplex2() -> HPolytope {
        HPolytope::normalize(
            &[(vec![-1.0, 0.0], 0.0), (vec![0.0, -1.0], 0.0), (vec![1.0, 1.0], 1.0)],
            2,
        )
        .expect("simplex")
    }
}
