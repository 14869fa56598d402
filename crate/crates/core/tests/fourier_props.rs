mod common;

use std::f64::consts::PI;

use gonb_core::fourier::{
    divergence_facet_sum, divergence_volume_term, exp_divided_difference_series,
    exp_divided_difference_with, ft_facet_measure, ft_indicator, ft_indicator_slices, ft_simplex,
    sigma_bound,
};
use gonb_core::linalg::dot;
use gonb_core::Complex64;
use proptest::prelude::*;

use common::{config, polytope, vector};

fn phase(lambda: &[f64], v: &[f64]) -> Complex64 {
    Complex64::from_polar(1.0, -2.0 * PI * dot(lambda, v))
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn transform_matches_slice_oracle(p in polytope(2), l in vector(2, 10.0)) {
        let fast = ft_indicator(&p, &l);
        let slow = ft_indicator_slices(&p, &l);
        prop_assert!((fast - slow).norm() <= 1e-10 * p.volume(), "{fast} vs {slow}");
    }

    #[test]
    fn transform_matches_slice_oracle_3d(p in polytope(3), l in vector(3, 4.0)) {
        let fast = ft_indicator(&p, &l);
        let slow = ft_indicator_slices(&p, &l);
        prop_assert!((fast - slow).norm() <= 1e-9 * p.volume(), "{fast} vs {slow}");
    }

    #[test]
    fn conjugate_symmetry(p in polytope(3), l in vector(3, 10.0)) {
        let minus: Vec<f64> = l.iter().map(|x| -x).collect();
        let d = ft_indicator(&p, &minus) - ft_indicator(&p, &l).conj();
        prop_assert!(d.norm() <= 1e-12 * p.volume().max(1.0));
    }

    #[test]
    fn translation_phase_law(p in polytope(2), l in vector(2, 10.0), v in vector(2, 3.0)) {
        let moved = ft_indicator(&p.translate(&v), &l);
        let want = phase(&l, &v) * ft_indicator(&p, &l);
        prop_assert!((moved - want).norm() <= 1e-10 * p.volume().max(1.0), "error {}", (moved - want).norm());
    }

    #[test]
    fn divergence_identity(p in polytope(3), l in vector(3, 10.0), u in vector(3, 1.0)) {
        let lhs = divergence_volume_term(&p, &u, &l);
        let rhs = divergence_facet_sum(&p, &u, &l);
        let scale = lhs.norm().max(rhs.norm());
        prop_assume!(scale > 1e-6);
        prop_assert!((lhs - rhs).norm() <= 1e-9 * scale, "{lhs} vs {rhs}");
    }

    #[test]
    fn facet_transform_bounded(p in polytope(3), l in vector(3, 20.0)) {
        for f in p.facets() {
            if let Ok(bound) = sigma_bound(f, &l) {
                let v = ft_facet_measure(f, &l).unwrap().norm();
                prop_assert!(v <= bound * (1.0 + 1e-9), "{v} > {bound}");
            }
        }
    }

    #[test]
    fn divided_difference_branches_agree(
        c in (-50.0f64..50.0, -50.0f64..50.0),
        offsets in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 2..5),
        diameter in 0.05f64..1.0,
    ) {
        // Rescale so the node set has exactly the given diameter; the split
        // branch needs separated nodes, so near-coincident draws are skipped.
        let raw: Vec<Complex64> = offsets.iter().map(|(a, b)| Complex64::new(*a, *b)).collect();
        let pairs = || raw.iter().enumerate().flat_map(|(i, a)| raw[i + 1..].iter().map(move |b| (a - b).norm()));
        let span = pairs().fold(0.0, f64::max);
        let gap = pairs().fold(f64::INFINITY, f64::min);
        prop_assume!(gap > 0.25 * span);
        let nodes: Vec<Complex64> = raw.iter().map(|w| Complex64::new(c.0, c.1) + w * (diameter / span)).collect();
        let split = exp_divided_difference_with(&nodes, 0.0);
        let series = exp_divided_difference_series(&nodes);
        prop_assert!((split - series).norm() <= 1e-10 * series.norm(), "{nodes:?} split {split} series {series}");
    }

    #[test]
    fn nearly_orthogonal_edge_is_stable(
        v in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 2), 3),
        r in 1.0f64..30.0,
        tilt in prop::sample::select(vec![0.0, 1e-12, 1e-9, 1e-6, 1e-4, 1e-2]),
    ) {
        let e = [v[1][0] - v[0][0], v[1][1] - v[0][1]];
        let len = e[0].hypot(e[1]);
        let area = ((v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) - (v[2][0] - v[0][0]) * (v[1][1] - v[0][1])).abs() / 2.0;
        prop_assume!(len > 0.1 && area > 0.05);
        let l = [r * (-e[1] + tilt * e[0]) / len, r * (e[0] + tilt * e[1]) / len];
        let fast = ft_simplex(&v, &l).unwrap();
        let tri = gonb_core::polytope::from_vertices(&v).unwrap();
        let slow = ft_indicator_slices(&tri, &l);
        prop_assert!((fast - slow).norm() <= 1e-6 * slow.norm().max(1e-3 * area), "{fast} vs {slow}");
    }
}

#[test]
fn coincident_nodes_give_derivatives() {
    // Δ[z, z, z] exp = e^z / 2.
    let z = Complex64::new(0.3, -2.0);
    let v = exp_divided_difference_with(&[z, z, z], 0.1);
    assert!((v - z.exp() / 2.0).norm() < 1e-15);
}
