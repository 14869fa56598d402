//! Exact transforms `∫ e^{-2πi<λ,x>} dx` of simplices, polytope indicators
//! and facet surface measures.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::divdiff::exp_divided_difference;
use crate::error::{GonbError, Result};
use crate::linalg::{dot, factorial, simplex_volume, TAU_GEOM};
use crate::polytope::{Facet, HPolytope, Simplex};

/// Transform of a k-simplex with the given k-volume, embedded in any R^d:
/// `k! vol Δ[z_0, ..., z_k] exp` with `z_j = -2πi <λ, v_j>`.
pub(crate) fn simplex_kernel(points: &[Vec<f64>], volume: f64, lambda: &[f64]) -> Complex64 {
    let k = points.len() - 1;
    let nodes: Vec<Complex64> = points
        .iter()
        .map(|v| Complex64::new(0.0, -2.0 * PI * dot(lambda, v)))
        .collect();
    exp_divided_difference(&nodes) * (factorial(k) * volume)
}

/// `∫_T e^{-2πi<λ,x>} dx` over the d-simplex `T = conv{v_0, ..., v_d}`.
pub fn ft_simplex(vertices: &[Vec<f64>], lambda: &[f64]) -> Result<Complex64> {
    let d = lambda.len();
    if vertices.len() != d + 1 {
        return Err(GonbError::DimensionMismatch {
            expected: d + 1,
            got: vertices.len(),
        });
    }
    if let Some(v) = vertices.iter().find(|v| v.len() != d) {
        return Err(GonbError::DimensionMismatch {
            expected: d,
            got: v.len(),
        });
    }
    let refs: Vec<&[f64]> = vertices.iter().map(|v| v.as_slice()).collect();
    let vol = simplex_volume(&refs);
    let scale = vertices
        .iter()
        .flat_map(|v| v.iter().map(|x| x.abs()))
        .fold(1.0, f64::max);
    if vol <= TAU_GEOM * scale.powi(d as i32) {
        return Err(GonbError::DegenerateSimplex);
    }
    Ok(simplex_kernel(vertices, vol, lambda))
}

fn sum_simplices(simplices: &[Simplex], lambda: &[f64]) -> Complex64 {
    simplices
        .iter()
        .map(|s| simplex_kernel(&s.points, s.volume, lambda))
        .sum()
}

/// `χ̂_P(λ)`, summed over the polytope's triangulation. Zero for degenerate or
/// empty polytopes.
pub fn ft_indicator(p: &HPolytope, lambda: &[f64]) -> Complex64 {
    assert_eq!(lambda.len(), p.dim(), "frequency dimension");
    sum_simplices(p.simplices(), lambda)
}

/// `σ̂_F(λ) = ∫_F e^{-2πi<λ,x>} dσ(x)`.
///
/// The facet is parameterized isometrically by its tangent frame around the
/// foot point `b n`, so the value is the (d-1)-dimensional transform at the
/// tangential frequency times the phase `e^{-2πi b <λ, n>}`.
pub fn ft_facet_measure(facet: &Facet, lambda: &[f64]) -> Result<Complex64> {
    if facet.volume_dm1 <= TAU_GEOM {
        return Err(GonbError::DegenerateFacet);
    }
    Ok(facet_measure_unchecked(facet, lambda))
}

pub(crate) fn facet_measure_unchecked(facet: &Facet, lambda: &[f64]) -> Complex64 {
    let tangential: Vec<f64> = facet.tangent_basis().iter().map(|u| dot(u, lambda)).collect();
    let phase = Complex64::new(0.0, -2.0 * PI * dot(lambda, &facet.foot())).exp();
    phase * sum_simplices(facet.local_simplices(), &tangential)
}
