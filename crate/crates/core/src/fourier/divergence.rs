//! The divergence-theorem split of `-2πi λ_1 χ̂` into the facet pair and the
//! residual `G_t`, the facet decay bound, and the cone constant `C`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::frame::{AxisFrame, ConeRegion};
use super::transform::{facet_measure_unchecked, ft_indicator};
use crate::error::{GonbError, Result};
use crate::linalg::{dot, norm, TAU_GEOM};
use crate::polytope::{Facet, HPolytope};
use crate::sampling::{ball_samples, grid, lin_space, log_space};

/// `Σ_F <u, n_F> σ̂_F(λ)` over all facets; by the divergence theorem this
/// equals `-2πi <u, λ> χ̂_P(λ)`.
pub fn divergence_facet_sum(p: &HPolytope, direction: &[f64], lambda: &[f64]) -> Complex64 {
    p.facets()
        .iter()
        .map(|f| facet_measure_unchecked(f, lambda) * dot(direction, f.normal()))
        .sum()
}

/// `-2πi <u, λ> χ̂_P(λ)`.
pub fn divergence_volume_term(p: &HPolytope, direction: &[f64], lambda: &[f64]) -> Complex64 {
    Complex64::new(0.0, -2.0 * PI * dot(direction, lambda)) * ft_indicator(p, lambda)
}

/// A polytope in frame coordinates with its facet pair located: `A` carries
/// the normal `-e_1`, `B` (if present) the normal `e_1`.
#[derive(Clone, Debug)]
pub struct DivergenceSplit {
    polytope: HPolytope,
    a: usize,
    b: Option<usize>,
}

impl DivergenceSplit {
    /// `p_frame` must already be expressed in frame coordinates.
    pub fn new(p_frame: HPolytope) -> Result<Self> {
        let d = p_frame.dim();
        let mut e1 = vec![0.0; d];
        e1[0] = 1.0;
        let facets = p_frame.facets();
        let a = facets
            .iter()
            .position(|f| f.supporting.same_direction(&e1.iter().map(|x| -x).collect::<Vec<_>>()))
            .ok_or_else(|| GonbError::FrameMismatch("no facet with normal -e1".into()))?;
        let b = facets.iter().position(|f| f.supporting.same_direction(&e1));
        Ok(Self {
            polytope: p_frame,
            a,
            b,
        })
    }

    pub fn polytope(&self) -> &HPolytope {
        &self.polytope
    }

    pub fn facet_a(&self) -> &Facet {
        &self.polytope.facets()[self.a]
    }

    pub fn facet_b(&self) -> Option<&Facet> {
        self.b.map(|i| &self.polytope.facets()[i])
    }

    /// Facets other than `A` and `B` with a nonzero axial normal component.
    pub fn residual_facets(&self) -> impl Iterator<Item = &Facet> {
        self.polytope
            .facets()
            .iter()
            .enumerate()
            .filter(|(i, f)| *i != self.a && Some(*i) != self.b && f.normal()[0].abs() > TAU_GEOM)
            .map(|(_, f)| f)
    }

    /// `G_t(λ) = Σ_{F ∉ {A, B}} <e_1, n_F> σ̂_F(λ)`.
    pub fn residual(&self, lambda: &[f64]) -> Complex64 {
        self.residual_facets()
            .map(|f| facet_measure_unchecked(f, lambda) * f.normal()[0])
            .sum()
    }

    /// `σ̂_A(λ) - σ̂_B(λ)`.
    pub fn pair_difference(&self, lambda: &[f64]) -> Complex64 {
        let a = facet_measure_unchecked(self.facet_a(), lambda);
        let b = self
            .facet_b()
            .map_or(Complex64::new(0.0, 0.0), |f| facet_measure_unchecked(f, lambda));
        a - b
    }

    /// `G_t` from its definition, `-2πi λ_1 χ̂ + σ̂_A - σ̂_B`.
    pub fn residual_from_transform(&self, lambda: &[f64]) -> Complex64 {
        let e1 = axis(lambda.len());
        divergence_volume_term(&self.polytope, &e1, lambda) + self.pair_difference(lambda)
    }

    /// Smallest `|sin θ(λ, n_F)|` over the residual facets (1 if none).
    pub fn min_sin(&self, lambda: &[f64]) -> f64 {
        let l = norm(lambda);
        self.residual_facets()
            .map(|f| sin_angle(lambda, f.normal(), l))
            .fold(1.0, f64::min)
    }
}

fn axis(d: usize) -> Vec<f64> {
    let mut e = vec![0.0; d];
    e[0] = 1.0;
    e
}

fn sin_angle(lambda: &[f64], n: &[f64], lambda_norm: f64) -> f64 {
    let c = dot(lambda, n) / lambda_norm;
    (1.0 - c * c).max(0.0).sqrt()
}

/// `G_t(λ)` evaluated both ways.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DivergenceResidual {
    /// The facet sum `Σ_{F ∉ {A,B}} <e_1, n_F> σ̂_F(λ)`.
    pub value: Complex64,
    /// `-2πi λ_1 χ̂ + σ̂_A - σ̂_B`.
    pub from_transform: Complex64,
    /// `|value - from_transform|`.
    pub identity_error: f64,
}

/// `G_t(λ)` for `p_t` given in original coordinates and `λ` in frame
/// coordinates.
pub fn divergence_residual(
    p_t: &HPolytope,
    frame: &AxisFrame,
    lambda: &[f64],
) -> Result<DivergenceResidual> {
    let split = DivergenceSplit::new(frame.map_polytope(p_t)?)?;
    let value = split.residual(lambda);
    let from_transform = split.residual_from_transform(lambda);
    Ok(DivergenceResidual {
        value,
        from_transform,
        identity_error: (value - from_transform).norm(),
    })
}

/// `V_{d-2}(∂F) / (2π |λ| |sin θ(λ, n_F)|)`, an upper bound for `|σ̂_F(λ)|`.
pub fn sigma_bound(facet: &Facet, lambda: &[f64]) -> Result<f64> {
    let l = norm(lambda);
    let s = if l > 0.0 { sin_angle(lambda, facet.normal(), l) } else { 0.0 };
    if s < TAU_GEOM {
        return Err(GonbError::ParallelDirection { sin_theta: s });
    }
    Ok(facet.boundary_volume / (2.0 * PI * l * s))
}

/// Sampling plan for the cone scan: `λ_1` geometrically spaced in
/// `[r0, r1]`, transverse ratios `λ_j / λ_1` on a uniform grid of
/// `[-omega, omega]`, and translations on the ball `|t| <= eps` (frame
/// coordinates).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeScan {
    pub r0: f64,
    pub r1: f64,
    pub n_radial: usize,
    pub n_cross: usize,
    pub eps: f64,
    pub n_t: usize,
}

impl Default for ConeScan {
    fn default() -> Self {
        Self {
            r0: 10.0,
            r1: 200.0,
            n_radial: 128,
            n_cross: 16,
            eps: 0.0,
            n_t: 3,
        }
    }
}

impl ConeScan {
    /// Translations, in frame coordinates.
    pub fn times(&self, dim: usize) -> Vec<Vec<f64>> {
        ball_samples(dim, self.eps, self.n_t)
    }

    /// Frequencies in `C(omega)`, in frame coordinates. Only `λ_1 > 0` is
    /// sampled: `G_t(-λ) = conj(G_t(λ))` since every `σ̂_F` is the transform
    /// of a real measure.
    pub fn frequencies(&self, dim: usize, omega: f64) -> Vec<Vec<f64>> {
        let ratios = grid(&vec![lin_space(-omega, omega, self.n_cross.max(1)); dim - 1]);
        let mut out = Vec::new();
        for l1 in log_space(self.r0, self.r1, self.n_radial) {
            for s in &ratios {
                let mut l = vec![l1];
                l.extend(s.iter().map(|x| x * l1));
                out.push(l);
            }
        }
        out
    }
}

/// The sampled supremum of `|λ_1| |G_t(λ)|` and where it was attained.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeConstant {
    #[serde(rename = "C")]
    pub c: f64,
    pub t: Vec<f64>,
    pub lambda: Vec<f64>,
    /// Smallest `|sin θ(λ, n_F)|` met over residual facets and scanned `λ`.
    pub min_sin: f64,
    pub points: usize,
}

/// `C = sup |λ_1| |G_t(λ)|` over the cone scan and the translation ball, for
/// `p` in original coordinates and the scan in frame coordinates.
pub fn cone_constant(
    p: &HPolytope,
    frame: &AxisFrame,
    omega: f64,
    scan: &ConeScan,
) -> Result<ConeConstant> {
    if !(omega > 0.0) {
        return Err(GonbError::InvalidInput("omega must be positive".into()));
    }
    let window = frame.map_polytope(p)?;
    cone_constant_in_frame(&window, omega, scan)
}

pub(crate) fn cone_constant_in_frame(
    window: &HPolytope,
    omega: f64,
    scan: &ConeScan,
) -> Result<ConeConstant> {
    let d = window.dim();
    let times = scan.times(d);
    let freqs = scan.frequencies(d, omega);

    // Per-translation best, reduced in index order for determinism.
    let per_t: Vec<Result<(f64, usize, f64)>> = times
        .par_iter()
        .map(|t| {
            let split = DivergenceSplit::new(window.translate_intersection(t))?;
            let mut best = (f64::NEG_INFINITY, 0usize, 1.0f64);
            for (j, l) in freqs.iter().enumerate() {
                let v = l[0].abs() * split.residual(l).norm();
                if v > best.0 {
                    best.0 = v;
                    best.1 = j;
                }
                best.2 = best.2.min(split.min_sin(l));
            }
            Ok(best)
        })
        .collect();

    let mut out = ConeConstant {
        c: f64::NEG_INFINITY,
        t: Vec::new(),
        lambda: Vec::new(),
        min_sin: 1.0,
        points: times.len() * freqs.len(),
    };
    for (i, r) in per_t.into_iter().enumerate() {
        let (v, j, s) = r?;
        out.min_sin = out.min_sin.min(s);
        if v > out.c {
            out.c = v;
            out.t = times[i].clone();
            out.lambda = freqs[j].clone();
        }
    }
    if out.min_sin < TAU_GEOM {
        return Err(GonbError::ConeTooWide {
            min_sin: out.min_sin,
        });
    }
    Ok(out)
}

/// Convenience wrapper pairing the cone with its frame.
pub fn cone_region(frame: &AxisFrame, omega: f64) -> ConeRegion {
    ConeRegion {
        omega,
        frame: frame.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::ft_facet_measure;
    use crate::polytope::fixtures::{pentagon, unit_square};
    use crate::polytope::parallel_facet;

    fn pentagon_frame() -> (HPolytope, AxisFrame) {
        let p = pentagon();
        let a = p.facet_with_normal(&[0.0, -1.0]).unwrap().clone();
        let b = parallel_facet(&p, &a).unwrap().cloned();
        let f = AxisFrame::from_facet_pair(&p, &a, b.as_ref()).unwrap();
        (p, f)
    }

    #[test]
    fn square_residual_vanishes() {
        let sq = unit_square();
        let frame = AxisFrame::identity(2);
        for l in [[0.3, 0.0], [3.7, -2.2], [11.0, 0.5]] {
            let r = divergence_residual(&sq, &frame, &l).unwrap();
            assert!(r.value.norm() < 1e-15);
            assert!(r.from_transform.norm() < 1e-12, "{l:?}: {}", r.from_transform);
        }
    }

    #[test]
    fn residual_at_zero_is_the_volume_gap() {
        // A on {y1 = 0} has length 2, B on {y1 = 1} has length 1: the other
        // facets carry V(A) - V(B) of axial flux.
        let (p, frame) = pentagon_frame();
        let r = divergence_residual(&p, &frame, &[0.0, 0.0]).unwrap();
        assert!((r.value - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        assert!(r.identity_error < 1e-13);
    }

    #[test]
    fn identity_on_pentagon() {
        let (p, frame) = pentagon_frame();
        for l in [[0.7, 0.1], [13.0, -2.0], [-5.5, 4.25]] {
            let r = divergence_residual(&p, &frame, &l).unwrap();
            assert!(r.identity_error <= 1e-10 * (1.0 + r.value.norm()), "{l:?}");
        }
    }

    #[test]
    fn frame_mismatch_without_axis_facet() {
        let tri = crate::polytope::fixtures::simplex2();
        // {x >= 0} carries the normal -e1 in the standard frame but not in a
        // rotated one.
        assert!(divergence_residual(&tri, &AxisFrame::identity(2), &[1.0, 0.0]).is_ok());
        let rot = AxisFrame {
            origin: vec![0.0, 0.0],
            basis: vec![vec![0.6, 0.8], vec![-0.8, 0.6]],
            scale: 1.0,
        };
        assert!(matches!(
            divergence_residual(&tri, &rot, &[1.0, 0.0]),
            Err(GonbError::FrameMismatch(_))
        ));
    }

    #[test]
    fn sigma_bound_for_unit_segment() {
        let sq = unit_square();
        let f = sq.facet_with_normal(&[1.0, 0.0]).unwrap();
        let b = sigma_bound(f, &[0.0, 1.0]).unwrap();
        assert!((b - 1.0 / PI).abs() < 1e-15);
        assert!(matches!(
            sigma_bound(f, &[2.0, 0.0]),
            Err(GonbError::ParallelDirection { .. })
        ));
        assert!(ft_facet_measure(f, &[0.0, 0.37]).unwrap().norm() <= sigma_bound(f, &[0.0, 0.37]).unwrap());
    }

    #[test]
    fn square_cone_constant_is_zero() {
        let sq = unit_square();
        let scan = ConeScan {
            n_radial: 16,
            eps: 0.1,
            n_t: 2,
            ..ConeScan::default()
        };
        let c = cone_constant(&sq, &AxisFrame::identity(2), 0.2, &scan).unwrap();
        assert_eq!(c.c, 0.0);
    }

    #[test]
    fn cone_constant_monotone_in_omega() {
        let (p, frame) = pentagon_frame();
        let scan = ConeScan {
            n_radial: 24,
            n_cross: 9,
            eps: 0.05,
            n_t: 1,
            ..ConeScan::default()
        };
        // The ratio grid for 0.1 with 9 points is a subset of the one for
        // 0.2 with 17 points, so the scanned sets are nested.
        let small = cone_constant(&p, &frame, 0.1, &scan).unwrap();
        let big = cone_constant(&p, &frame, 0.2, &ConeScan { n_cross: 17, ..scan.clone() }).unwrap();
        assert!(small.c.is_finite() && small.c > 0.0);
        assert!(big.c >= small.c - 1e-12);
    }
}
