use serde::Serialize;

use super::facet::Facet;
use super::hpolytope::HPolytope;
use crate::error::{GonbError, Result};
use crate::linalg::TAU_GEOM;
use crate::sampling::ball_samples;

/// A facet together with its parallel facet (if any) and their volumes.
#[derive(Clone, Debug, Serialize)]
pub struct FacetPair {
    pub facet: Facet,
    pub parallel: Option<Facet>,
    pub volume: f64,
    pub parallel_volume: f64,
}

impl FacetPair {
    pub fn gap(&self) -> f64 {
        (self.volume - self.parallel_volume).abs()
    }
}

/// Outcome of the parallel-facet volume test.
#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub symmetric: bool,
    /// A facet whose parallel facet is missing or has a different volume.
    pub witness: Option<FacetPair>,
    /// Volume gap of the witness pair; zero when symmetric.
    pub margin: f64,
}

/// The facet of `p` whose outward normal is the negation of `facet`'s.
///
/// `Ok(None)` is the empty parallel facet.
pub fn parallel_facet<'a>(p: &'a HPolytope, facet: &Facet) -> Result<Option<&'a Facet>> {
    let own = p
        .facets()
        .iter()
        .any(|f| f.supporting.same_direction(facet.normal()) && (f.supporting.offset - facet.supporting.offset).abs() <= facet.supporting.tol());
    if !own {
        return Err(GonbError::FacetNotInPolytope);
    }
    let opposite: Vec<f64> = facet.normal().iter().map(|x| -x).collect();
    Ok(p.facet_with_normal(&opposite))
}

/// Parallel-facet volume test on every facet.
///
/// The witness prefers genuine parallel pairs (largest volume gap, earliest
/// half-space on ties) over facets without a parallel, since only a genuine
/// pair supports the two-plane normalization used downstream.
pub fn is_symmetric(p: &HPolytope, tol: f64) -> SymmetryReport {
    let mut paired: Option<FacetPair> = None;
    let mut unpaired: Option<FacetPair> = None;
    for f in p.facets() {
        let par = parallel_facet(p, f).expect("own facet");
        let pair = FacetPair {
            facet: f.clone(),
            parallel: par.cloned(),
            volume: f.volume_dm1,
            parallel_volume: par.map_or(0.0, |q| q.volume_dm1),
        };
        if pair.gap() <= tol {
            continue;
        }
        let slot = if pair.parallel.is_some() {
            &mut paired
        } else {
            &mut unpaired
        };
        if slot.as_ref().is_none_or(|best| pair.gap() > best.gap() + TAU_GEOM) {
            *slot = Some(pair);
        }
    }
    let witness = paired.or(unpaired);
    SymmetryReport {
        symmetric: witness.is_none() && p.is_full(),
        margin: witness.as_ref().map_or(0.0, FacetPair::gap),
        witness,
    }
}

/// `|V(A(t)) - V(B(t))|` for the facets of `Omega_t` carrying the normals of
/// `a` and `b` (an absent facet counts as volume zero).
pub fn pair_gap_at(p: &HPolytope, normal_a: &[f64], normal_b: Option<&[f64]>, t: &[f64]) -> f64 {
    let pt = p.translate_intersection(t);
    let va = pt.facet_with_normal(normal_a).map_or(0.0, |f| f.volume_dm1);
    let vb = normal_b
        .and_then(|n| pt.facet_with_normal(n))
        .map_or(0.0, |f| f.volume_dm1);
    (va - vb).abs()
}

/// Sampled minimum of the pair gap over the ball `{|t| <= eps}`.
pub fn pair_margin(
    p: &HPolytope,
    normal_a: &[f64],
    normal_b: Option<&[f64]>,
    eps: f64,
    n_samples: usize,
) -> f64 {
    ball_samples(p.dim(), eps, n_samples)
        .iter()
        .map(|t| pair_gap_at(p, normal_a, normal_b, t))
        .fold(f64::INFINITY, f64::min)
}

/// Estimate of `min_{|t| <= eps} |V(A(t)) - V(B(t))|` for the witness pair of
/// a non-symmetric polytope, sampled on [`ball_samples`].
pub fn nonsymmetry_margin(p: &HPolytope, eps: f64, n_samples: usize) -> Result<f64> {
    let report = is_symmetric(p, TAU_GEOM);
    let w = report.witness.ok_or(GonbError::SymmetricInput)?;
    Ok(pair_margin(
        p,
        w.facet.normal(),
        w.parallel.as_ref().map(|f| f.normal()),
        eps,
        n_samples,
    ))
}

/// Largest `eps` in `[0, eps_max]`, found by bisection, at which the sampled
/// margin still exceeds `fraction` times the margin at `t = 0`.
pub fn persistence_radius(
    p: &HPolytope,
    n_samples: usize,
    eps_max: f64,
    fraction: f64,
) -> Result<f64> {
    let m0 = nonsymmetry_margin(p, 0.0, n_samples)?;
    let floor = fraction * m0;
    let ok = |eps: f64| nonsymmetry_margin(p, eps, n_samples).map(|m| m > floor);
    if ok(eps_max)? {
        return Ok(eps_max);
    }
    let (mut lo, mut hi) = (0.0, eps_max);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if ok(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}
