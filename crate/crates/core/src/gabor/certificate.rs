//! Numeric realization of the non-vanishing lemma: constants
//! `(eps, delta, R, omega, eta, C)` and an affine frame such that
//! `V_gg(t, λ) != 0` for `|t| < eps` and `λ ∈ S(2 delta) \ B_R`, verified on
//! a dense scan.
//!
//! Everything is stated in frame coordinates, where the witness facet `A`
//! lies on `{y_1 = 0}` and its parallel `B` on `{y_1 = 1}`. Translations
//! and frequencies map back through [`AxisFrame::from_frame_time`] and
//! [`AxisFrame::from_frame_freq`]; `|V_gg|` is invariant under the map.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GonbError, Result};
use crate::fourier::{
    cone_constant_in_frame, ft_indicator, AxisFrame, ConeConstant, ConeRegion, ConeScan,
    DivergenceSplit,
};
use crate::linalg::TAU_GEOM;
use crate::polytope::{is_symmetric, pair_margin, HPolytope, PolytopeJson};
use crate::sampling::{ball_samples, cross_section_samples, log_space};

/// Sampling and tolerance knobs for [`build_certificate`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CertificateParams {
    /// Resolution of the translation-ball samples (see `ball_samples`).
    pub n_t: usize,
    /// Starting cylinder half-radius for the halving search.
    pub delta_initial: f64,
    /// Cross-section samples per transverse axis in the δ search.
    pub delta_cross: usize,
    pub max_halvings: usize,
    /// The certified gap is this fraction of the facet-volume margin.
    pub gap_fraction: f64,
    /// Cone scan for `C`; its `eps` and `n_t` are overwritten.
    pub cone: ConeScan,
    /// Upper end of the verification scan in `|λ_1|`.
    pub lambda_max: f64,
    pub verify_radial: usize,
    pub verify_cross: usize,
    pub tol_zero: f64,
}

impl Default for CertificateParams {
    fn default() -> Self {
        Self {
            n_t: 3,
            delta_initial: 0.5,
            delta_cross: 17,
            max_halvings: 30,
            gap_fraction: 0.9,
            cone: ConeScan::default(),
            lambda_max: 200.0,
            verify_radial: 48,
            verify_cross: 5,
            tol_zero: 1e-9,
        }
    }
}

/// Outcome of the verification scan over `(|t| < eps) × (S(2δ) \ B_R)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationStats {
    pub points: usize,
    pub t_samples: usize,
    pub lambda_samples: usize,
    pub lambda_max: f64,
    /// Where `|V_gg|` was smallest.
    pub min_abs_t: Vec<f64>,
    pub min_abs_lambda: Vec<f64>,
    /// Points where `|V_gg| < (η - C/|λ_1|) / (2π |Ω| |λ_1|)`.
    pub chain_violations: usize,
    /// Points where `|λ_1| |G_t(λ)| > C`.
    pub bound_violations: usize,
    /// `min (|V_gg| - chain bound)` over the scan.
    pub min_chain_slack: f64,
}

/// How each constant was obtained.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateProvenance {
    /// Outward normals of `A` and `B` in original coordinates.
    pub normal_a: Vec<f64>,
    pub normal_b: Option<Vec<f64>>,
    /// Window volume in frame coordinates.
    pub window_volume: f64,
    pub delta_halvings: usize,
    /// Sampled minimum of `||σ̂_A| - |σ̂_B||` on the final cylinder.
    pub cylinder_gap: f64,
    pub cone_scan: ConeScan,
    pub cone: ConeConstant,
    pub cone_entry_radius: f64,
    pub verification: VerificationStats,
    pub params: CertificateParams,
}

/// The constants of the non-vanishing lemma for one window.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NonZeroCertificate {
    pub eps: f64,
    pub delta: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub omega: f64,
    /// Certified lower bound for `|σ̂_{A(t)} - σ̂_{B(t)}|` on `S(2δ)`.
    pub eta: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub frame: AxisFrame,
    pub min_abs_scanned: f64,
    /// Sampled `min_{|t| <= eps} |V(A(t)) - V(B(t))|`.
    pub facet_margin: f64,
    /// The window the certificate was built for (original coordinates).
    pub window: PolytopeJson,
    pub provenance: CertificateProvenance,
}

impl NonZeroCertificate {
    pub fn cone(&self) -> ConeRegion {
        ConeRegion {
            omega: self.omega,
            frame: self.frame.clone(),
        }
    }

    /// Whether the certificate was built for `p`.
    pub fn matches(&self, p: &HPolytope) -> bool {
        self.window
            .to_polytope()
            .is_ok_and(|w| w.dim() == p.dim() && w.same_vertices(p, 1e-9))
    }

    /// `(|t'| < eps, |λ'_⊥| < 2δ, |λ'| >= R)` for a frame-coordinate pair.
    pub fn region_contains(&self, t_frame: &[f64], lambda_frame: &[f64]) -> bool {
        let nt = t_frame.iter().map(|x| x * x).sum::<f64>().sqrt();
        let perp = lambda_frame[1..].iter().map(|x| x * x).sum::<f64>().sqrt();
        let nl = lambda_frame.iter().map(|x| x * x).sum::<f64>().sqrt();
        nt < self.eps && perp < 2.0 * self.delta && nl >= self.r
    }

    /// The lower bound `(η - C/|λ_1|) / (2π |Ω| |λ_1|)` in frame coordinates.
    pub fn chain_bound(&self, lambda_frame: &[f64]) -> f64 {
        let l1 = lambda_frame[0].abs();
        (self.eta - self.c / l1) / (2.0 * PI * self.provenance.window_volume * l1)
    }
}

/// The witness pair in frame coordinates.
struct Normalized {
    frame: AxisFrame,
    window: HPolytope,
    has_b: bool,
    normal_a: Vec<f64>,
    normal_b: Option<Vec<f64>>,
}

fn normalize_window(p: &HPolytope) -> Result<Normalized> {
    if !p.is_full() {
        return Err(GonbError::ZeroVolumeWindow);
    }
    let report = is_symmetric(p, TAU_GEOM);
    let w = report.witness.ok_or(GonbError::SymmetricInput)?;
    let frame = AxisFrame::from_facet_pair(p, &w.facet, w.parallel.as_ref())?;
    let window = frame.map_polytope(p)?;
    Ok(Normalized {
        frame,
        window,
        has_b: w.parallel.is_some(),
        normal_a: w.facet.normal().to_vec(),
        normal_b: w.parallel.as_ref().map(|f| f.normal().to_vec()),
    })
}

fn axis(d: usize, s: f64) -> Vec<f64> {
    let mut e = vec![0.0; d];
    e[0] = s;
    e
}

fn frame_margin(n: &Normalized, eps: f64, n_t: usize) -> f64 {
    let d = n.window.dim();
    let b = axis(d, 1.0);
    pair_margin(&n.window, &axis(d, -1.0), n.has_b.then_some(b.as_slice()), eps, n_t)
}

/// Largest `eps <= eps_max` (bisection) at which the witness pair's sampled
/// margin, in frame coordinates, stays above `fraction` of its value at 0.
pub fn certificate_eps(p: &HPolytope, n_t: usize, eps_max: f64, fraction: f64) -> Result<f64> {
    let n = normalize_window(p)?;
    let floor = fraction * frame_margin(&n, 0.0, n_t);
    let ok = |eps: f64| frame_margin(&n, eps, n_t) > floor;
    if ok(eps_max) {
        return Ok(eps_max);
    }
    let (mut lo, mut hi) = (0.0, eps_max);
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Builds and verifies a [`NonZeroCertificate`] for a non-symmetric window.
pub fn build_certificate(
    p: &HPolytope,
    eps: f64,
    omega: f64,
    params: &CertificateParams,
) -> Result<NonZeroCertificate> {
    if !(eps > 0.0 && omega > 0.0) {
        return Err(GonbError::InvalidInput("eps and omega must be positive".into()));
    }
    let n = normalize_window(p)?;
    let d = p.dim();
    let window = &n.window;
    let volume = window.volume();

    // η: facet-volume gap of the pair over the translation ball.
    let facet_margin = frame_margin(&n, eps, params.n_t);
    if facet_margin <= TAU_GEOM {
        return Err(GonbError::MarginVanished {
            eps,
            eta: facet_margin,
        });
    }
    let eta = params.gap_fraction * facet_margin;

    // δ: halve until ||σ̂_A(t)| - |σ̂_B(t)|| >= η on the sampled cylinder
    // cross-section. The phases e^{-2πiλ_1 c} drop out of this lower bound
    // for |σ̂_A - σ̂_B|, so λ_1 need not be sampled.
    let times = ball_samples(d, eps, params.n_t);
    let pairs: Vec<_> = times
        .iter()
        .map(|t| {
            let wt = window.translate_intersection(t);
            let a = wt.facet_with_normal(&axis(d, -1.0)).cloned();
            let b = wt.facet_with_normal(&axis(d, 1.0)).cloned();
            (a, b)
        })
        .collect();
    let abs_measure = |f: &Option<crate::polytope::Facet>, l: &[f64]| {
        f.as_ref()
            .map_or(0.0, |f| crate::fourier::ft_facet_measure(f, l).map_or(0.0, |v| v.norm()))
    };
    let mut delta = params.delta_initial;
    let mut halvings = 0;
    let cylinder_gap = loop {
        let gap = cross_section_samples(d - 1, 2.0 * delta, params.delta_cross)
            .par_iter()
            .map(|w| {
                let mut l = vec![0.0];
                l.extend_from_slice(w);
                pairs
                    .iter()
                    .map(|(a, b)| (abs_measure(a, &l) - abs_measure(b, &l)).abs())
                    .fold(f64::INFINITY, f64::min)
            })
            .reduce(|| f64::INFINITY, f64::min);
        if gap >= eta {
            break gap;
        }
        halvings += 1;
        if halvings > params.max_halvings {
            return Err(GonbError::MarginVanished { eps, eta: gap });
        }
        delta *= 0.5;
    };

    // C over the cone, then R.
    let cone_scan = ConeScan {
        eps,
        n_t: params.n_t,
        ..params.cone.clone()
    };
    let cone = cone_constant_in_frame(window, omega, &cone_scan)?;
    let c = cone.c;
    let region = ConeRegion {
        omega,
        frame: n.frame.clone(),
    };
    let entry = region.entry_radius(2.0 * delta);
    // Below r0 the cone scan says nothing about G, so R stays above it.
    let r = (2.0 * c / eta).max(entry).max(cone_scan.r0);
    if r >= params.lambda_max {
        return Err(GonbError::InvalidInput(format!(
            "R = {r} leaves no room below lambda_max = {}",
            params.lambda_max
        )));
    }

    // Verification scan over (|t| < eps) x (S(2δ) \ B_R), |λ_1| <= lambda_max.
    let vt = ball_samples(d, eps * (1.0 - 1e-9), params.n_t);
    let cross = cross_section_samples(d - 1, 2.0 * delta, params.verify_cross);
    let mut freqs = Vec::new();
    for l1 in log_space(r, params.lambda_max, params.verify_radial) {
        for s in [1.0, -1.0] {
            for w in &cross {
                let mut l = vec![s * l1];
                l.extend_from_slice(w);
                freqs.push(l);
            }
        }
    }
    let per_t: Vec<Result<ScanPart>> = vt
        .par_iter()
        .map(|t| {
            let split = DivergenceSplit::new(window.translate_intersection(t))?;
            let mut part = ScanPart::default();
            for (j, l) in freqs.iter().enumerate() {
                let v = ft_indicator(split.polytope(), l).norm() / volume;
                let l1 = l[0].abs();
                if v <= params.tol_zero {
                    return Err(GonbError::ScanFailure {
                        t: t.clone(),
                        lambda: l.clone(),
                        value: v,
                    });
                }
                if v < part.min_abs {
                    part.min_abs = v;
                    part.min_j = j;
                }
                let chain = (eta - c / l1) / (2.0 * PI * volume * l1);
                part.min_slack = part.min_slack.min(v - chain);
                if v < chain {
                    part.chain_violations += 1;
                }
                if l1 * split.residual(l).norm() > c * (1.0 + 1e-12) {
                    part.bound_violations += 1;
                }
            }
            Ok(part)
        })
        .collect();

    let mut stats = VerificationStats {
        points: vt.len() * freqs.len(),
        t_samples: vt.len(),
        lambda_samples: freqs.len(),
        lambda_max: params.lambda_max,
        min_abs_t: Vec::new(),
        min_abs_lambda: Vec::new(),
        chain_violations: 0,
        bound_violations: 0,
        min_chain_slack: f64::INFINITY,
    };
    let mut min_abs = f64::INFINITY;
    for (i, part) in per_t.into_iter().enumerate() {
        let part = part?;
        stats.chain_violations += part.chain_violations;
        stats.bound_violations += part.bound_violations;
        stats.min_chain_slack = stats.min_chain_slack.min(part.min_slack);
        if part.min_abs < min_abs {
            min_abs = part.min_abs;
            stats.min_abs_t = vt[i].clone();
            stats.min_abs_lambda = freqs[part.min_j].clone();
        }
    }

    Ok(NonZeroCertificate {
        eps,
        delta,
        r,
        omega,
        eta,
        c,
        frame: n.frame,
        min_abs_scanned: min_abs,
        facet_margin,
        window: PolytopeJson::from_polytope(p),
        provenance: CertificateProvenance {
            normal_a: n.normal_a,
            normal_b: n.normal_b,
            window_volume: volume,
            delta_halvings: halvings,
            cylinder_gap,
            cone_scan,
            cone,
            cone_entry_radius: entry,
            verification: stats,
            params: params.clone(),
        },
    })
}

struct ScanPart {
    min_abs: f64,
    min_j: usize,
    min_slack: f64,
    chain_violations: usize,
    bound_violations: usize,
}

impl Default for ScanPart {
    fn default() -> Self {
        Self {
            min_abs: f64::INFINITY,
            min_j: 0,
            min_slack: f64::INFINITY,
            chain_violations: 0,
            bound_violations: 0,
        }
    }
}
