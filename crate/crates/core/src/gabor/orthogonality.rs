//! Mutual-orthogonality checks `Λ - Λ ⊂ {V_gg = 0}` on finite truncations.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::certificate::NonZeroCertificate;
use super::stft::StftWindow;
use super::tfset::{TimeFrequencyPoint, TimeFrequencySet};
use crate::error::{GonbError, Result};
use crate::polytope::HPolytope;

/// Two evaluators must agree to this relative error before a nonzero value
/// counts as confirmed.
pub const CONFIRM_RTOL: f64 = 1e-4;

/// A pair `(v, v')` with `|V_gg(v - v')| > tol_zero`.
#[derive(Clone, Debug, Serialize)]
pub struct ViolationReport {
    pub pair: (TimeFrequencyPoint, TimeFrequencyPoint),
    pub value: Complex64,
    pub abs_value: f64,
    /// The same value from the slice-integration oracle.
    pub oracle_value: Complex64,
    pub confirmed: bool,
}

/// Differences are identified after rounding to this grid, so lattice
/// differences that agree up to rounding are evaluated once.
const KEY_SCALE: f64 = 1e9;

fn key(v: &[f64]) -> Vec<i64> {
    v.iter().map(|x| (x * KEY_SCALE).round() as i64).collect()
}

fn confirm(window: &StftWindow, t: &[f64], lambda: &[f64], value: Complex64) -> (Complex64, bool) {
    let oracle = window.eval_oracle(t, lambda);
    let ok = (oracle - value).norm() <= CONFIRM_RTOL * value.norm();
    (oracle, ok)
}

/// Every ordered pair `v != v'` of `lambda_set` with `|V_gg(v - v')| >
/// tol_zero`, in lexicographic order of `(v, v')`. An empty list means the
/// truncation is mutually orthogonal.
pub fn check_orthogonality(
    p: &HPolytope,
    lambda_set: &TimeFrequencySet,
    tol_zero: f64,
) -> Result<Vec<ViolationReport>> {
    let window = StftWindow::new(p)?;
    let pts = &lambda_set.points;
    let n = pts.len();
    let d = lambda_set.dim();
    if d != p.dim() {
        return Err(GonbError::DimensionMismatch {
            expected: p.dim(),
            got: d,
        });
    }
    let flat: Vec<Vec<f64>> = pts.iter().map(TimeFrequencyPoint::flat).collect();

    // Distinct differences, and for each ordered pair the index of its
    // difference.
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut deltas: Vec<Vec<f64>> = Vec::new();
    let mut pair_delta: Vec<usize> = Vec::with_capacity(n * n.saturating_sub(1));
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let delta: Vec<f64> = flat[i].iter().zip(&flat[j]).map(|(a, b)| a - b).collect();
            let next = deltas.len();
            let k = *index.entry(key(&delta)).or_insert(next);
            if k == next {
                deltas.push(delta);
            }
            pair_delta.push(k);
        }
    }

    // Group by the time part so each Ω_t is built once.
    let mut by_t: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for (k, delta) in deltas.iter().enumerate() {
        by_t.entry(key(&delta[..d])).or_default().push(k);
    }
    let mut groups: Vec<Vec<usize>> = by_t.into_values().collect();
    groups.sort_by_key(|g| g[0]);

    let evaluated: Vec<Vec<(usize, Complex64, Option<(Complex64, bool)>)>> = groups
        .par_iter()
        .map(|g| {
            let t = &deltas[g[0]][..d];
            let pt = p.translate_intersection(t);
            g.iter()
                .map(|&k| {
                    let lambda = &deltas[k][d..];
                    let v = crate::fourier::ft_indicator(&pt, lambda) / window.volume();
                    let check = (v.norm() > tol_zero).then(|| confirm(&window, t, lambda, v));
                    (k, v, check)
                })
                .collect()
        })
        .collect();
    let mut values = vec![(Complex64::new(0.0, 0.0), None); deltas.len()];
    for (k, v, c) in evaluated.into_iter().flatten() {
        values[k] = (v, c);
    }

    let mut out = Vec::new();
    let mut m = 0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (v, check) = values[pair_delta[m]];
            m += 1;
            if let Some((oracle, confirmed)) = check {
                out.push(ViolationReport {
                    pair: (pts[i].clone(), pts[j].clone()),
                    value: v,
                    abs_value: v.norm(),
                    oracle_value: oracle,
                    confirmed,
                });
            }
        }
    }
    Ok(out)
}

/// Pair counts from an unsuccessful search.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub pairs_examined: usize,
    /// Pairs with `|t - t'| < eps` (frame coordinates).
    pub time_close: usize,
    /// Of those, pairs with `λ - λ'` in the cylinder `S(2δ)`; all of them
    /// stayed inside `B_R`.
    pub in_cylinder: usize,
}

#[derive(Clone, Debug, Serialize)]
pub enum SearchOutcome {
    Found(ViolationReport),
    NotFound(SearchStats),
}

/// First pair `(v, v')`, in lexicographic order, whose difference lies in the
/// certified region `(|t| < eps) × (S(2δ) \ B_R)`; `V_gg` is nonzero there by
/// the certificate, and the value is reported with its oracle confirmation.
pub fn find_violation_pair(
    p: &HPolytope,
    lambda_set: &TimeFrequencySet,
    cert: &NonZeroCertificate,
) -> Result<SearchOutcome> {
    if !cert.matches(p) {
        return Err(GonbError::CertificateMismatch);
    }
    let window = StftWindow::new(p)?;
    let pts = &lambda_set.points;
    let mut stats = SearchStats::default();
    for (i, v) in pts.iter().enumerate() {
        for (j, w) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            stats.pairs_examined += 1;
            let diff = v.minus(w);
            let tf = cert.frame.to_frame_time(&diff.t);
            let lf = cert.frame.to_frame_freq(&diff.lambda);
            if tf.iter().map(|x| x * x).sum::<f64>().sqrt() >= cert.eps {
                continue;
            }
            stats.time_close += 1;
            let perp = lf[1..].iter().map(|x| x * x).sum::<f64>().sqrt();
            if perp >= 2.0 * cert.delta {
                continue;
            }
            stats.in_cylinder += 1;
            if !cert.region_contains(&tf, &lf) {
                continue;
            }
            let value = window.eval(&diff.t, &diff.lambda);
            let (oracle, confirmed) = confirm(&window, &diff.t, &diff.lambda, value);
            return Ok(SearchOutcome::Found(ViolationReport {
                pair: (v.clone(), w.clone()),
                value,
                abs_value: value.norm(),
                oracle_value: oracle,
                confirmed,
            }));
        }
    }
    Ok(SearchOutcome::NotFound(stats))
}
