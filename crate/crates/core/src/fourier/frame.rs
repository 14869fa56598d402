//! The affine normalization that puts a parallel facet pair on the planes
//! `{x_1 = 0}` and `{x_1 = 1}`, and the cone `C(omega)` around its axis.

use serde::{Deserialize, Serialize};

use crate::error::{GonbError, Result};
use crate::linalg::{dot, orthonormal_complement, scale, sub, TAU_GEOM};
use crate::polytope::{Facet, HPolytope};

/// `y = S B^T (x - origin)` with `S = diag(1/scale, 1, ..., 1)`.
///
/// `basis[0]` is the distinguished direction `e_1`, the inward normal of the
/// facet sent to `{y_1 = 0}`. Only the axial coordinate is stretched, so the
/// transverse coordinates of a facet on a plane `{y_1 = c}` are isometric to
/// the facet itself.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisFrame {
    pub origin: Vec<f64>,
    pub basis: Vec<Vec<f64>>,
    pub scale: f64,
}

impl AxisFrame {
    /// The standard frame of R^d.
    pub fn identity(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
            .collect();
        Self {
            origin: vec![0.0; dim],
            basis,
            scale: 1.0,
        }
    }

    /// Frame sending facet `a` to `{y_1 = 0}` and its parallel `b` to
    /// `{y_1 = 1}`. Without a parallel facet the polytope's width in the
    /// direction `-n_a` is used as the scale.
    pub fn from_facet_pair(p: &HPolytope, a: &Facet, b: Option<&Facet>) -> Result<Self> {
        let e1: Vec<f64> = a.normal().iter().map(|x| -x).collect();
        let origin = a.foot();
        let width = match b {
            Some(b) => {
                if dot(a.normal(), b.normal()) > -1.0 + TAU_GEOM {
                    return Err(GonbError::FrameMismatch("facets are not parallel".into()));
                }
                a.supporting.offset + b.supporting.offset
            }
            None => p
                .extreme_points()
                .iter()
                .map(|v| dot(&e1, &sub(v, &origin)))
                .fold(0.0, f64::max),
        };
        if width <= TAU_GEOM {
            return Err(GonbError::FrameMismatch("zero width along the axis".into()));
        }
        let mut basis = vec![e1.clone()];
        basis.extend(orthonormal_complement(&e1));
        Ok(Self {
            origin,
            basis,
            scale: width,
        })
    }

    pub fn dim(&self) -> usize {
        self.origin.len()
    }

    pub fn axis(&self) -> &[f64] {
        &self.basis[0]
    }

    fn stretch(&self, i: usize) -> f64 {
        if i == 0 {
            1.0 / self.scale
        } else {
            1.0
        }
    }

    /// Frame coordinates of a point.
    pub fn to_frame_point(&self, x: &[f64]) -> Vec<f64> {
        self.to_frame_time(&sub(x, &self.origin))
    }

    /// Frame coordinates of a translation (a difference of points).
    pub fn to_frame_time(&self, t: &[f64]) -> Vec<f64> {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, u)| dot(u, t) * self.stretch(i))
            .collect()
    }

    /// Frame coordinates of a frequency; pairs with [`Self::to_frame_time`]
    /// so that `<lambda, t>` is preserved.
    pub fn to_frame_freq(&self, lambda: &[f64]) -> Vec<f64> {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, u)| dot(u, lambda) / self.stretch(i))
            .collect()
    }

    pub fn from_frame_point(&self, y: &[f64]) -> Vec<f64> {
        let t = self.from_frame_time(y);
        t.iter().zip(&self.origin).map(|(a, b)| a + b).collect()
    }

    pub fn from_frame_time(&self, y: &[f64]) -> Vec<f64> {
        self.combine(y, |i| 1.0 / self.stretch(i))
    }

    pub fn from_frame_freq(&self, y: &[f64]) -> Vec<f64> {
        self.combine(y, |i| self.stretch(i))
    }

    fn combine(&self, y: &[f64], f: impl Fn(usize) -> f64) -> Vec<f64> {
        let mut out = vec![0.0; self.dim()];
        for (i, u) in self.basis.iter().enumerate() {
            let c = y[i] * f(i);
            for (o, ui) in out.iter_mut().zip(u) {
                *o += c * ui;
            }
        }
        out
    }

    /// The image of `p` in frame coordinates.
    pub fn map_polytope(&self, p: &HPolytope) -> Result<HPolytope> {
        if p.dim() != self.dim() {
            return Err(GonbError::DimensionMismatch {
                expected: self.dim(),
                got: p.dim(),
            });
        }
        // <a, x> <= b  becomes  <S^{-1} B^T a, y> <= b - <a, origin>.
        let raw: Vec<(Vec<f64>, f64)> = p
            .halfspaces()
            .iter()
            .map(|h| {
                let a = self.to_frame_freq(&h.normal);
                (a, h.offset - dot(&h.normal, &self.origin))
            })
            .collect();
        HPolytope::normalize(&raw, p.dim())
    }

    /// Whether `p` (in frame coordinates) has the facet pair on `{y_1 = 0}`
    /// with normal `-e_1` and, if present, `{y_1 = 1}` with normal `e_1`.
    pub fn normalizes(&self, p_frame: &HPolytope) -> bool {
        let d = self.dim();
        let mut e1 = vec![0.0; d];
        e1[0] = 1.0;
        let minus = scale(&e1, -1.0);
        let a_ok = p_frame
            .facet_with_normal(&minus)
            .is_some_and(|f| f.supporting.offset.abs() <= 1e-7);
        let b_ok = p_frame
            .facet_with_normal(&e1)
            .is_none_or(|f| (f.supporting.offset - 1.0).abs() <= 1e-7);
        a_ok && b_ok
    }
}

/// `C(omega) = {|lambda_j| <= omega |lambda_1|, 2 <= j <= d}` in frame
/// coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeRegion {
    pub omega: f64,
    pub frame: AxisFrame,
}

impl ConeRegion {
    /// Membership of a frequency given in frame coordinates.
    pub fn contains(&self, lambda_frame: &[f64]) -> bool {
        let l1 = lambda_frame[0].abs();
        lambda_frame[1..].iter().all(|x| x.abs() <= self.omega * l1)
    }

    /// Membership of a frequency given in original coordinates.
    pub fn contains_original(&self, lambda: &[f64]) -> bool {
        self.contains(&self.frame.to_frame_freq(lambda))
    }

    /// Smallest radius past which the cylinder `S(r)` lies inside the cone:
    /// `r sqrt(1 + omega^-2)`.
    pub fn entry_radius(&self, cylinder_radius: f64) -> f64 {
        cylinder_radius * (1.0 + self.omega.powi(-2)).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::fixtures::pentagon;
    use crate::polytope::parallel_facet;

    fn pentagon_frame() -> (HPolytope, AxisFrame) {
        let p = pentagon();
        let a = p.facet_with_normal(&[0.0, -1.0]).unwrap().clone();
        let b = parallel_facet(&p, &a).unwrap().cloned();
        let f = AxisFrame::from_facet_pair(&p, &a, b.as_ref()).unwrap();
        (p, f)
    }

    #[test]
    fn pair_lands_on_unit_planes() {
        let (p, f) = pentagon_frame();
        assert!((f.scale - 2.0).abs() < 1e-14);
        let w = f.map_polytope(&p).unwrap();
        assert!(f.normalizes(&w));
        let a = w.facet_with_normal(&[-1.0, 0.0]).unwrap();
        let b = w.facet_with_normal(&[1.0, 0.0]).unwrap();
        // Transverse lengths are preserved.
        assert!((a.volume_dm1 - 2.0).abs() < 1e-12);
        assert!((b.volume_dm1 - 1.0).abs() < 1e-12);
        // Volume scales with 1 / scale.
        assert!((w.volume() - 3.5 / 2.0).abs() < 1e-12);
    }

    #[test]
    fn maps_round_trip_and_preserve_pairing() {
        let (_, f) = pentagon_frame();
        let x = [0.3, -1.7];
        let y = f.to_frame_point(&x);
        let back = f.from_frame_point(&y);
        assert!((back[0] - x[0]).abs() < 1e-14 && (back[1] - x[1]).abs() < 1e-14);
        let t = [0.4, 0.9];
        let l = [-2.0, 5.5];
        let lhs = dot(&f.to_frame_time(&t), &f.to_frame_freq(&l));
        assert!((lhs - dot(&t, &l)).abs() < 1e-13);
        let l2 = f.from_frame_freq(&f.to_frame_freq(&l));
        assert!((l2[0] - l[0]).abs() < 1e-13 && (l2[1] - l[1]).abs() < 1e-13);
    }

    #[test]
    fn cone_membership_and_entry() {
        let cone = ConeRegion {
            omega: 0.2,
            frame: AxisFrame::identity(2),
        };
        assert!(cone.contains(&[10.0, 2.0]));
        assert!(cone.contains(&[-10.0, -2.0]));
        assert!(!cone.contains(&[10.0, 2.1]));
        let r = cone.entry_radius(0.5);
        // A cylinder point at that radius sits exactly on the cone boundary.
        let l1 = (r * r - 0.25).sqrt();
        assert!((0.5 - 0.2 * l1).abs() < 1e-12);
    }
}
