use serde::{Deserialize, Serialize};

use crate::error::{GonbError, Result};
use crate::linalg::{dot, norm, TAU_GEOM};

/// Closed half-space `{x : <normal, x> <= offset}` with a unit normal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl HalfSpace {
    /// Normalizes `(a, b)` so that `|a| = 1`. Normals already of unit length
    /// (to a few ulps) are kept bit-for-bit, so normalizing is idempotent.
    pub fn new(normal: Vec<f64>, offset: f64) -> Result<Self> {
        let n = norm(&normal);
        if !(n.is_finite() && offset.is_finite()) {
            return Err(GonbError::InvalidInput("non-finite half-space".into()));
        }
        if n <= TAU_GEOM {
            return Err(GonbError::InvalidInput("zero half-space normal".into()));
        }
        if (n - 1.0).abs() <= 4.0 * f64::EPSILON {
            return Ok(Self { normal, offset });
        }
        Ok(Self {
            normal: normal.iter().map(|x| x / n).collect(),
            offset: offset / n,
        })
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// Signed slack `<normal, x> - offset`; non-positive inside.
    pub fn excess(&self, x: &[f64]) -> f64 {
        dot(&self.normal, x) - self.offset
    }

    pub(crate) fn tol(&self) -> f64 {
        TAU_GEOM * (1.0 + self.offset.abs())
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.excess(x) <= self.tol()
    }

    /// `x` lies on the bounding hyperplane.
    pub fn is_tight(&self, x: &[f64]) -> bool {
        self.excess(x).abs() <= self.tol()
    }

    /// Same outward normal within the angular tolerance.
    pub fn same_direction(&self, normal: &[f64]) -> bool {
        normals_match(&self.normal, normal)
    }

    pub fn flipped(&self) -> Self {
        Self {
            normal: self.normal.iter().map(|x| -x).collect(),
            offset: -self.offset,
        }
    }
}

/// Unit normals agree within the angular tolerance.
pub fn normals_match(a: &[f64], b: &[f64]) -> bool {
    // For unit vectors |a - b| equals the chord of the angle between them.
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
        <= TAU_GEOM
}
