use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GonbError, Result};
use crate::linalg::{dist, solve};
use crate::sampling::{grid, lin_space};

/// A time-frequency shift `(t, λ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeFrequencyPoint {
    pub t: Vec<f64>,
    pub lambda: Vec<f64>,
}

impl TimeFrequencyPoint {
    pub fn new(t: Vec<f64>, lambda: Vec<f64>) -> Self {
        Self { t, lambda }
    }

    /// Splits a `2d`-vector `[t..., λ...]`.
    pub fn from_flat(v: &[f64]) -> Self {
        let d = v.len() / 2;
        Self::new(v[..d].to_vec(), v[d..].to_vec())
    }

    pub fn flat(&self) -> Vec<f64> {
        self.t.iter().chain(&self.lambda).copied().collect()
    }

    pub fn dim(&self) -> usize {
        self.t.len()
    }

    /// `self - other`.
    pub fn minus(&self, other: &Self) -> Self {
        Self::new(
            self.t.iter().zip(&other.t).map(|(a, b)| a - b).collect(),
            self.lambda.iter().zip(&other.lambda).map(|(a, b)| a - b).collect(),
        )
    }

    pub(crate) fn lex_cmp(&self, other: &Self) -> Ordering {
        lex(&self.flat(), &other.flat())
    }
}

pub(crate) fn lex(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// An axis-aligned box in `R^{2d}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TfBox {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl TfBox {
    pub fn contains(&self, p: &[f64], tol: f64) -> bool {
        p.iter()
            .zip(self.min.iter().zip(&self.max))
            .all(|(x, (lo, hi))| *x >= lo - tol && *x <= hi + tol)
    }
}

/// A finite candidate `Λ ⊂ R^{2d}`: distinct points in lexicographic order.
#[derive(Clone, Debug, Serialize)]
pub struct TimeFrequencySet {
    pub points: Vec<TimeFrequencyPoint>,
    /// Bounding box of the points.
    pub window_box: TfBox,
}

impl TimeFrequencySet {
    pub fn new(mut points: Vec<TimeFrequencyPoint>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(GonbError::InvalidInput("empty time-frequency set".into()));
        };
        let d = first.dim();
        for p in &points {
            if p.t.len() != d || p.lambda.len() != d {
                return Err(GonbError::DimensionMismatch {
                    expected: d,
                    got: p.t.len().max(p.lambda.len()),
                });
            }
            if !p.flat().iter().all(|x| x.is_finite()) {
                return Err(GonbError::InvalidInput("non-finite coordinate".into()));
            }
        }
        points.sort_by(TimeFrequencyPoint::lex_cmp);
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(GonbError::DuplicatePoint);
        }
        let flat: Vec<Vec<f64>> = points.iter().map(TimeFrequencyPoint::flat).collect();
        let window_box = TfBox {
            min: (0..2 * d)
                .map(|i| flat.iter().map(|p| p[i]).fold(f64::INFINITY, f64::min))
                .collect(),
            max: (0..2 * d)
                .map(|i| flat.iter().map(|p| p[i]).fold(f64::NEG_INFINITY, f64::max))
                .collect(),
        };
        Ok(Self { points, window_box })
    }

    pub fn from_flat(points: &[Vec<f64>]) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() % 2 != 0 || p.is_empty()) {
            return Err(GonbError::InvalidInput(format!(
                "time-frequency point needs 2d coordinates, got {}",
                p.len()
            )));
        }
        Self::new(points.iter().map(|p| TimeFrequencyPoint::from_flat(p)).collect())
    }

    /// Points `shift + Σ n_i basis[i]` (integer `n`) inside `bx`. The rows of
    /// `basis` are the lattice generators.
    pub fn lattice(basis: &[Vec<f64>], shift: &[f64], bx: &TfBox) -> Result<Self> {
        let m = shift.len();
        if m == 0 || m % 2 != 0 || basis.len() != m || basis.iter().any(|b| b.len() != m) {
            return Err(GonbError::InvalidInput(
                "lattice basis must be 2d generators of length 2d".into(),
            ));
        }
        if bx.min.len() != m || bx.max.len() != m {
            return Err(GonbError::DimensionMismatch {
                expected: m,
                got: bx.min.len(),
            });
        }
        // p - shift = G^T n, so n = G^{-T} (p - shift); bound n over the box
        // corners.
        let cols: Vec<Vec<f64>> = (0..m).map(|j| basis.iter().map(|b| b[j]).collect()).collect();
        let rows: Vec<&[f64]> = cols.iter().map(|c| c.as_slice()).collect();
        let mut lo = vec![f64::INFINITY; m];
        let mut hi = vec![f64::NEG_INFINITY; m];
        for mask in 0..(1usize << m) {
            let corner: Vec<f64> = (0..m)
                .map(|i| if mask >> i & 1 == 1 { bx.max[i] } else { bx.min[i] } - shift[i])
                .collect();
            let n = solve(&rows, &corner)
                .ok_or_else(|| GonbError::InvalidInput("singular lattice basis".into()))?;
            for i in 0..m {
                lo[i] = lo[i].min(n[i]);
                hi[i] = hi[i].max(n[i]);
            }
        }
        let axes: Vec<Vec<f64>> = lo
            .iter()
            .zip(&hi)
            .map(|(a, b)| {
                let (a, b) = ((a - 1e-9).floor() as i64, (b + 1e-9).ceil() as i64);
                (a..=b).map(|k| k as f64).collect()
            })
            .collect();
        let points: Vec<Vec<f64>> = grid(&axes)
            .into_iter()
            .map(|n| {
                let mut p = shift.to_vec();
                for (ni, g) in n.iter().zip(basis) {
                    for (pj, gj) in p.iter_mut().zip(g) {
                        *pj += ni * gj;
                    }
                }
                p
            })
            .filter(|p| bx.contains(p, 1e-9))
            .collect();
        Self::from_flat(&points)
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Minimum pairwise distance in `R^{2d}`.
    pub fn separation(&self) -> Result<f64> {
        if self.points.len() < 2 {
            return Err(GonbError::TooFewPoints);
        }
        let flat: Vec<Vec<f64>> = self.points.iter().map(TimeFrequencyPoint::flat).collect();
        Ok(min_pairwise_distance(&flat))
    }

    /// Largest distance from a grid point of `bx` (`grid_n` per axis) to the
    /// nearest point of the set.
    pub fn covering_radius(&self, bx: &TfBox, grid_n: usize) -> f64 {
        let flat: Vec<Vec<f64>> = self.points.iter().map(TimeFrequencyPoint::flat).collect();
        let axes: Vec<Vec<f64>> = bx
            .min
            .iter()
            .zip(&bx.max)
            .map(|(a, b)| lin_space(*a, *b, grid_n))
            .collect();
        grid(&axes)
            .par_iter()
            .map(|g| flat.iter().map(|p| dist(p, g)).fold(f64::INFINITY, f64::min))
            .reduce(|| 0.0, f64::max)
    }
}

/// Minimum pairwise distance of a raw point list (0 if a point repeats).
pub fn min_pairwise_distance(points: &[Vec<f64>]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            best = best.min(dist(&points[i], &points[j]));
        }
    }
    best
}

/// `Λ` file contents: an explicit point list or a lattice generator.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TfSetJson {
    Points { points: Vec<Vec<f64>> },
    Lattice { lattice: LatticeSpec },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeSpec {
    /// Rows are generators.
    pub basis: Vec<Vec<f64>>,
    pub shift: Vec<f64>,
    #[serde(rename = "box")]
    pub bx: TfBox,
}

impl TfSetJson {
    pub fn to_set(&self) -> Result<TimeFrequencySet> {
        match self {
            Self::Points { points } => TimeFrequencySet::from_flat(points),
            Self::Lattice { lattice } => {
                TimeFrequencySet::lattice(&lattice.basis, &lattice.shift, &lattice.bx)
            }
        }
    }
}

pub fn parse_tf_set(json: &str) -> Result<TimeFrequencySet> {
    let spec: TfSetJson =
        serde_json::from_str(json).map_err(|e| GonbError::InvalidInput(e.to_string()))?;
    spec.to_set()
}

/// `aZ^{2d}`-style diagonal generators, convenient for tests and the CLI.
pub fn diagonal_basis(scales: &[f64]) -> Vec<Vec<f64>> {
    (0..scales.len())
        .map(|i| {
            let mut row = vec![0.0; scales.len()];
            row[i] = scales[i];
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube_box(d2: usize, r: f64) -> TfBox {
        TfBox {
            min: vec![-r; d2],
            max: vec![r; d2],
        }
    }

    #[test]
    fn integer_lattice_counts_and_separation() {
        let l = TimeFrequencySet::lattice(&diagonal_basis(&[1.0; 4]), &[0.0; 4], &cube_box(4, 1.0)).unwrap();
        assert_eq!(l.len(), 81);
        assert!((l.separation().unwrap() - 1.0).abs() < 1e-15);
        let s = TimeFrequencySet::lattice(&diagonal_basis(&[0.5; 4]), &[0.0; 4], &cube_box(4, 1.0)).unwrap();
        assert!((s.separation().unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn sheared_lattice_stays_in_box() {
        let basis = vec![
            vec![1.0, 0.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
            vec![0.5, 0.0, 1.0, 0.0],
            vec![0.0, 0.5, 0.0, 1.0],
        ];
        let bx = cube_box(4, 2.0);
        let l = TimeFrequencySet::lattice(&basis, &[0.0; 4], &bx).unwrap();
        assert!(l.points.iter().all(|p| bx.contains(&p.flat(), 1e-12)));
        // The t-shift by half a unit appears for odd frequency index.
        assert!(l.points.iter().any(|p| (p.t[0] - 0.5).abs() < 1e-15));
    }

    #[test]
    fn duplicates_rejected() {
        let pts = vec![vec![0.0, 1.0], vec![0.0, 1.0]];
        assert_eq!(TimeFrequencySet::from_flat(&pts).unwrap_err(), GonbError::DuplicatePoint);
        assert_eq!(min_pairwise_distance(&pts), 0.0);
    }

    #[test]
    fn single_point_has_no_separation() {
        let l = TimeFrequencySet::from_flat(&[vec![0.0, 0.0]]).unwrap();
        assert_eq!(l.separation().unwrap_err(), GonbError::TooFewPoints);
    }

    #[test]
    fn covering_radius_of_integer_lattice() {
        // The centre of a unit cell of Z^4 is at distance 1 from the lattice.
        let l = TimeFrequencySet::lattice(&diagonal_basis(&[1.0; 4]), &[0.0; 4], &cube_box(4, 2.0)).unwrap();
        let inner = cube_box(4, 1.0);
        let r = l.covering_radius(&inner, 5);
        assert!((r - 1.0).abs() < 1e-12, "{r}");
    }

    #[test]
    fn covering_radius_of_single_point() {
        let l = TimeFrequencySet::from_flat(&[vec![0.0, 0.0]]).unwrap();
        let r = l.covering_radius(&cube_box(2, 1.0), 3);
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn json_forms() {
        let a = parse_tf_set(r#"{"points": [[0, 0, 1, 1], [1, 0, 0, 0]]}"#).unwrap();
        assert_eq!(a.len(), 2);
        let b = parse_tf_set(
            r#"{"lattice": {"basis": [[1,0],[0,1]], "shift": [0,0], "box": {"min": [-1,-1], "max": [1,1]}}}"#,
        )
        .unwrap();
        assert_eq!(b.len(), 9);
    }
}
