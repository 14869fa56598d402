use super::halfspace::HalfSpace;
use crate::linalg::{affine_dim, centroid, dist, simplex_volume};

/// A k-simplex given by its `k + 1` points, with its k-volume.
#[derive(Clone, Debug)]
pub struct Simplex {
    pub points: Vec<Vec<f64>>,
    pub volume: f64,
}

impl Simplex {
    pub fn new(points: Vec<Vec<f64>>) -> Self {
        let refs: Vec<&[f64]> = points.iter().map(|p| p.as_slice()).collect();
        let volume = simplex_volume(&refs);
        Self { points, volume }
    }
}

/// Faces of dimension `k - 1` of the `k`-face spanned by `face`.
///
/// A subface is the set of face vertices tight on some half-space, provided
/// it has the right affine dimension. Results are deduplicated and sorted.
pub(crate) fn subfaces(
    verts: &[Vec<f64>],
    face: &[usize],
    k: usize,
    hs: &[HalfSpace],
) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for h in hs {
        let tight: Vec<usize> = face
            .iter()
            .copied()
            .filter(|&i| h.is_tight(&verts[i]))
            .collect();
        if tight.len() == face.len() || tight.len() < k {
            continue;
        }
        let refs: Vec<&[f64]> = tight.iter().map(|&i| verts[i].as_slice()).collect();
        if affine_dim(&refs) == k - 1 && !out.contains(&tight) {
            out.push(tight);
        }
    }
    out.sort();
    out
}

/// Appends a triangulation of the `k`-face spanned by `face` to `out`.
///
/// Each simplex is a list of `k + 1` points. Faces of dimension two and up are
/// coned from their vertex centroid over their triangulated subfaces.
pub(crate) fn triangulate_face(
    verts: &[Vec<f64>],
    face: &[usize],
    k: usize,
    hs: &[HalfSpace],
    out: &mut Vec<Vec<Vec<f64>>>,
) {
    match k {
        0 => out.push(vec![verts[face[0]].clone()]),
        1 => {
            // An edge has exactly two extreme points; guard against
            // tolerance-level extras by taking the farthest pair.
            let (mut a, mut b, mut best) = (face[0], face[0], -1.0);
            for (x, &i) in face.iter().enumerate() {
                for &j in &face[x + 1..] {
                    let dd = dist(&verts[i], &verts[j]);
                    if dd > best {
                        (a, b, best) = (i, j, dd);
                    }
                }
            }
            out.push(vec![verts[a].clone(), verts[b].clone()]);
        }
        _ => {
            let pts: Vec<Vec<f64>> = face.iter().map(|&i| verts[i].clone()).collect();
            let apex = centroid(&pts);
            for sub in subfaces(verts, face, k, hs) {
                let mut base = Vec::new();
                triangulate_face(verts, &sub, k - 1, hs, &mut base);
                for mut s in base {
                    s.push(apex.clone());
                    out.push(s);
                }
            }
        }
    }
}
