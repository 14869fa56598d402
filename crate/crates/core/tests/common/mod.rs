#![allow(dead_code)]

use gonb_core::polytope::{from_vertices, HPolytope};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_60ab;

/// Seed for every randomized test; override with `GONB_SEED`.
pub fn seed() -> u64 {
    std::env::var("GONB_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed()),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed());
    r.set_stream(stream);
    r
}

/// Convex hull of random points in `[-1.5, 1.5]^d`, kept if reasonably fat.
pub fn polytope(dim: usize) -> impl Strategy<Value = HPolytope> {
    let n = dim + 1..dim + 8;
    prop::collection::vec(prop::collection::vec(-1.5f64..1.5, dim), n).prop_filter_map(
        "thin or degenerate hull",
        move |pts| {
            let p = from_vertices(&pts).ok()?;
            (p.volume() > 0.05 * 3f64.powi(dim as i32) / 10.0).then_some(p)
        },
    )
}

pub fn vector(dim: usize, r: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-r..r, dim)
}

/// Random fat polytope from an explicit rng, for the acceptance runner.
pub fn random_polytope(rng: &mut ChaCha8Rng, dim: usize) -> HPolytope {
    loop {
        let n = rng.random_range(dim + 1..dim + 8);
        let pts: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..dim).map(|_| rng.random_range(-1.5..1.5)).collect())
            .collect();
        if let Ok(p) = from_vertices(&pts) {
            if p.volume() > 0.05 * 3f64.powi(dim as i32) / 10.0 {
                return p;
            }
        }
    }
}

pub fn random_vector(rng: &mut ChaCha8Rng, dim: usize, r: f64) -> Vec<f64> {
    (0..dim).map(|_| rng.random_range(-r..r)).collect()
}

/// Direct central-symmetry test: the vertex set is invariant under the point
/// reflection through the vertex centroid.
pub fn reflection_symmetric(p: &HPolytope, tol: f64) -> bool {
    let v = p.extreme_points();
    let d = p.dim();
    let c: Vec<f64> = (0..d)
        .map(|i| v.iter().map(|x| x[i]).sum::<f64>() / v.len() as f64)
        .collect();
    v.iter().all(|x| {
        let r: Vec<f64> = x.iter().zip(&c).map(|(xi, ci)| 2.0 * ci - xi).collect();
        v.iter().any(|y| y.iter().zip(&r).all(|(a, b)| (a - b).abs() <= tol))
    })
}

/// Random polygon that is centrally symmetric, or one vertex nudged off
/// symmetry when `perturb` is set.
pub fn symmetric_polygon(rng: &mut ChaCha8Rng, perturb: bool) -> HPolytope {
    loop {
        let k = rng.random_range(2..5);
        let c = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        let mut pts = Vec::new();
        for _ in 0..k {
            let (x, y) = (rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            pts.push(vec![c[0] + x, c[1] + y]);
            pts.push(vec![c[0] - x, c[1] - y]);
        }
        let Ok(p) = from_vertices(&pts) else { continue };
        if p.volume() < 0.1 {
            continue;
        }
        if !perturb {
            return p;
        }
        // Push one vertex outward so it stays extreme.
        let mut v = p.extreme_points().to_vec();
        let i = rng.random_range(0..v.len());
        let s = rng.random_range(0.05..0.3);
        v[i] = vec![v[i][0] + s * (v[i][0] - c[0]), v[i][1] + s * (v[i][1] - c[1])];
        if let Ok(q) = from_vertices(&v) {
            return q;
        }
    }
}
