//! Rectangular value scans and their CSV form.

use std::fmt::Write as _;
use std::io::{self, Write};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

/// One sampled `(t, λ)` and the field value there.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub t: Vec<f64>,
    pub lambda: Vec<f64>,
    pub value: Complex64,
}

/// A scan over the product of per-axis sample lists.
#[derive(Clone, Debug, Serialize)]
pub struct ScanGrid {
    pub dim: usize,
    /// Number of samples along each scanned axis; rows are their product.
    pub shape: Vec<usize>,
    /// Lines written before the header, each prefixed with `#`.
    pub comments: Vec<String>,
    pub rows: Vec<ScanRow>,
}

impl ScanGrid {
    /// Evaluates `field` at every `(t, λ)` in order. Evaluation is parallel;
    /// the row order is that of `points`.
    pub fn evaluate<F>(dim: usize, shape: Vec<usize>, points: Vec<(Vec<f64>, Vec<f64>)>, field: F) -> Self
    where
        F: Fn(&[f64], &[f64]) -> Complex64 + Sync,
    {
        let rows = points
            .into_par_iter()
            .map(|(t, lambda)| {
                let value = field(&t, &lambda);
                ScanRow { t, lambda, value }
            })
            .collect();
        Self {
            dim,
            shape,
            comments: Vec::new(),
            rows,
        }
    }

    pub fn header(&self) -> String {
        let mut cols: Vec<String> = (1..=self.dim).map(|i| format!("t_{i}")).collect();
        cols.extend((1..=self.dim).map(|i| format!("lambda_{i}")));
        cols.extend(["re", "im", "abs"].map(String::from));
        cols.join(",")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        let _ = writeln!(out, "{}", self.header());
        for r in &self.rows {
            let fields: Vec<String> = r
                .t
                .iter()
                .chain(&r.lambda)
                .copied()
                .chain([r.value.re, r.value.im, r.value.norm()])
                .map(format_g17)
                .collect();
            let _ = writeln!(out, "{}", fields.join(","));
        }
        out
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        w.write_all(self.to_csv().as_bytes())
    }
}

/// `printf("%.17g", x)`: 17 significant digits, trailing zeros dropped,
/// exponent form outside `1e-4 <= |x| < 1e17`.
pub fn format_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let e = format!("{x:.16e}");
    let (mantissa, exp) = e.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("exponent");
    if (-4..17).contains(&exp) {
        let fixed = format!("{:.*}", (16 - exp) as usize, x);
        strip_zeros(&fixed).to_string()
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs())
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
