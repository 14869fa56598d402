//! `gonb scan`: sample `χ̂`, `V_gg` or `G_t` over a box, a cone or a cylinder.
//!
//! Without `--cert`, coordinates are those of the input polytope. With a
//! certificate, the window is mapped into the certificate's frame and every
//! `t` and `λ` (including the CSV columns) is in frame coordinates.

use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};
use rayon::prelude::*;

use gonb_core::fourier::{ft_indicator, ConeRegion, ConeScan, DivergenceSplit, ScanGrid, ScanRow};
use gonb_core::gabor::NonZeroCertificate;
use gonb_core::sampling::{ball_samples, cross_section_samples, grid, lin_space, log_space};
use gonb_core::Complex64;

use crate::failure::CliError;
use crate::{emit_json, emit_text, parse_vector, read_json, read_polytope, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Field {
    /// `χ̂_{Ω_t}(λ)`.
    #[value(name = "ft")]
    Ft,
    /// `V_gg(t, λ)`; the `abs` column is `|V_gg|`.
    #[value(name = "stft_abs")]
    StftAbs,
    /// `G_t(λ)`; the `abs` column is `|G_t|`.
    #[value(name = "gt_abs")]
    GtAbs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Region {
    Box,
    Cone,
    Cylinder,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum)]
    field: Field,
    #[arg(long, value_enum, default_value = "box")]
    region: Region,
    /// Samples per scanned axis (box), or along `λ_1` (cone, cylinder).
    #[arg(long, default_value_t = 61)]
    grid: usize,
    /// Fixed translation; cone and cylinder default to the certificate's
    /// translation ball.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda_min: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda_max: Option<String>,
    /// Scan translations over a box as well (box region only).
    #[arg(long, allow_hyphen_values = true)]
    t_min: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    t_max: Option<String>,
    /// Certificate supplying the frame (and cone/cylinder defaults).
    #[arg(long)]
    cert: Option<PathBuf>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    r0: Option<f64>,
    #[arg(long)]
    r1: Option<f64>,
    /// Transverse samples per axis (cone, cylinder).
    #[arg(long)]
    cross: Option<usize>,
    /// Cylinder radius; defaults to `2 delta`.
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn empty(msg: &str) -> anyhow::Error {
    CliError::Parse(format!("empty scan region: {msg}")).into()
}

pub fn run(args: ScanArgs) -> Result<()> {
    let p = read_polytope(&args.input)?;
    let d = p.dim();
    let cert: Option<NonZeroCertificate> = match &args.cert {
        Some(path) => Some(read_json(path)?),
        None => None,
    };
    if matches!(args.region, Region::Cone | Region::Cylinder) || args.field == Field::GtAbs {
        if cert.is_none() {
            return Err(CliError::RegionFrameMissing.into());
        }
    }
    let window = match &cert {
        Some(c) => c.frame.map_polytope(&p)?,
        None => p.clone(),
    };
    let fixed_t = args
        .t
        .as_deref()
        .map(|s| parse_vector(s, d, "--t"))
        .transpose()?;

    let mut comments = vec![
        format!("gonb scan {}", env!("CARGO_PKG_VERSION")),
        format!("input={}", args.input.display()),
        format!("field={:?}", args.field),
        format!("region={:?}", args.region),
        format!("grid={}", args.grid),
    ];
    if let Some(c) = &cert {
        comments.push(format!("frame={}", serde_json::to_string(&c.frame)?));
        comments.push("coordinates=frame".into());
    } else {
        comments.push("coordinates=original".into());
    }

    // Translations and frequencies; rows are all (t, λ) pairs, t outermost.
    let (times, freqs, shape) = match args.region {
        Region::Box => {
            if args.grid == 0 {
                return Err(empty("--grid 0"));
            }
            let lo = parse_vector(args.lambda_min.as_deref().unwrap_or(&default_box(d, -3.0)), d, "--lambda-min")?;
            let hi = parse_vector(args.lambda_max.as_deref().unwrap_or(&default_box(d, 3.0)), d, "--lambda-max")?;
            check_box(&lo, &hi, "lambda")?;
            let freqs = grid(&axes(&lo, &hi, args.grid));
            let times = match (&args.t_min, &args.t_max) {
                (Some(a), Some(b)) => {
                    let tl = parse_vector(a, d, "--t-min")?;
                    let th = parse_vector(b, d, "--t-max")?;
                    check_box(&tl, &th, "t")?;
                    grid(&axes(&tl, &th, args.grid))
                }
                (None, None) => vec![fixed_t.clone().unwrap_or_else(|| vec![0.0; d])],
                _ => return Err(CliError::Parse("--t-min and --t-max go together".into()).into()),
            };
            comments.push(format!("lambda_min={lo:?} lambda_max={hi:?}"));
            let mut shape = Vec::new();
            if times.len() > 1 {
                shape.extend(vec![args.grid; d]);
            }
            shape.extend(vec![args.grid; d]);
            (times, freqs, shape)
        }
        Region::Cone => {
            let c = cert.as_ref().expect("checked above");
            let base = &c.provenance.cone_scan;
            let scan = ConeScan {
                r0: args.r0.unwrap_or(base.r0),
                r1: args.r1.unwrap_or(base.r1),
                n_radial: args.grid,
                n_cross: args.cross.unwrap_or(base.n_cross),
                eps: base.eps,
                n_t: base.n_t,
            };
            let omega = args.omega.unwrap_or(c.omega);
            if args.grid == 0 || scan.n_cross == 0 {
                return Err(empty("zero samples"));
            }
            if !(scan.r0 > 0.0 && scan.r1 >= scan.r0 && omega > 0.0) {
                return Err(empty("need 0 < r0 <= r1 and omega > 0"));
            }
            let times = fixed_t.clone().map_or_else(|| scan.times(d), |t| vec![t]);
            comments.push(format!("cone={}", serde_json::to_string(&scan)?));
            comments.push(format!("omega={omega}"));
            let region = ConeRegion {
                omega,
                frame: c.frame.clone(),
            };
            let freqs: Vec<Vec<f64>> = scan.frequencies(d, omega);
            debug_assert!(freqs.iter().all(|l| region.contains(l)));
            let mut shape = vec![times.len(), scan.n_radial];
            shape.extend(vec![scan.n_cross; d - 1]);
            (times, freqs, shape)
        }
        Region::Cylinder => {
            let c = cert.as_ref().expect("checked above");
            let r0 = args.r0.unwrap_or(c.r);
            let r1 = args.r1.unwrap_or(c.provenance.verification.lambda_max);
            let radius = args.radius.unwrap_or(2.0 * c.delta);
            let n_cross = args.cross.unwrap_or(c.provenance.params.verify_cross);
            if args.grid == 0 || n_cross == 0 {
                return Err(empty("zero samples"));
            }
            if !(r0 > 0.0 && r1 >= r0 && radius > 0.0) {
                return Err(empty("need 0 < r0 <= r1 and radius > 0"));
            }
            let cross = cross_section_samples(d - 1, radius, n_cross);
            if cross.is_empty() {
                return Err(empty("no cross-section samples"));
            }
            let mut freqs = Vec::new();
            for l1 in log_space(r0, r1, args.grid) {
                for s in [1.0, -1.0] {
                    for w in &cross {
                        let mut l = vec![s * l1];
                        l.extend_from_slice(w);
                        freqs.push(l);
                    }
                }
            }
            let times = fixed_t
                .clone()
                .map_or_else(|| ball_samples(d, c.eps * (1.0 - 1e-9), c.provenance.params.n_t), |t| vec![t]);
            comments.push(format!("cylinder radius={radius} r0={r0} r1={r1} cross={n_cross}"));
            let shape = vec![times.len(), 2 * args.grid, cross.len()];
            (times, freqs, shape)
        }
    };

    let volume = window.volume();
    if args.field == Field::StftAbs && !(volume > 0.0) {
        return Err(gonb_core::GonbError::ZeroVolumeWindow.into());
    }
    let field = args.field;
    let blocks: Vec<Result<Vec<ScanRow>>> = times
        .par_iter()
        .map(|t| {
            let wt = window.translate_intersection(t);
            let split = match field {
                Field::GtAbs => Some(DivergenceSplit::new(wt.clone())?),
                _ => None,
            };
            Ok(freqs
                .iter()
                .map(|l| {
                    let value = match field {
                        Field::Ft => ft_indicator(&wt, l),
                        Field::StftAbs => ft_indicator(&wt, l) / volume,
                        Field::GtAbs => split.as_ref().map_or(Complex64::new(0.0, 0.0), |s| s.residual(l)),
                    };
                    ScanRow {
                        t: t.clone(),
                        lambda: l.clone(),
                        value,
                    }
                })
                .collect())
        })
        .collect();
    let mut rows = Vec::with_capacity(times.len() * freqs.len());
    for b in blocks {
        rows.extend(b?);
    }
    let scan = ScanGrid {
        dim: d,
        shape,
        comments,
        rows,
    };
    match args.format {
        Format::Csv => emit_text(&scan.to_csv(), args.out.as_deref()),
        Format::Json => emit_json(&scan, args.out.as_deref()),
    }
}

fn default_box(d: usize, v: f64) -> String {
    vec![v.to_string(); d].join(",")
}

fn axes(lo: &[f64], hi: &[f64], n: usize) -> Vec<Vec<f64>> {
    lo.iter().zip(hi).map(|(a, b)| lin_space(*a, *b, n)).collect()
}

fn check_box(lo: &[f64], hi: &[f64], what: &str) -> Result<()> {
    if lo.iter().zip(hi).any(|(a, b)| a > b) {
        return Err(empty(&format!("{what} min exceeds max")));
    }
    Ok(())
}
