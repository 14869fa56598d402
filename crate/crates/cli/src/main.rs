use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gonb_core::fourier::{ft_indicator, ft_indicator_quadrature, ft_indicator_slices};
use gonb_core::gabor::{
    build_certificate, certificate_eps, check_orthogonality, find_violation_pair, parse_tf_set,
    stft_indicator, CertificateParams, NonZeroCertificate, TimeFrequencySet,
};
use gonb_core::polytope::{is_symmetric, parse_polytope, HPolytope, PolytopeJson};
use gonb_core::{Complex64, GonbError};

mod failure;
mod scan;

use failure::CliError;

#[derive(Parser)]
#[command(
    name = "gonb",
    version,
    about = "Polytope windows, their Fourier transforms, and Gabor orthogonality checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Oracle {
    None,
    Midpoint,
    Slices,
}

#[derive(Subcommand)]
enum Command {
    /// Parallel-facet symmetry report.
    Symmetry {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The polytope Omega ∩ (Omega + t).
    Intersect {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fourier transform of the indicator at one frequency.
    Ft {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Also evaluate an independent oracle.
        #[arg(long, value_enum, default_value = "none")]
        oracle: Oracle,
        /// Midpoint cells per axis.
        #[arg(long, default_value_t = 2000)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// V_gg(t, lambda) of the normalized indicator window.
    Stft {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and verify a non-vanishing certificate.
    Certificate {
        #[arg(long = "in")]
        input: PathBuf,
        /// Translation radius; found by bisection when omitted.
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, default_value_t = 0.2)]
        omega: f64,
        /// Bisection range and margin fraction for the automatic eps.
        #[arg(long, default_value_t = 1.0)]
        eps_max: f64,
        #[arg(long, default_value_t = 0.75)]
        eps_fraction: f64,
        /// JSON file overriding the scan parameters.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report every pair of Lambda whose difference leaves the zero set of V_gg.
    CheckOrth {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "lambda-set")]
        lambda_set: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol_zero: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search Lambda for a pair inside a certificate's non-vanishing region.
    FindViolation {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "lambda-set")]
        lambda_set: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a field over a region and write CSV.
    Scan(scan::ScanArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        return report(e);
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report(e),
    }
}

fn report(e: anyhow::Error) -> ExitCode {
    let (name, code) = failure::classify(&e);
    eprintln!("error: {name}: {e:#}");
    ExitCode::from(code)
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("GONB_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| CliError::Parse(format!("GONB_THREADS={v} is not a thread count")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    Ok(())
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Symmetry { input, tol, out } => {
            let p = read_polytope(&input)?;
            emit_json(&is_symmetric(&p, tol), out.as_deref())
        }
        Command::Intersect { input, t, out } => {
            let p = read_polytope(&input)?;
            let t = parse_vector(&t, p.dim(), "--t")?;
            let pt = p.translate_intersection(&t);
            #[derive(Serialize)]
            struct Out {
                shape: gonb_core::polytope::Shape,
                volume: f64,
                #[serde(flatten)]
                polytope: PolytopeJson,
            }
            emit_json(
                &Out {
                    shape: pt.shape(),
                    volume: pt.volume(),
                    polytope: PolytopeJson::from_polytope(&pt),
                },
                out.as_deref(),
            )
        }
        Command::Ft {
            input,
            lambda,
            oracle,
            n,
            out,
        } => {
            let p = read_polytope(&input)?;
            let l = parse_vector(&lambda, p.dim(), "--lambda")?;
            #[derive(Serialize)]
            struct Out {
                lambda: Vec<f64>,
                value: ValueJson,
                #[serde(skip_serializing_if = "Option::is_none")]
                oracle: Option<ValueJson>,
            }
            let oracle = match oracle {
                Oracle::None => None,
                Oracle::Midpoint => {
                    if n < 2 {
                        return Err(CliError::Parse("--n must be at least 2".into()).into());
                    }
                    Some(ft_indicator_quadrature(&p, &l, n).into())
                }
                Oracle::Slices => Some(ft_indicator_slices(&p, &l).into()),
            };
            emit_json(
                &Out {
                    value: ft_indicator(&p, &l).into(),
                    lambda: l,
                    oracle,
                },
                out.as_deref(),
            )
        }
        Command::Stft {
            input,
            t,
            lambda,
            out,
        } => {
            let p = read_polytope(&input)?;
            let t = parse_vector(&t, p.dim(), "--t")?;
            let l = parse_vector(&lambda, p.dim(), "--lambda")?;
            let v: ValueJson = stft_indicator(&p, &t, &l)?.into();
            emit_json(&v, out.as_deref())
        }
        Command::Certificate {
            input,
            eps,
            omega,
            eps_max,
            eps_fraction,
            params,
            out,
        } => {
            let p = read_polytope(&input)?;
            let params: CertificateParams = match params {
                Some(path) => read_json(&path)?,
                None => CertificateParams::default(),
            };
            let eps = match eps {
                Some(e) => e,
                None => certificate_eps(&p, params.n_t, eps_max, eps_fraction)
                    .context("choosing eps by bisection")?,
            };
            let cert = build_certificate(&p, eps, omega, &params).context("building certificate")?;
            emit_json(&cert, out.as_deref())
        }
        Command::CheckOrth {
            input,
            lambda_set,
            tol_zero,
            format,
            out,
        } => {
            let p = read_polytope(&input)?;
            let l = read_tf_set(&lambda_set)?;
            let violations = check_orthogonality(&p, &l, tol_zero)?;
            match format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Out<'a> {
                        points: usize,
                        pairs: usize,
                        tol_zero: f64,
                        orthogonal: bool,
                        violations: &'a [gonb_core::gabor::ViolationReport],
                    }
                    emit_json(
                        &Out {
                            points: l.len(),
                            pairs: l.len() * l.len().saturating_sub(1),
                            tol_zero,
                            orthogonal: violations.is_empty(),
                            violations: &violations,
                        },
                        out.as_deref(),
                    )
                }
                Format::Csv => {
                    let d = l.dim();
                    let mut cols: Vec<String> = Vec::new();
                    for side in ["v", "w"] {
                        cols.extend((1..=d).map(|i| format!("{side}_t_{i}")));
                        cols.extend((1..=d).map(|i| format!("{side}_lambda_{i}")));
                    }
                    cols.extend(["re", "im", "abs", "confirmed"].map(String::from));
                    let mut s = cols.join(",") + "\n";
                    for v in &violations {
                        let mut f: Vec<String> = v
                            .pair
                            .0
                            .flat()
                            .into_iter()
                            .chain(v.pair.1.flat())
                            .chain([v.value.re, v.value.im, v.abs_value])
                            .map(gonb_core::fourier::format_g17)
                            .collect();
                        f.push(v.confirmed.to_string());
                        s += &(f.join(",") + "\n");
                    }
                    emit_text(&s, out.as_deref())
                }
            }
        }
        Command::FindViolation {
            input,
            lambda_set,
            cert,
            out,
        } => {
            let p = read_polytope(&input)?;
            let l = read_tf_set(&lambda_set)?;
            let cert: NonZeroCertificate = read_json(&cert)?;
            emit_json(&find_violation_pair(&p, &l, &cert)?, out.as_deref())
        }
        Command::Scan(args) => scan::run(args),
    }
}

/// Complex value as `{re, im, abs}`.
#[derive(Serialize)]
pub struct ValueJson {
    re: f64,
    im: f64,
    abs: f64,
}

impl From<Complex64> for ValueJson {
    fn from(v: Complex64) -> Self {
        Self {
            re: v.re,
            im: v.im,
            abs: v.norm(),
        }
    }
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())).into())
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())).into())
}

pub fn read_polytope(path: &Path) -> Result<HPolytope> {
    let text = read_text(path)?;
    parse_polytope(&text).map_err(|e| match e {
        GonbError::InvalidInput(m) => CliError::Parse(format!("{}: {m}", path.display())).into(),
        other => anyhow::Error::new(other).context(format!("polytope {}", path.display())),
    })
}

fn read_tf_set(path: &Path) -> Result<TimeFrequencySet> {
    let text = read_text(path)?;
    parse_tf_set(&text).map_err(|e| match e {
        GonbError::InvalidInput(m) => CliError::Parse(format!("{}: {m}", path.display())).into(),
        other => anyhow::Error::new(other).context(format!("time-frequency set {}", path.display())),
    })
}

/// Comma-separated reals of the given length.
pub fn parse_vector(s: &str, dim: usize, flag: &str) -> Result<Vec<f64>> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| CliError::Parse(format!("{flag} expects comma-separated numbers, got {s:?}")))?;
    if v.len() != dim {
        return Err(CliError::Parse(format!("{flag} needs {dim} components, got {}", v.len())).into());
    }
    if !v.iter().all(|x| x.is_finite()) {
        return Err(CliError::Parse(format!("{flag} has a non-finite component")).into());
    }
    Ok(v)
}

pub fn emit_text(s: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, s).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(s.as_bytes())?;
            Ok(())
        }
    }
}

pub fn emit_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    emit_text(&s, out)
}
