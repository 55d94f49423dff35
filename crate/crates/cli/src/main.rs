//! `zh`: command-line interface over the spherical-harmonics library.
//! canonical decomposition, Gegenbauer data, zonal expansions, plane-wave
//! coefficients, Bessel values, sphere Fourier transforms, Hankel transforms,
//! and the identity verification suites.
//!
//! Exit codes: 0 on success (and all-pass for `verify`), 1 when any verify
//! case fails, 2 on usage or input errors. Output is byte-deterministic for
//! identical invocations (including `--seed`); timing is reported on stderr
//! only.

mod output;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use zonal_harmonics::bessel::{bessel_j, spherical_j, BesselOrder};
use zonal_harmonics::error::Error as ZhError;
use zonal_harmonics::gegenbauer::{gegenbauer, gegenbauer_eval_f64};
use zonal_harmonics::harmonic::{decompose, Alpha};
use zonal_harmonics::polyalg::HomogeneousPolynomial;
use zonal_harmonics::rational::{format_rational, parse_rational};
use zonal_harmonics::transforms::{
    hankel, sphere_ft_components, sphere_ft_laplacian, sphere_ft_oracle, RadialProfile,
};
use zonal_harmonics::zonal::{expand, plane_wave_coefficients, ZonalProfile};

use output::{write_output, OutputFormat};

#[derive(Parser)]
#[command(
    name = "zh",
    version,
    about = "Spherical-harmonic decompositions, zonal expansions, and sphere Fourier/Hankel transforms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FtMethodArg {
    Components,
    Laplacian,
    Oracle,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical decomposition of a homogeneous polynomial into harmonic
    /// components.
    Decompose {
        /// Ambient dimension (>= 3).
        #[arg(long)]
        d: usize,
        /// Polynomial in text form, e.g. "3/2*x1^2*x2 - x3^3".
        poly: String,
    },
    /// Exact Gegenbauer coefficients, or a float value at a point.
    Gegenbauer {
        /// Index as a rational, e.g. 1/2.
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        degree: usize,
        /// Evaluate at t instead of printing coefficients.
        #[arg(long, allow_hyphen_values = true)]
        at: Option<f64>,
    },
    /// Spherical Fourier coefficients of a zonal profile.
    #[command(name = "zonal-expand")]
    ZonalExpand {
        #[arg(long)]
        alpha: String,
        /// Builtin `const:<c>`, `power:<l>`, `exp-irt:<r>`, `genfunc:<r>`,
        /// or `taylor:<path>` (one `re im` pair per line, read as the
        /// complete expansion of a polynomial profile).
        #[arg(long)]
        profile: String,
        /// Number of coefficients (M).
        #[arg(long)]
        terms: usize,
    },
    /// Plane-wave expansion coefficients at radius r.
    Planewave {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        r: f64,
        #[arg(long)]
        terms: usize,
    },
    /// Bessel function of the first kind (or spherical with --spherical).
    Bessel {
        /// Order as a rational, e.g. -1/2.
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long)]
        at: f64,
        #[arg(long)]
        spherical: bool,
    },
    /// Fourier transform of a polynomial density on the unit sphere.
    #[command(name = "ft-sphere")]
    FtSphere {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        poly: String,
        /// Evaluation point, comma-separated: 2,0,0
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, value_enum, default_value_t = FtMethodArg::Components)]
        method: FtMethodArg,
        /// Truncation tolerance for the oracle method.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Hankel transform of a radial profile.
    Hankel {
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        /// `gaussian`, `gaussian-half`, or `bump:<radius>`.
        #[arg(long)]
        profile: String,
        #[arg(long)]
        at: f64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Run identity verification suites.
    Verify {
        /// Suite name (see --list) or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// List available suites and the identity each one checks.
        #[arg(long)]
        list: bool,
        /// Override the number of randomized cases where applicable.
        #[arg(long)]
        cases: Option<usize>,
        /// Override the maximum degree for grid suites.
        #[arg(long)]
        l_max: Option<usize>,
    },
}

fn parse_alpha(s: &str) -> Result<Alpha, ZhError> {
    Alpha::new(parse_rational(s)?)
}

fn parse_point(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad coordinate {p:?}: {e}"))
        })
        .collect()
}

fn parse_profile_spec(spec: &str, alpha: &Alpha) -> Result<ZonalProfile, String> {
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    match kind {
        "const" => {
            let c: f64 = arg.parse().map_err(|e| format!("const:<c>: {e}"))?;
            Ok(ZonalProfile::constant(Complex64::new(c, 0.0)))
        }
        "power" => {
            let l: usize = arg.parse().map_err(|e| format!("power:<l>: {e}"))?;
            Ok(ZonalProfile::power(l))
        }
        "exp-irt" => {
            let r: f64 = arg.parse().map_err(|e| format!("exp-irt:<r>: {e}"))?;
            Ok(ZonalProfile::exp_irt(r, 256))
        }
        "genfunc" => {
            let r: f64 = arg.parse().map_err(|e| format!("genfunc:<r>: {e}"))?;
            ZonalProfile::generating_kernel(r, alpha, 512).map_err(|e| e.to_string())
        }
        "taylor" => {
            let text = std::fs::read_to_string(arg)
                .map_err(|e| format!("cannot read taylor file {arg:?}: {e}"))?;
            let mut taylor = Vec::new();
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let mut parts = line.split_whitespace();
                let re: f64 = parts
                    .next()
                    .ok_or_else(|| format!("line {}: empty", i + 1))?
                    .parse()
                    .map_err(|e| format!("line {}: {e}", i + 1))?;
                let im: f64 = parts
                    .next()
                    .unwrap_or("0")
                    .parse()
                    .map_err(|e| format!("line {}: {e}", i + 1))?;
                taylor.push(Complex64::new(re, im));
            }
            Ok(ZonalProfile::polynomial(taylor))
        }
        other => Err(format!(
            "unknown profile {other:?}; expected const:<c>, power:<l>, exp-irt:<r>, genfunc:<r>, or taylor:<path>"
        )),
    }
}

fn parse_radial_profile(spec: &str) -> Result<RadialProfile, String> {
    match spec {
        "gaussian" => Ok(RadialProfile::gaussian()),
        "gaussian-half" => Ok(RadialProfile::gaussian_half()),
        other => {
            if let Some(arg) = other.strip_prefix("bump:") {
                let radius: f64 = arg.parse().map_err(|e| format!("bump:<radius>: {e}"))?;
                RadialProfile::bump(radius).map_err(|e| e.to_string())
            } else {
                Err(format!(
                    "unknown profile {other:?}; expected gaussian, gaussian-half, or bump:<radius>"
                ))
            }
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Decompose { d, poly } => {
            let p = HomogeneousPolynomial::parse(d, &poly).map_err(|e| e.to_string())?;
            let dec = decompose(&p).map_err(|e| e.to_string())?;
            #[derive(serde::Serialize)]
            struct Component<'a> {
                k: usize,
                h: &'a HomogeneousPolynomial,
            }
            #[derive(serde::Serialize)]
            struct Decomposition<'a> {
                components: Vec<Component<'a>>,
            }
            let value = Decomposition {
                components: dec
                    .components()
                    .iter()
                    .map(|(k, h)| Component { k: *k, h })
                    .collect(),
            };
            let pretty = dec
                .components()
                .iter()
                .map(|(k, h)| format!("k = {k}: {h}"))
                .collect::<Vec<_>>()
                .join("\n");
            write_output(&cli.format, cli.out.as_deref(), &value, &pretty, None)?;
            Ok(0)
        }
        Command::Gegenbauer { alpha, degree, at } => {
            let alpha = parse_alpha(&alpha).map_err(|e| e.to_string())?;
            match at {
                Some(t) => {
                    let v = gegenbauer_eval_f64(&alpha, degree, t);
                    let value = json!({
                        "alpha": format_rational(alpha.value()),
                        "degree": degree,
                        "at": t,
                        "value": v,
                    });
                    write_output(
                        &cli.format,
                        cli.out.as_deref(),
                        &value,
                        &format!("{v:.17e}"),
                        None,
                    )?;
                }
                None => {
                    let poly = gegenbauer(&alpha, degree);
                    let coeffs: Vec<String> =
                        poly.coefficients().iter().map(format_rational).collect();
                    let value = json!({
                        "alpha": format_rational(alpha.value()),
                        "degree": degree,
                        "coefficients": coeffs,
                    });
                    let pretty = coeffs
                        .iter()
                        .enumerate()
                        .map(|(i, c)| format!("t^{i}: {c}"))
                        .collect::<Vec<_>>()
                        .join("\n");
                    write_output(&cli.format, cli.out.as_deref(), &value, &pretty, None)?;
                }
            }
            Ok(0)
        }
        Command::ZonalExpand {
            alpha,
            profile,
            terms,
        } => {
            let alpha = parse_alpha(&alpha).map_err(|e| e.to_string())?;
            let profile = parse_profile_spec(&profile, &alpha)?;
            let expansion = expand(&profile, &alpha, terms).map_err(|e| e.to_string())?;
            let rows: Vec<_> = expansion
                .coefficients()
                .iter()
                .zip(expansion.weights())
                .enumerate()
                .map(|(m, (f, w))| json!({ "m": m, "re": f.re, "im": f.im, "weight": w }))
                .collect();
            let value = serde_json::Value::Array(rows);
            let csv_rows: Vec<Vec<String>> = expansion
                .coefficients()
                .iter()
                .zip(expansion.weights())
                .enumerate()
                .map(|(m, (f, w))| {
                    vec![
                        m.to_string(),
                        format!("{:.16e}", f.re),
                        format!("{:.16e}", f.im),
                        format!("{:.16e}", w),
                    ]
                })
                .collect();
            let pretty = pretty_table(&["m", "re", "im", "weight"], &csv_rows);
            write_output(
                &cli.format,
                cli.out.as_deref(),
                &value,
                &pretty,
                Some((&["m", "re", "im", "weight"], &csv_rows)),
            )?;
            Ok(0)
        }
        Command::Planewave { alpha, r, terms } => {
            let alpha = parse_alpha(&alpha).map_err(|e| e.to_string())?;
            let coeffs = plane_wave_coefficients(&alpha, r, terms).map_err(|e| e.to_string())?;
            let rows: Vec<_> = coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| json!({ "m": m, "re": c.re, "im": c.im }))
                .collect();
            let value = serde_json::Value::Array(rows);
            let csv_rows: Vec<Vec<String>> = coeffs
                .iter()
                .enumerate()
                .map(|(m, c)| {
                    vec![
                        m.to_string(),
                        format!("{:.16e}", c.re),
                        format!("{:.16e}", c.im),
                    ]
                })
                .collect();
            let pretty = pretty_table(&["m", "re", "im"], &csv_rows);
            write_output(
                &cli.format,
                cli.out.as_deref(),
                &value,
                &pretty,
                Some((&["m", "re", "im"], &csv_rows)),
            )?;
            Ok(0)
        }
        Command::Bessel { nu, at, spherical } => {
            let order = BesselOrder::new(parse_rational(&nu).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let v = if spherical {
                spherical_j(&order, at)
            } else {
                bessel_j(&order, at)
            }
            .map_err(|e| e.to_string())?;
            let value = json!({
                "nu": format_rational(order.value()),
                "t": at,
                "spherical": spherical,
                "value": v,
            });
            write_output(
                &cli.format,
                cli.out.as_deref(),
                &value,
                &format!("{v:.17e}"),
                None,
            )?;
            Ok(0)
        }
        Command::FtSphere {
            d,
            poly,
            at,
            method,
            tol,
        } => {
            let p = HomogeneousPolynomial::parse(d, &poly).map_err(|e| e.to_string())?;
            let x = parse_point(&at)?;
            let result = match method {
                FtMethodArg::Components => sphere_ft_components(&p, &x),
                FtMethodArg::Laplacian => sphere_ft_laplacian(&p, &x),
                FtMethodArg::Oracle => sphere_ft_oracle(&p, &x, tol),
            }
            .map_err(|e| e.to_string())?;
            let method_name = match method {
                FtMethodArg::Components => "components",
                FtMethodArg::Laplacian => "laplacian",
                FtMethodArg::Oracle => "oracle",
            };
            let value = json!({
                "value_re": result.value.re,
                "value_im": result.value.im,
                "method": method_name,
            });
            let pretty = format!(
                "{:.17e} + {:.17e} i [{method_name}]",
                result.value.re, result.value.im
            );
            write_output(&cli.format, cli.out.as_deref(), &value, &pretty, None)?;
            Ok(0)
        }
        Command::Hankel {
            nu,
            profile,
            at,
            tol,
        } => {
            let order = BesselOrder::new(parse_rational(&nu).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let prof = parse_radial_profile(&profile)?;
            let result = hankel(&prof, &order, at, tol).map_err(|e| e.to_string())?;
            let value = json!({
                "nu": format_rational(result.order.value()),
                "t": result.at,
                "value": result.value,
                "error_estimate": result.quadrature_error_estimate,
            });
            write_output(
                &cli.format,
                cli.out.as_deref(),
                &value,
                &format!(
                    "{:.17e} (err <= {:.3e})",
                    result.value, result.quadrature_error_estimate
                ),
                None,
            )?;
            Ok(0)
        }
        Command::Verify {
            suite,
            seed,
            list,
            cases,
            l_max,
        } => {
            if list {
                let listing = suites::suite_listing();
                let value = serde_json::to_value(listing).unwrap();
                let pretty = listing
                    .iter()
                    .map(|s| format!("{:<12} {}", s.name, s.checks))
                    .collect::<Vec<_>>()
                    .join("\n");
                write_output(&cli.format, cli.out.as_deref(), &value, &pretty, None)?;
                return Ok(0);
            }
            let opts = suites::SuiteOptions { seed, cases, l_max };
            let all_names: Vec<&'static str> =
                suites::suite_listing().iter().map(|s| s.name).collect();
            let names: Vec<&'static str> = if suite == "all" {
                all_names
            } else {
                match all_names.iter().find(|n| **n == suite) {
                    Some(n) => vec![n],
                    None => {
                        return Err(format!(
                            "unknown suite {suite:?}; available: {}, all",
                            all_names.join(", ")
                        ))
                    }
                }
            };
            let started = std::time::Instant::now();
            let reports = suites::run_suites(&names, &opts);
            let wall = started.elapsed().as_secs_f64();
            let all_pass = reports.iter().all(|r| r.summary.passed == r.summary.total);
            output::write_reports(&cli.format, cli.out.as_deref(), &reports)?;
            for report in &reports {
                eprintln!(
                    "suite {}: {}/{} passed, max residual {:.3e}",
                    report.suite,
                    report.summary.passed,
                    report.summary.total,
                    report.summary.max_residual
                );
            }
            eprintln!("wall time: {wall:.2}s");
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}

fn pretty_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join("\t");
    for row in rows {
        out.push('\n');
        out.push_str(&row.join("\t"));
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
