//! Identity verification suites.
//!
//! Each suite runs a deterministic case list derived from the seed, on a
//! worker pool capped by `ZH_THREADS`. Case results are sorted by id before
//! reports are assembled, so identical invocations produce byte-identical
//! output regardless of scheduling.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand_core::{Rng, SeedableRng};
use rand_pcg::Pcg64Mcg;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use zonal_harmonics::bessel::{
    finite_expansion_halfodd_residual, finite_expansion_integer_residual, multistep_coefficient,
    multistep_residual, multistep_residual_first_kind, BesselOrder,
};
use zonal_harmonics::gegenbauer::generating_function_check;
use zonal_harmonics::harmonic::{decompose, Alpha};
use zonal_harmonics::polyalg::{
    evaluate, laplacian, sphere_inner_product, HomogeneousPolynomial, Monomial,
};
use zonal_harmonics::rational::{rat, Rational};
use zonal_harmonics::transforms::{
    bochner_components, bochner_laplacian, hankel, hankel_periodicity_residual,
    sphere_ft_components, sphere_ft_laplacian, sphere_ft_oracle, RadialProfile,
};
use zonal_harmonics::zonal::{
    expand, plane_wave_coefficients, zonal_coefficient_quadrature, ZonalProfile,
};

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub case_id: String,
    pub params: serde_json::Value,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub max_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteInfo {
    pub name: &'static str,
    pub checks: &'static str,
}

pub fn suite_listing() -> &'static [SuiteInfo] {
    const LIST: &[SuiteInfo] = &[
        SuiteInfo {
            name: "theorem1",
            checks: "canonical decomposition: exact harmonicity, exact reconstruction, exact component orthogonality",
        },
        SuiteInfo {
            name: "theorem2",
            checks: "zonal expansion coefficients vs Gegenbauer-integral quadrature and the plane-wave closed form",
        },
        SuiteInfo {
            name: "theorem3",
            checks: "sphere Fourier transform: component and Laplacian-power formulas agree and match the series oracle",
        },
        SuiteInfo {
            name: "corollary3",
            checks: "multi-step Bessel recurrence in both normalizations, with the k=s coefficient exactly 1",
        },
        SuiteInfo {
            name: "corollary4",
            checks: "finite Bessel expansions at integer and half-odd orders",
        },
        SuiteInfo {
            name: "bochner",
            checks: "generalized Bochner identity: Gaussian eigenfunction closed form and agreement of the two displays",
        },
        SuiteInfo {
            name: "periodicity",
            checks: "Hankel transform periodicity relation and the Gaussian closed form",
        },
        SuiteInfo {
            name: "genfunc",
            checks: "Gegenbauer generating-function partial sums with geometric residual decay",
        },
    ];
    LIST
}

pub struct SuiteOptions {
    pub seed: u64,
    pub cases: Option<usize>,
    pub l_max: Option<usize>,
}

// ---- deterministic random inputs ----

fn rng(seed: u64) -> Pcg64Mcg {
    Pcg64Mcg::seed_from_u64(seed)
}

fn gen_below(r: &mut Pcg64Mcg, n: u64) -> u64 {
    r.next_u64() % n
}

fn gen_signed_unit(r: &mut Pcg64Mcg) -> f64 {
    (r.next_u64() >> 11) as f64 / (1u64 << 52) as f64 - 1.0
}

fn random_coefficient(r: &mut Pcg64Mcg) -> Rational {
    let num = loop {
        let v = gen_below(r, 19) as i64 - 9;
        if v != 0 {
            break v;
        }
    };
    rat(num, 1 + gen_below(r, 4) as i64)
}

fn random_poly(r: &mut Pcg64Mcg, d: usize, l: usize, max_terms: usize) -> HomogeneousPolynomial {
    loop {
        let n_terms = 1 + gen_below(r, max_terms as u64) as usize;
        let terms = (0..n_terms)
            .map(|_| {
                let mut e = vec![0u32; d];
                for _ in 0..l {
                    e[gen_below(r, d as u64) as usize] += 1;
                }
                (Monomial::new(e), random_coefficient(r))
            })
            .collect::<Vec<_>>();
        let p = HomogeneousPolynomial::from_terms(d, l, terms).unwrap();
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_dyadic_point(r: &mut Pcg64Mcg, d: usize) -> Vec<f64> {
    let k = (40.0 / (d as f64).sqrt()).floor() as u64;
    (0..d)
        .map(|_| (gen_below(r, 2 * k + 1) as i64 - k as i64) as f64 / 8.0)
        .collect()
}

fn random_point_in_ball(r: &mut Pcg64Mcg, d: usize, radius: f64) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| radius * gen_signed_unit(r)).collect();
        if v.iter().map(|x| x * x).sum::<f64>() <= radius * radius {
            return v;
        }
    }
}

// ---- jobs ----

#[derive(Debug, Clone)]
enum Job {
    DecompositionExact {
        d: usize,
        l: usize,
        seed: u64,
    },
    ZonalVsIntegral {
        d: usize,
        profile: ProfileKind,
        m: usize,
    },
    ZonalVsClosedForm {
        d: usize,
        r: f64,
        m: usize,
    },
    SphereFt {
        d: usize,
        l: usize,
        seed: u64,
        against_oracle: bool,
    },
    Multistep {
        alpha: (i64, i64),
        l: usize,
        s: usize,
        r: f64,
        first_kind: bool,
    },
    MultistepUnitCoefficient {
        alpha: (i64, i64),
        l: usize,
        s: usize,
    },
    FiniteExpansion {
        n: usize,
        t: f64,
        half_odd: bool,
    },
    BochnerClosedForm {
        d: usize,
        poly: String,
        seed: u64,
    },
    BochnerDisplayAgreement {
        seed: u64,
    },
    HankelClosedForm {
        nu: (i64, i64),
        t: f64,
    },
    Periodicity {
        alpha: (i64, i64),
        l: usize,
        t: f64,
    },
    GeneratingFunction {
        alpha: (i64, i64),
        t: f64,
        m: usize,
    },
}

#[derive(Debug, Clone)]
enum ProfileKind {
    ExpIrt(f64),
    Power(usize),
}

struct Case {
    id: String,
    params: serde_json::Value,
    tolerance: f64,
    job: Job,
}

fn alpha_of(pair: (i64, i64)) -> Alpha {
    Alpha::new(rat(pair.0, pair.1)).expect("valid alpha in suite grid")
}

fn phase_i_pow(l: usize) -> Complex64 {
    match l % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

fn run_job(job: &Job) -> Result<f64, String> {
    match job {
        Job::DecompositionExact { d, l, seed } => {
            let mut r = rng(*seed);
            let p = random_poly(&mut r, *d, *l, 4);
            let dec = decompose(&p).map_err(|e| e.to_string())?;
            for (_, h) in dec.components() {
                if !laplacian(h).is_zero() {
                    return Ok(1.0);
                }
            }
            if dec.reconstruct() != p {
                return Ok(1.0);
            }
            let comps = dec.components();
            for i in 0..comps.len() {
                for j in (i + 1)..comps.len() {
                    let ip = sphere_inner_product(&comps[i].1, &comps[j].1)
                        .map_err(|e| e.to_string())?;
                    if !ip.is_zero() {
                        return Ok(1.0);
                    }
                }
            }
            Ok(0.0)
        }
        Job::ZonalVsIntegral { d, profile, m } => {
            let alpha = Alpha::from_dimension(*d).map_err(|e| e.to_string())?;
            let (expansion, eval): (_, Box<dyn Fn(f64) -> Complex64 + Sync>) = match profile {
                ProfileKind::ExpIrt(r) => {
                    let rr = *r;
                    (
                        expand(&ZonalProfile::exp_irt(rr, 150), &alpha, *m)
                            .map_err(|e| e.to_string())?,
                        Box::new(move |t| Complex64::new(0.0, rr * t).exp()),
                    )
                }
                ProfileKind::Power(l) => {
                    let ll = *l as i32;
                    (
                        expand(&ZonalProfile::power(*l), &alpha, *m).map_err(|e| e.to_string())?,
                        Box::new(move |t| Complex64::new(t.powi(ll), 0.0)),
                    )
                }
            };
            let via_taylor = expansion.coefficients()[*m] * expansion.weights()[*m];
            let via_integral = zonal_coefficient_quadrature(&*eval, &alpha, *m, 1e-12)
                .map_err(|e| e.to_string())?;
            if via_integral.norm() < 1e-11 {
                Ok(via_taylor.norm())
            } else {
                Ok((via_taylor - via_integral).norm() / via_integral.norm())
            }
        }
        Job::ZonalVsClosedForm { d, r, m } => {
            let alpha = Alpha::from_dimension(*d).map_err(|e| e.to_string())?;
            let expansion =
                expand(&ZonalProfile::exp_irt(*r, 150), &alpha, *m).map_err(|e| e.to_string())?;
            let closed = plane_wave_coefficients(&alpha, *r, *m).map_err(|e| e.to_string())?;
            let via_taylor = expansion.coefficients()[*m] * expansion.weights()[*m];
            Ok((via_taylor - closed[*m]).norm() / closed[*m].norm().max(1e-300))
        }
        Job::SphereFt {
            d,
            l,
            seed,
            against_oracle,
        } => {
            let mut r = rng(*seed);
            let p = random_poly(&mut r, *d, *l, 4);
            let x = random_dyadic_point(&mut r, *d);
            let scale = p.l1_norm_f64().max(1.0);
            let a = sphere_ft_components(&p, &x).map_err(|e| e.to_string())?;
            let b = sphere_ft_laplacian(&p, &x).map_err(|e| e.to_string())?;
            if *against_oracle {
                let o = sphere_ft_oracle(&p, &x, 1e-12).map_err(|e| e.to_string())?;
                Ok((a.value - o.value).norm().max((b.value - o.value).norm()) / scale)
            } else {
                Ok((a.value - b.value).norm() / scale)
            }
        }
        Job::Multistep {
            alpha,
            l,
            s,
            r,
            first_kind,
        } => {
            let a = alpha_of(*alpha);
            if *first_kind {
                multistep_residual_first_kind(&a, *l, *s, *r).map_err(|e| e.to_string())
            } else {
                multistep_residual(&a, *l, *s, *r).map_err(|e| e.to_string())
            }
        }
        Job::MultistepUnitCoefficient { alpha, l, s } => {
            let a = alpha_of(*alpha);
            let c = multistep_coefficient(&a, *l, *s, *s).map_err(|e| e.to_string())?;
            Ok(if c.is_one() { 0.0 } else { 1.0 })
        }
        Job::FiniteExpansion { n, t, half_odd } => if *half_odd {
            finite_expansion_halfodd_residual(*n, *t)
        } else {
            finite_expansion_integer_residual(*n, *t)
        }
        .map_err(|e| e.to_string()),
        Job::BochnerClosedForm { d, poly, seed } => {
            let p = HomogeneousPolynomial::parse(*d, poly).map_err(|e| e.to_string())?;
            let f = RadialProfile::gaussian_half();
            let mut r = rng(*seed);
            let y = random_point_in_ball(&mut r, *d, 2.0);
            let r2: f64 = y.iter().map(|v| v * v).sum();
            let want = phase_i_pow(p.degree())
                * ((-r2 / 2.0).exp() * evaluate(&p, &y).map_err(|e| e.to_string())?);
            let via_h = bochner_components(&f, &p, &y, 1e-9).map_err(|e| e.to_string())?;
            let via_l = bochner_laplacian(&f, &p, &y, 1e-9).map_err(|e| e.to_string())?;
            Ok((via_h - want).norm().max((via_l - want).norm()))
        }
        Job::BochnerDisplayAgreement { seed } => {
            let mut r = rng(*seed);
            let p = random_poly(&mut r, 3, 4, 4);
            let y = random_point_in_ball(&mut r, 3, 2.0);
            let f = RadialProfile::gaussian_half();
            let a = bochner_components(&f, &p, &y, 1e-9).map_err(|e| e.to_string())?;
            let b = bochner_laplacian(&f, &p, &y, 1e-9).map_err(|e| e.to_string())?;
            Ok((a - b).norm() / p.l1_norm_f64().max(1.0))
        }
        Job::HankelClosedForm { nu, t } => {
            let order = BesselOrder::new(rat(nu.0, nu.1)).map_err(|e| e.to_string())?;
            let g = RadialProfile::gaussian();
            let got = hankel(&g, &order, *t, 1e-10).map_err(|e| e.to_string())?;
            let want = 2f64.powf(-(order.to_f64() + 1.0)) * (-t * t / 4.0).exp();
            Ok((got.value - want).abs())
        }
        Job::Periodicity { alpha, l, t } => {
            let a = alpha_of(*alpha);
            let g = RadialProfile::gaussian();
            hankel_periodicity_residual(&g, &a, *l, *t, 1e-8).map_err(|e| e.to_string())
        }
        Job::GeneratingFunction { alpha, t, m } => {
            let a = alpha_of(*alpha);
            Ok(generating_function_check(&a, 0.5, *t, *m))
        }
    }
}

// ---- case construction ----

fn push(cases: &mut Vec<Case>, suite: &str, params: serde_json::Value, tolerance: f64, job: Job) {
    let id = format!("{suite}-{:04}", cases.len());
    cases.push(Case {
        id,
        params,
        tolerance,
        job,
    });
}

fn build_cases(suite: &str, opts: &SuiteOptions) -> Vec<Case> {
    let mut cases = Vec::new();
    let mut seeder = rng(opts.seed);
    match suite {
        "theorem1" => {
            let n = opts.cases.unwrap_or(50);
            let l_max = opts.l_max.unwrap_or(8);
            for _ in 0..n {
                let d = 3 + gen_below(&mut seeder, 4) as usize; // 3..=6
                let l = gen_below(&mut seeder, l_max as u64 + 1) as usize;
                let seed = seeder.next_u64();
                push(
                    &mut cases,
                    suite,
                    json!({"d": d, "l": l, "seed": seed, "rng": "pcg64mcg", "check": "exact"}),
                    0.0,
                    Job::DecompositionExact { d, l, seed },
                );
            }
        }
        "theorem2" => {
            let l_max = opts.l_max.unwrap_or(6);
            for d in [3usize, 4] {
                for m in 0..=8usize {
                    push(
                        &mut cases,
                        suite,
                        json!({"d": d, "profile": "exp-irt:2", "m": m, "oracle": "gegenbauer-integral"}),
                        1e-8,
                        Job::ZonalVsIntegral {
                            d,
                            profile: ProfileKind::ExpIrt(2.0),
                            m,
                        },
                    );
                    push(
                        &mut cases,
                        suite,
                        json!({"d": d, "profile": "exp-irt:2", "m": m, "oracle": "plane-wave closed form"}),
                        1e-12,
                        Job::ZonalVsClosedForm { d, r: 2.0, m },
                    );
                }
                for l in 0..=l_max {
                    for m in 0..=l {
                        push(
                            &mut cases,
                            suite,
                            json!({"d": d, "profile": format!("power:{l}"), "m": m, "oracle": "gegenbauer-integral"}),
                            1e-8,
                            Job::ZonalVsIntegral {
                                d,
                                profile: ProfileKind::Power(l),
                                m,
                            },
                        );
                    }
                }
            }
        }
        "theorem3" => {
            let n = opts.cases.unwrap_or(40);
            let l_max = opts.l_max.unwrap_or(6);
            for _ in 0..n {
                let d = 3 + gen_below(&mut seeder, 3) as usize; // 3..=5
                let l = gen_below(&mut seeder, l_max as u64 + 1) as usize;
                let seed = seeder.next_u64();
                push(
                    &mut cases,
                    suite,
                    json!({"d": d, "l": l, "seed": seed, "rng": "pcg64mcg", "check": "formula equivalence"}),
                    1e-11,
                    Job::SphereFt {
                        d,
                        l,
                        seed,
                        against_oracle: false,
                    },
                );
                push(
                    &mut cases,
                    suite,
                    json!({"d": d, "l": l, "seed": seed, "rng": "pcg64mcg", "check": "vs series oracle"}),
                    1e-10,
                    Job::SphereFt {
                        d,
                        l,
                        seed,
                        against_oracle: true,
                    },
                );
            }
        }
        "corollary3" => {
            let l_max = opts.l_max.unwrap_or(10);
            for alpha in [(1i64, 2i64), (1, 1), (3, 2), (2, 1)] {
                for l in 2..=l_max {
                    for s in 1..=(l / 2) {
                        push(
                            &mut cases,
                            suite,
                            json!({"alpha": format!("{}/{}", alpha.0, alpha.1), "l": l, "s": s, "check": "k=s coefficient"}),
                            0.0,
                            Job::MultistepUnitCoefficient { alpha, l, s },
                        );
                        for r in [0.5f64, 1.0, 2.0, 5.0, 10.0] {
                            for first_kind in [false, true] {
                                let form = if first_kind {
                                    "first-kind"
                                } else {
                                    "spherical"
                                };
                                push(
                                    &mut cases,
                                    suite,
                                    json!({"alpha": format!("{}/{}", alpha.0, alpha.1), "l": l, "s": s, "r": r, "form": form}),
                                    1e-11,
                                    Job::Multistep {
                                        alpha,
                                        l,
                                        s,
                                        r,
                                        first_kind,
                                    },
                                );
                            }
                        }
                    }
                }
            }
        }
        "corollary4" => {
            for n in 0..=8usize {
                for t in [0.5f64, 1.0, 2.0, 5.0] {
                    push(
                        &mut cases,
                        suite,
                        json!({"n": n, "t": t, "order": "integer"}),
                        1e-12,
                        Job::FiniteExpansion {
                            n,
                            t,
                            half_odd: false,
                        },
                    );
                }
            }
            for n in 0..=6usize {
                for t in [0.5f64, 1.0, 2.0, 5.0, 10.0] {
                    push(
                        &mut cases,
                        suite,
                        json!({"n": n, "t": t, "order": "half-odd"}),
                        1e-11,
                        Job::FiniteExpansion {
                            n,
                            t,
                            half_odd: true,
                        },
                    );
                }
            }
        }
        "bochner" => {
            for d in [3usize, 4] {
                for poly in ["x1*x2", "x1*x2*x3"] {
                    for _ in 0..5 {
                        let seed = seeder.next_u64();
                        push(
                            &mut cases,
                            suite,
                            json!({"d": d, "poly": poly, "seed": seed, "rng": "pcg64mcg", "check": "gaussian closed form"}),
                            1e-8,
                            Job::BochnerClosedForm {
                                d,
                                poly: poly.to_string(),
                                seed,
                            },
                        );
                    }
                }
            }
            for _ in 0..3 {
                let seed = seeder.next_u64();
                push(
                    &mut cases,
                    suite,
                    json!({"d": 3, "l": 4, "seed": seed, "rng": "pcg64mcg", "check": "display agreement"}),
                    1e-8,
                    Job::BochnerDisplayAgreement { seed },
                );
            }
        }
        "periodicity" => {
            for nu in [(1i64, 2i64), (3, 2), (5, 2)] {
                for t in [0.0f64, 1.0, 2.0] {
                    push(
                        &mut cases,
                        suite,
                        json!({"nu": format!("{}/{}", nu.0, nu.1), "t": t, "check": "gaussian closed form"}),
                        1e-9,
                        Job::HankelClosedForm { nu, t },
                    );
                }
            }
            for alpha in [(1i64, 2i64), (1, 1), (3, 2)] {
                for l in 2..=opts.l_max.unwrap_or(6) {
                    for t in [0.5f64, 1.0, 2.0] {
                        push(
                            &mut cases,
                            suite,
                            json!({"alpha": format!("{}/{}", alpha.0, alpha.1), "l": l, "t": t, "check": "relation"}),
                            1e-7,
                            Job::Periodicity { alpha, l, t },
                        );
                    }
                }
            }
        }
        "genfunc" => {
            for alpha in [(1i64, 2i64), (1, 1)] {
                for t in [-0.9f64, 0.0, 0.9] {
                    for (m, tol) in [(20usize, 1e-3), (40, 1e-8), (60, 1e-12)] {
                        push(
                            &mut cases,
                            suite,
                            json!({"alpha": format!("{}/{}", alpha.0, alpha.1), "r": 0.5, "t": t, "terms": m}),
                            tol,
                            Job::GeneratingFunction { alpha, t, m },
                        );
                    }
                }
            }
        }
        other => panic!("unknown suite {other}"),
    }
    cases
}

fn run_suite(name: &str, opts: &SuiteOptions) -> Report {
    let cases = build_cases(name, opts);
    let mut results: Vec<CaseResult> = cases
        .into_par_iter()
        .map(|case| {
            let (residual, error) = match run_job(&case.job) {
                Ok(res) => (res, None),
                Err(message) => (f64::INFINITY, Some(message)),
            };
            let mut params = case.params;
            if let Some(message) = error {
                params["error"] = json!(message);
            }
            CaseResult {
                case_id: case.id,
                params,
                residual,
                tolerance: case.tolerance,
                pass: residual <= case.tolerance,
            }
        })
        .collect();
    results.sort_by(|a, b| a.case_id.cmp(&b.case_id));
    let total = results.len();
    let passed = results.iter().filter(|c| c.pass).count();
    let max_residual = results.iter().map(|c| c.residual).fold(0.0f64, f64::max);
    Report {
        suite: name.to_string(),
        cases: results,
        summary: Summary {
            total,
            passed,
            max_residual,
        },
    }
}

/// Runs the named suites on a pool sized by `ZH_THREADS` (all cores when
/// unset).
pub fn run_suites(names: &[&str], opts: &SuiteOptions) -> Vec<Report> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("ZH_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                builder = builder.num_threads(n);
            }
        }
    }
    let pool = builder.build().expect("worker pool");
    pool.install(|| names.iter().map(|name| run_suite(name, opts)).collect())
}
