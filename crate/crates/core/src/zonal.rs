//! Spherical Fourier expansions of zonal functions from Taylor data of the
//! profile function.
//!
//! A zonal function `f(xi) = phi((xi|eta))` whose profile has an absolutely
//! convergent Taylor expansion on `[-1, 1]` expands as
//!
//! ```text
//! f(xi) = Gamma(a+1) sum_m f_m dim H^m Z_eta^m(xi),
//! f_m   = sum_k phi^{(m+2k)}(0) / (2^{m+2k} k! Gamma(a+m+k+1)),
//! ```
//!
//! and the plane wave `e^{i(x|eta)}` is the instance `phi(t) = e^{irt}`,
//! whose coefficients collapse to spherical Bessel values.
//!
//! Profiles are supplied as truncated Taylor sequences plus an optional
//! evaluator; this module never differentiates user functions symbolically or
//! numerically. The independent route to the same coefficients (the
//! Gegenbauer-weighted profile integral, evaluated by adaptive quadrature)
//! is provided as [`zonal_coefficient_quadrature`] so the two can be checked
//! against each other.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::One;

use crate::dd::{two_prod, Dd};
use crate::error::{Error, Result};
use crate::gegenbauer::gegenbauer_sequence_f64;
use crate::harmonic::{harmonic_dim, Alpha};
use crate::polyalg::UnitVector;
use crate::quadrature::{integrate_adaptive, GaussLegendre};
use crate::rational::{
    factorial, gamma_half_integer, rat_int, rational_to_f64, rising, HalfIntegerGamma, Rational,
};

type Evaluator = Arc<dyn Fn(f64) -> Complex64 + Send + Sync>;

/// A profile function on `[-1, 1]` given by its Taylor coefficients
/// `phi^{(m)}(0) / m!` at 0, with an optional direct evaluator for residual
/// checks. `complete` marks profiles (polynomials) whose Taylor data is the
/// entire expansion rather than a truncation.
#[derive(Clone)]
pub struct ZonalProfile {
    taylor: Vec<Complex64>,
    evaluator: Option<Evaluator>,
    complete: bool,
}

impl fmt::Debug for ZonalProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ZonalProfile")
            .field("taylor_len", &self.taylor.len())
            .field("complete", &self.complete)
            .field("has_evaluator", &self.evaluator.is_some())
            .finish()
    }
}

impl ZonalProfile {
    /// A truncated Taylor sequence with no evaluator.
    pub fn from_taylor(taylor: Vec<Complex64>) -> Self {
        ZonalProfile {
            taylor,
            evaluator: None,
            complete: false,
        }
    }

    pub fn with_evaluator<F>(taylor: Vec<Complex64>, f: F) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        ZonalProfile {
            taylor,
            evaluator: Some(Arc::new(f)),
            complete: false,
        }
    }

    /// A polynomial profile `phi(t) = sum_n c_n t^n`; its Taylor data is
    /// complete, so expansions terminate exactly.
    pub fn polynomial(coefficients: Vec<Complex64>) -> Self {
        let coeffs = coefficients.clone();
        ZonalProfile {
            taylor: coefficients,
            evaluator: Some(Arc::new(move |t| {
                let mut acc = Complex64::new(0.0, 0.0);
                for c in coeffs.iter().rev() {
                    acc = acc * t + c;
                }
                acc
            })),
            complete: true,
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::polynomial(vec![c])
    }

    /// `phi(t) = t^l`.
    pub fn power(l: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); l + 1];
        coeffs[l] = Complex64::new(1.0, 0.0);
        Self::polynomial(coeffs)
    }

    /// `phi(t) = e^{irt}`, with `n_terms` Taylor coefficients `(ir)^n / n!`.
    /// The coefficients are carried in double-double precision and rounded
    /// once, so each stored value is correct to the last bit; the expansion
    /// sums are alternating and sensitive to coefficient error at large `r`.
    pub fn exp_irt(r: f64, n_terms: usize) -> Self {
        let mut taylor = Vec::with_capacity(n_terms);
        let (mut cur_re, mut cur_im) = (Dd::from_f64(1.0), Dd::from_f64(0.0));
        for n in 0..n_terms {
            taylor.push(Complex64::new(cur_re.value(), cur_im.value()));
            // multiply by i r / (n+1)
            let div = n as f64 + 1.0;
            let next_re = cur_im.mul_f64(-r).div_f64(div);
            let next_im = cur_re.mul_f64(r).div_f64(div);
            cur_re = next_re;
            cur_im = next_im;
        }
        ZonalProfile {
            taylor,
            evaluator: Some(Arc::new(move |t| (Complex64::new(0.0, r * t)).exp())),
            complete: false,
        }
    }

    /// `phi(t) = (1 - 2rt + r^2)^{-a}` for `|r| < 1`: the generating-function
    /// profile. Taylor coefficients are `(a)_n (2r)^n (1+r^2)^{-a-n} / n!`.
    pub fn generating_kernel(r: f64, alpha: &Alpha, n_terms: usize) -> Result<Self> {
        if r.abs() >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "generating kernel needs |r| < 1, got {r}"
            )));
        }
        let a = alpha.to_f64();
        let c = 1.0 + r * r;
        let mut taylor = Vec::with_capacity(n_terms);
        // cur = (a)_n (2r)^n c^{-a-n} / n!
        let mut cur = c.powf(-a);
        for n in 0..n_terms {
            taylor.push(Complex64::new(cur, 0.0));
            cur *= (a + n as f64) * 2.0 * r / ((n as f64 + 1.0) * c);
        }
        Ok(ZonalProfile {
            taylor,
            evaluator: Some(Arc::new(move |t| {
                Complex64::new((1.0 - 2.0 * r * t + r * r).powf(-a), 0.0)
            })),
            complete: false,
        })
    }

    pub fn taylor(&self) -> &[Complex64] {
        &self.taylor
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn eval(&self, t: f64) -> Option<Complex64> {
        self.evaluator.as_ref().map(|f| f(t))
    }
}

/// Coefficients `f_m` of the zonal expansion together with the
/// `Gamma(a+1) dim H^m` weights, plus an empirical bound on the truncated
/// tail (estimated from the geometric decay of the last computed terms).
#[derive(Debug, Clone)]
pub struct ZonalExpansion {
    alpha: Alpha,
    coefficients: Vec<Complex64>,
    weights: Vec<f64>,
    tail_estimate: f64,
}

impl ZonalExpansion {
    pub fn alpha(&self) -> &Alpha {
        &self.alpha
    }

    /// `f_m` for `m = 0..=M`.
    pub fn coefficients(&self) -> &[Complex64] {
        &self.coefficients
    }

    /// `Gamma(a+1) dim H^m` for `m = 0..=M`.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn max_degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn tail_estimate(&self) -> f64 {
        self.tail_estimate
    }

    /// The series term magnitudes `|Gamma(a+1) f_m dim H^m|`, which bound the
    /// contribution of each degree since `|Z| <= 1`.
    pub fn term_magnitudes(&self) -> Vec<f64> {
        self.coefficients
            .iter()
            .zip(&self.weights)
            .map(|(f, w)| f.norm() * w)
            .collect()
    }
}

/// Exact scalar `(m+2k)! / (2^{m+2k} k! Gamma(a+m+k+1))`, floated last.
fn taylor_to_coefficient_factor(alpha: &Alpha, m: usize, k: usize) -> Result<f64> {
    let gamma = gamma_half_integer(&(alpha.value() + rat_int((m + k) as i64 + 1)))?;
    let num = Rational::from_integer(factorial(m + 2 * k));
    let den = Rational::from_integer(factorial(k) * (num_bigint::BigInt::one() << (m + 2 * k)));
    let factor = HalfIntegerGamma {
        rat: num / den,
        sqrt_pi_pow: 0,
    }
    .div(&gamma);
    Ok(factor.to_f64())
}

/// Expands a zonal profile into spherical Fourier coefficients `f_m` for
/// `m = 0..=m_max`.
///
/// The inner sum over `k` stops once a term falls below `1e-16` of the
/// partial sum; if the Taylor data runs out first on an incomplete profile,
/// the expansion fails with the largest `M` that did converge.
pub fn expand(profile: &ZonalProfile, alpha: &Alpha, m_max: usize) -> Result<ZonalExpansion> {
    let mut coefficients = Vec::with_capacity(m_max + 1);
    let mut first_failure: Option<usize> = None;
    for m in 0..=m_max {
        let mut sum_re = Dd::from_f64(0.0);
        let mut sum_im = Dd::from_f64(0.0);
        let mut k = 0usize;
        let converged = loop {
            let idx = m + 2 * k;
            if idx >= profile.taylor.len() {
                break profile.complete;
            }
            let a = profile.taylor[idx];
            if a != Complex64::new(0.0, 0.0) {
                let factor = taylor_to_coefficient_factor(alpha, m, k)?;
                sum_re = sum_re.add(two_prod(a.re, factor));
                sum_im = sum_im.add(two_prod(a.im, factor));
                let term_norm = (a.re * factor).hypot(a.im * factor);
                let sum_norm = sum_re.hi.hypot(sum_im.hi);
                if sum_norm > 0.0 && term_norm <= 1e-16 * sum_norm {
                    break true;
                }
            }
            k += 1;
        };
        let sum = Complex64::new(sum_re.value(), sum_im.value());
        if !converged && first_failure.is_none() {
            first_failure = Some(m);
        }
        coefficients.push(sum);
    }
    if let Some(m) = first_failure {
        return Err(Error::InsufficientTaylorData {
            requested: m_max,
            achievable: m as i64 - 1,
        });
    }

    let gamma_a1 = gamma_half_integer(&(alpha.value() + rat_int(1)))?.to_f64();
    let weights: Vec<f64> = (0..=m_max)
        .map(|m| gamma_a1 * rational_to_f64(&Rational::from_integer(harmonic_dim(alpha, m))))
        .collect();

    let tail_estimate = estimate_tail(
        &coefficients
            .iter()
            .zip(&weights)
            .map(|(f, w)| f.norm() * w)
            .collect::<Vec<_>>(),
    );

    Ok(ZonalExpansion {
        alpha: alpha.clone(),
        coefficients,
        weights,
        tail_estimate,
    })
}

/// Geometric tail bound from the decay ratio of the last (up to) five
/// nonzero term magnitudes; infinite when no decay is observed.
fn estimate_tail(magnitudes: &[f64]) -> f64 {
    let last = match magnitudes.last() {
        Some(&v) => v,
        None => return 0.0,
    };
    if last == 0.0 {
        return 0.0;
    }
    let window: Vec<f64> = magnitudes
        .iter()
        .rev()
        .take(5)
        .copied()
        .filter(|v| *v > 0.0)
        .collect();
    if window.len() < 2 {
        return f64::INFINITY;
    }
    let mut ratio_max = 0.0f64;
    for pair in window.windows(2) {
        ratio_max = ratio_max.max(pair[0] / pair[1]); // reversed order: later/earlier
    }
    if ratio_max < 1.0 {
        last * ratio_max / (1.0 - ratio_max)
    } else {
        f64::INFINITY
    }
}

/// Evaluates the expansion at `xi` with pole `eta`:
/// `sum_m [Gamma(a+1) f_m dim H^m] C_m((xi|eta)) / C_m(1)`.
/// Returns the partial sum and the recorded tail bound.
pub fn evaluate_expansion(
    expansion: &ZonalExpansion,
    pole: &UnitVector,
    xi: &UnitVector,
) -> Result<(Complex64, f64)> {
    let d = expansion.alpha.dimension();
    if pole.dim() != d {
        return Err(Error::DimensionMismatch(pole.dim(), d));
    }
    let s = pole.dot(xi)?.clamp(-1.0, 1.0);
    let m_max = expansion.max_degree();
    let values = gegenbauer_sequence_f64(&expansion.alpha, m_max, s);
    let two_a = expansion.alpha.to_f64() * 2.0;
    let mut at_one = 1.0f64; // C_m(1) = (2a)_m / m!, updated multiplicatively
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, value) in values.iter().enumerate() {
        if m > 0 {
            at_one *= (two_a + m as f64 - 1.0) / m as f64;
        }
        acc += expansion.coefficients[m] * expansion.weights[m] * (value / at_one);
    }
    Ok((acc, expansion.tail_estimate))
}

/// Coefficients of the plane-wave expansion
///
/// ```text
/// e^{i(x|eta)} = sum_m [ i^m dim H^m Gamma(a+1)/Gamma(a+m+1) (r/2)^m j_{a+m}(r) ] Z_eta^m(xi)
/// ```
///
/// for `x = r xi`, returned for `m = 0..=m_max`. Equals `Gamma(a+1) f_m
/// dim H^m` for the profile `e^{irt}`, with the inner sum collapsed to a
/// spherical Bessel value.
pub fn plane_wave_coefficients(alpha: &Alpha, r: f64, m_max: usize) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max {
        // dim H^m / (a+1)_m, exact
        let scalar = Rational::from_integer(harmonic_dim(alpha, m))
            / rising(&(alpha.value() + rat_int(1)), m);
        let nu = crate::bessel::BesselOrder::new(alpha.value() + rat_int(m as i64))?;
        let j = crate::bessel::spherical_j(&nu, r)?;
        let magnitude = rational_to_f64(&scalar) * (r / 2.0).powi(m as i32) * j;
        let phase = match m % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        out.push(phase * magnitude);
    }
    Ok(out)
}

/// Independent quadrature route to the zonal coefficients: the weight of
/// `Z_eta^m` in the expansion of `f(xi) = phi((xi|eta))`, computed as
///
/// ```text
/// (a+m) Gamma(a) / (sqrt(pi) Gamma(a+1/2)) *
///     integral_{-1}^{1} phi(t) C_m^a(t) (1-t^2)^{a-1/2} dt
/// ```
///
/// via the substitution `t = cos(theta)`, which makes the integrand smooth
/// (`2a` is an integer). Equals `Gamma(a+1) f_m dim H^m` from [`expand`];
/// the match is verified in tests rather than assumed.
pub fn zonal_coefficient_quadrature(
    phi: &(dyn Fn(f64) -> Complex64 + Sync),
    alpha: &Alpha,
    m: usize,
    tol: f64,
) -> Result<Complex64> {
    let g_a = gamma_half_integer(alpha.value())?;
    let g_ah = gamma_half_integer(&(alpha.value() + crate::rational::rat(1, 2)))?;
    let prefactor = HalfIntegerGamma {
        rat: (alpha.value() + rat_int(m as i64)) * &g_a.rat / &g_ah.rat,
        sqrt_pi_pow: g_a.sqrt_pi_pow - g_ah.sqrt_pi_pow - 1,
    }
    .to_f64();

    let two_a = num_traits::ToPrimitive::to_i32((alpha.value() * rat_int(2)).numer())
        .ok_or_else(|| Error::Internal("alpha too large".into()))?;
    let integrand = |theta: f64, re: bool| -> f64 {
        let t = theta.cos();
        let c = gegenbauer_sequence_f64(alpha, m, t)[m];
        let w = theta.sin().powi(two_a);
        let v = phi(t) * c * w;
        if re {
            v.re
        } else {
            v.im
        }
    };
    let rule = GaussLegendre::new(16);
    let quad_tol = tol / prefactor.abs().max(1e-300) / 2.0;
    let re = integrate_adaptive(
        &|th| integrand(th, true),
        0.0,
        std::f64::consts::PI,
        quad_tol,
        &rule,
        Some(0.5),
        40,
    )?;
    let im = integrate_adaptive(
        &|th| integrand(th, false),
        0.0,
        std::f64::consts::PI,
        quad_tol,
        &rule,
        Some(0.5),
        40,
    )?;
    Ok(Complex64::new(re.value, im.value) * prefactor)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha_d(d: usize) -> Alpha {
        Alpha::from_dimension(d).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_profile() {
        for d in [3usize, 5] {
            let a = alpha_d(d);
            let profile = ZonalProfile::constant(c(2.5, 0.0));
            let exp = expand(&profile, &a, 6).unwrap();
            let gamma_a1 = gamma_half_integer(&(a.value() + rat_int(1)))
                .unwrap()
                .to_f64();
            assert!((exp.coefficients()[0].re - 2.5 / gamma_a1).abs() < 1e-15);
            for m in 1..=6 {
                assert_eq!(exp.coefficients()[m], c(0.0, 0.0));
            }
            // reconstruction at arbitrary xi
            let pole = UnitVector::axis(d, 0).unwrap();
            let mut v = vec![0.0; d];
            v[0] = 0.6;
            v[1] = 0.8;
            let xi = UnitVector::new(v).unwrap();
            let (val, _) = evaluate_expansion(&exp, &pole, &xi).unwrap();
            assert!((val - c(2.5, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn linear_profile() {
        // phi(t) = t: f_1 = 1/(2 Gamma(a+2)), all others zero
        for d in [3usize, 4] {
            let a = alpha_d(d);
            let exp = expand(&ZonalProfile::power(1), &a, 5).unwrap();
            let want = 1.0
                / (2.0
                    * gamma_half_integer(&(a.value() + rat_int(2)))
                        .unwrap()
                        .to_f64());
            assert!((exp.coefficients()[1].re - want).abs() < 1e-15);
            for m in [0usize, 2, 3, 4, 5] {
                assert_eq!(exp.coefficients()[m], c(0.0, 0.0));
            }
            // the reconstructed zonal function is (xi|eta)
            let pole = UnitVector::axis(d, 0).unwrap();
            let mut v = vec![0.0; d];
            v[0] = -0.28;
            v[1] = (1.0f64 - 0.28 * 0.28).sqrt();
            let xi = UnitVector::new(v).unwrap();
            let (val, _) = evaluate_expansion(&exp, &pole, &xi).unwrap();
            assert!((val.re - (-0.28)).abs() < 1e-13, "d={d}: {}", val.re);
        }
    }

    #[test]
    fn polynomial_profiles_terminate() {
        // phi = t^l: f_m = 0 for m > l and for m of the wrong parity
        let a = alpha_d(3);
        for l in 0..=6usize {
            let exp = expand(&ZonalProfile::power(l), &a, 10).unwrap();
            for m in 0..=10usize {
                let f = exp.coefficients()[m];
                if m > l || (l - m) % 2 == 1 {
                    assert_eq!(f, c(0.0, 0.0), "l={l} m={m}");
                } else {
                    assert!(f.norm() > 0.0, "l={l} m={m}");
                }
            }
        }
    }

    #[test]
    fn insufficient_taylor_data_reports_achievable() {
        // 3 Taylor terms of e^{it} cannot support M = 8
        let profile = ZonalProfile::from_taylor(ZonalProfile::exp_irt(1.0, 3).taylor().to_vec());
        let err = expand(&profile, &alpha_d(3), 8).unwrap_err();
        match err {
            Error::InsufficientTaylorData {
                requested,
                achievable,
            } => {
                assert_eq!(requested, 8);
                assert!(achievable < 8);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn plane_wave_matches_expand_termwise() {
        for d in [3usize, 4] {
            let a = alpha_d(d);
            for r in [0.5f64, 2.0, 5.0, 10.0] {
                let exp = expand(&ZonalProfile::exp_irt(r, 150), &a, 20).unwrap();
                let pw = plane_wave_coefficients(&a, r, 20).unwrap();
                for m in 0..=20usize {
                    let from_expand = exp.coefficients()[m] * exp.weights()[m];
                    let delta = (from_expand - pw[m]).norm();
                    let scale = pw[m].norm().max(1e-30);
                    assert!(
                        delta / scale < 1e-12,
                        "d={d} r={r} m={m}: {from_expand} vs {}",
                        pw[m]
                    );
                }
            }
        }
    }

    #[test]
    fn plane_wave_reference_values() {
        // m=0, d=3: coefficient is j_{1/2}(r) = sin r / r
        let a = alpha_d(3);
        for r in [1.0f64, 2.0, 5.0] {
            let pw = plane_wave_coefficients(&a, r, 0).unwrap();
            assert!((pw[0].re - r.sin() / r).abs() < 1e-14);
            assert_eq!(pw[0].im, 0.0);
        }
        // r=0: (1, 0, 0, ...)
        let pw = plane_wave_coefficients(&a, 0.0, 5).unwrap();
        assert_eq!(pw[0], c(1.0, 0.0));
        for m in 1..=5 {
            assert_eq!(pw[m].norm(), 0.0);
        }
    }

    #[test]
    fn plane_wave_evaluates_to_exponential() {
        let a = alpha_d(3);
        let r = 2.0;
        let exp_obj = expand(&ZonalProfile::exp_irt(r, 150), &a, 40).unwrap();
        let pole = UnitVector::axis(3, 0).unwrap();
        // at xi = eta the value is e^{ir}
        let (val, _) = evaluate_expansion(&exp_obj, &pole, &pole).unwrap();
        let want = c(0.0, r).exp();
        assert!((val - want).norm() < 1e-10, "{val} vs {want}");
        // at xi perpendicular to eta the value is phi(0) = 1
        let xi = UnitVector::axis(3, 1).unwrap();
        let (val, _) = evaluate_expansion(&exp_obj, &pole, &xi).unwrap();
        assert!((val - c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn linearity_of_expand() {
        let a = alpha_d(4);
        let p1 = ZonalProfile::exp_irt(1.3, 160);
        let p2 = ZonalProfile::generating_kernel(0.4, &a, 160).unwrap();
        let combo: Vec<Complex64> = p1
            .taylor()
            .iter()
            .zip(p2.taylor())
            .map(|(u, v)| 2.0 * u - 0.5 * v)
            .collect();
        let e1 = expand(&p1, &a, 10).unwrap();
        let e2 = expand(&p2, &a, 10).unwrap();
        let ec = expand(&ZonalProfile::from_taylor(combo), &a, 10).unwrap();
        for m in 0..=10usize {
            let want = 2.0 * e1.coefficients()[m] - 0.5 * e2.coefficients()[m];
            assert!((ec.coefficients()[m] - want).norm() < 1e-14);
        }
    }

    #[test]
    fn quadrature_oracle_matches_expand() {
        // Gamma(a+1) f_m dim H^m must equal the Gegenbauer-integral route
        for d in [3usize, 4] {
            let a = alpha_d(d);
            // smooth analytic profile
            let r = 2.0;
            let exp_obj = expand(&ZonalProfile::exp_irt(r, 150), &a, 8).unwrap();
            for m in 0..=8usize {
                let via_integral = zonal_coefficient_quadrature(
                    &|t| Complex64::new(0.0, r * t).exp(),
                    &a,
                    m,
                    1e-11,
                )
                .unwrap();
                let via_taylor = exp_obj.coefficients()[m] * exp_obj.weights()[m];
                let scale = via_integral.norm().max(1e-12);
                assert!(
                    (via_integral - via_taylor).norm() / scale < 1e-8,
                    "d={d} m={m}: {via_taylor} vs {via_integral}"
                );
            }
            // generating-function profile at r = 0.4
            let rk = 0.4;
            let kern = ZonalProfile::generating_kernel(rk, &a, 150).unwrap();
            let exp_obj = expand(&kern, &a, 6).unwrap();
            for m in 0..=6usize {
                let via_integral = zonal_coefficient_quadrature(
                    &|t| Complex64::new((1.0 - 2.0 * rk * t + rk * rk).powf(-a.to_f64()), 0.0),
                    &a,
                    m,
                    1e-11,
                )
                .unwrap();
                let via_taylor = exp_obj.coefficients()[m] * exp_obj.weights()[m];
                let scale = via_integral.norm().max(1e-12);
                assert!(
                    (via_integral - via_taylor).norm() / scale < 1e-8,
                    "genfunc d={d} m={m}"
                );
            }
        }
    }

    #[test]
    fn expansion_matches_evaluator_hook() {
        // partial sums reproduce phi((xi|eta)) through the evaluator
        let a = alpha_d(4);
        let profile = ZonalProfile::generating_kernel(0.45, &a, 200).unwrap();
        let expansion = expand(&profile, &a, 30).unwrap();
        let pole = UnitVector::normalized(vec![1.0, -1.0, 0.5, 2.0]).unwrap();
        for raw in [
            vec![0.2, 0.4, -1.0, 0.3],
            vec![-1.0, 0.0, 0.0, 0.0],
            vec![0.9, 0.9, 0.9, 0.9],
        ] {
            let xi = UnitVector::normalized(raw).unwrap();
            let s = pole.dot(&xi).unwrap();
            let (got, tail) = evaluate_expansion(&expansion, &pole, &xi).unwrap();
            let want = profile.eval(s).unwrap();
            assert!(
                (got - want).norm() < 1e-9 + 10.0 * tail,
                "s={s}: {got} vs {want} (tail {tail})"
            );
        }
    }

    #[test]
    fn tail_estimate_is_finite_and_small_for_decaying_series() {
        let a = alpha_d(3);
        let exp_obj = expand(&ZonalProfile::exp_irt(1.0, 100), &a, 25).unwrap();
        assert!(exp_obj.tail_estimate().is_finite());
        assert!(exp_obj.tail_estimate() < 1e-20);
        // polynomial profile: exact zero tail
        let exp_obj = expand(&ZonalProfile::power(3), &a, 10).unwrap();
        assert_eq!(exp_obj.tail_estimate(), 0.0);
    }

    #[test]
    fn generating_kernel_taylor_is_consistent_with_evaluator() {
        let a = alpha_d(3);
        let p = ZonalProfile::generating_kernel(0.3, &a, 60).unwrap();
        for t in [-0.9, 0.0, 0.5, 1.0] {
            let direct = p.eval(t).unwrap();
            let series: Complex64 = p
                .taylor()
                .iter()
                .enumerate()
                .map(|(n, c)| c * t.powi(n as i32))
                .sum();
            assert!((direct - series).norm() < 1e-12, "t={t}");
        }
        assert!(ZonalProfile::generating_kernel(1.0, &a, 10).is_err());
    }

    #[test]
    fn eta_dot_xi_symmetry() {
        // evaluate_expansion depends only on the inner product
        let a = alpha_d(3);
        let exp_obj = expand(&ZonalProfile::exp_irt(1.5, 100), &a, 30).unwrap();
        let pole = UnitVector::normalized(vec![1.0, 2.0, -2.0]).unwrap();
        let xi = UnitVector::normalized(vec![0.0, 1.0, 1.0]).unwrap();
        let s = pole.dot(&xi).unwrap();
        let (v1, _) = evaluate_expansion(&exp_obj, &pole, &xi).unwrap();
        let pole2 = UnitVector::axis(3, 2).unwrap();
        let xi2 = UnitVector::new(vec![(1.0 - s * s).sqrt(), 0.0, s]).unwrap();
        let (v2, _) = evaluate_expansion(&exp_obj, &pole2, &xi2).unwrap();
        assert!((v1 - v2).norm() < 1e-12);
    }

    #[test]
    fn alpha_mismatch_is_rejected() {
        let a = alpha_d(3);
        let exp_obj = expand(&ZonalProfile::constant(c(1.0, 0.0)), &a, 2).unwrap();
        let pole = UnitVector::axis(4, 0).unwrap();
        let xi = UnitVector::axis(4, 1).unwrap();
        assert!(evaluate_expansion(&exp_obj, &pole, &xi).is_err());
    }

    #[test]
    fn exp_profile_phases_cycle_with_m() {
        // f_m = i^m (r/2)^m j_{a+m}(r)/Gamma(a+m+1): alternately real/imaginary
        let a = alpha_d(3);
        let exp_obj = expand(&ZonalProfile::exp_irt(2.0, 100), &a, 8).unwrap();
        for (m, f) in exp_obj.coefficients().iter().enumerate() {
            if m % 2 == 0 {
                assert_eq!(f.im, 0.0, "m={m}");
            } else {
                assert_eq!(f.re, 0.0, "m={m}");
            }
        }
    }
}
