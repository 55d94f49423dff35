//! Gegenbauer (ultraspherical) polynomials and zonal reproducing kernels.
//!
//! Exact coefficients come from the explicit alternating sum
//!
//! ```text
//! C_l^a(t) = sum_{j=0}^{floor(l/2)} (-1)^j (a)_{l-j} / (j! (l-2j)!) (2t)^{l-2j},
//! ```
//!
//! whose gamma ratios telescope to rationals. Floating-point evaluation uses
//! the upward three-term recurrence instead, which is stable on `[-1, 1]`;
//! the alternating sum loses precision for large degree. The value at 1 is
//! always taken from the product form `C_l^a(1) = (2a)_l / l!`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::harmonic::Alpha;
use crate::polyalg::{HomogeneousPolynomial, UnitVector};
use crate::rational::{factorial, rational_to_f64, rising, Rational};

/// A Gegenbauer polynomial with exact rational coefficients in the monomial
/// basis of `t`. Only exponents of the same parity as the degree appear.
#[derive(Debug, Clone, PartialEq)]
pub struct GegenbauerPoly {
    alpha: Alpha,
    degree: usize,
    coefficients: Vec<Rational>,
}

impl GegenbauerPoly {
    pub fn alpha(&self) -> &Alpha {
        &self.alpha
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient of `t^i` for `i = 0..=degree`.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn eval_rational(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coefficients.iter().rev() {
            acc = acc * t + rational_to_f64(c);
        }
        acc
    }
}

/// `C_l^a` with exact coefficients from the explicit sum.
pub fn gegenbauer(alpha: &Alpha, l: usize) -> GegenbauerPoly {
    let a = alpha.value();
    let mut coefficients = vec![Rational::zero(); l + 1];
    for j in 0..=(l / 2) {
        let pow = l - 2 * j;
        let mut c = rising(a, l - j) / Rational::from_integer(factorial(j) * factorial(pow));
        c *= Rational::from_integer(num_bigint::BigInt::one() << pow);
        if j % 2 == 1 {
            c = -c;
        }
        coefficients[pow] = c;
    }
    GegenbauerPoly {
        alpha: alpha.clone(),
        degree: l,
        coefficients,
    }
}

/// `C_l^a(1) = (2a)_l / l!`, exactly.
pub fn gegenbauer_at_one(alpha: &Alpha, l: usize) -> Rational {
    let two_a = alpha.value() * crate::rational::rat_int(2);
    rising(&two_a, l) / Rational::from_integer(factorial(l))
}

/// Values `C_m^a(t)` for `m = 0..=max_degree` by the upward three-term
/// recurrence `(m+1) C_{m+1} = 2(m+a) t C_m - (m+2a-1) C_{m-1}`.
pub fn gegenbauer_sequence_f64(alpha: &Alpha, max_degree: usize, t: f64) -> Vec<f64> {
    let a = alpha.to_f64();
    let mut out = Vec::with_capacity(max_degree + 1);
    out.push(1.0);
    if max_degree == 0 {
        return out;
    }
    out.push(2.0 * a * t);
    for m in 1..max_degree {
        let m_f = m as f64;
        let next =
            (2.0 * (m_f + a) * t * out[m] - (m_f + 2.0 * a - 1.0) * out[m - 1]) / (m_f + 1.0);
        out.push(next);
    }
    out
}

/// `C_l^a(t)` as a float (recurrence evaluation).
pub fn gegenbauer_eval_f64(alpha: &Alpha, l: usize, t: f64) -> f64 {
    *gegenbauer_sequence_f64(alpha, l, t).last().unwrap()
}

/// The reproducing kernel `Z_eta^l` for the degree-`l` harmonics: the zonal
/// function `xi -> C_l^a((xi|eta)) / C_l^a(1)`, normalized so its value at
/// the pole is 1. It satisfies `dim H^l <Z_eta^l | P> = P(eta)` for every
/// harmonic `P` of degree `l`.
#[derive(Debug, Clone)]
pub struct ZonalKernel {
    alpha: Alpha,
    degree: usize,
    pole: UnitVector,
}

impl ZonalKernel {
    pub fn new(alpha: Alpha, degree: usize, pole: UnitVector) -> Result<Self> {
        if pole.dim() != alpha.dimension() {
            return Err(Error::DimensionMismatch(pole.dim(), alpha.dimension()));
        }
        Ok(ZonalKernel {
            alpha,
            degree,
            pole,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn pole(&self) -> &UnitVector {
        &self.pole
    }
}

/// Evaluates the reproducing kernel at `xi`.
pub fn zonal_kernel_eval(kernel: &ZonalKernel, xi: &UnitVector) -> Result<f64> {
    let s = kernel.pole.dot(xi)?.clamp(-1.0, 1.0);
    let val = gegenbauer_eval_f64(&kernel.alpha, kernel.degree, s);
    let at_one = rational_to_f64(&gegenbauer_at_one(&kernel.alpha, kernel.degree));
    Ok(val / at_one)
}

/// Exact scalar weights `w_k` of the expansion of the elementary zonal
/// polynomial: `(x|eta)^l = |x|^l sum_k w_k C_{l-2k}^a((xi|eta))` with
///
/// ```text
/// w_k = 2^{-l} Gamma(a) Gamma(l+1) (a+l-2k) / (k! Gamma(a+l+1-k)),
/// ```
///
/// returned as `(k, w_k)` pairs for `k = 0..=floor(l/2)`.
pub fn expand_power(alpha: &Alpha, l: usize) -> Vec<(usize, Rational)> {
    let a = alpha.value();
    (0..=(l / 2))
        .map(|k| {
            // Gamma(a+l+1-k)/Gamma(a) = (a)_{l+1-k}
            let num = Rational::from_integer(factorial(l))
                * (a + crate::rational::rat_int(l as i64 - 2 * k as i64));
            let den = Rational::from_integer(factorial(k))
                * rising(a, l + 1 - k)
                * Rational::from_integer(num_bigint::BigInt::one() << l);
            (k, num / den)
        })
        .collect()
}

/// Residual of the generating-function identity
/// `sum_{m<=max_degree} r^m C_m^a(t) = (1 - 2rt + r^2)^{-a}` at the given
/// truncation. Decays geometrically in the truncation order for `|r| < 1`.
pub fn generating_function_check(alpha: &Alpha, r: f64, t: f64, max_degree: usize) -> f64 {
    let values = gegenbauer_sequence_f64(alpha, max_degree, t);
    let mut sum = 0.0;
    let mut rm = 1.0;
    for v in &values {
        sum += rm * v;
        rm *= r;
    }
    let closed = (1.0 - 2.0 * r * t + r * r).powf(-alpha.to_f64());
    (sum - closed).abs()
}

/// The homogeneous harmonic polynomial extending the zonal harmonic with pole
/// `eta`: `sum_j c_{l-2j} (x|eta)^{l-2j} r^{2j}` where `c_i` are the exact
/// Gegenbauer coefficients. Requires `eta` to be an exact rational unit
/// vector so the result is exact.
pub fn zonal_harmonic_poly(
    alpha: &Alpha,
    l: usize,
    eta: &[Rational],
) -> Result<HomogeneousPolynomial> {
    let d = alpha.dimension();
    if eta.len() != d {
        return Err(Error::DimensionMismatch(eta.len(), d));
    }
    let norm2: Rational = eta.iter().map(|c| c * c).sum();
    if !norm2.is_one() {
        return Err(Error::NotUnitVector {
            norm: rational_to_f64(&norm2).sqrt(),
        });
    }
    // linear form (x|eta)
    let mut linear = HomogeneousPolynomial::zero(d, 1);
    for (i, c) in eta.iter().enumerate() {
        linear = linear.add(&HomogeneousPolynomial::variable(d, i)?.scale(c))?;
    }
    let coeffs = gegenbauer(alpha, l);
    let mut powers = vec![HomogeneousPolynomial::constant(d, Rational::one())];
    for i in 1..=l {
        powers.push(powers[i - 1].mul(&linear)?);
    }
    let mut acc = HomogeneousPolynomial::zero(d, l);
    for j in 0..=(l / 2) {
        let c = &coeffs.coefficients()[l - 2 * j];
        if c.is_zero() {
            continue;
        }
        let mut term = powers[l - 2 * j].scale(c);
        for _ in 0..j {
            term = crate::polyalg::mul_r2(&term);
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}
