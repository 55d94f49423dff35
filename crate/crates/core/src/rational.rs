//! Exact rational scalars and gamma-function ratios.
//!
//! Every algebraic quantity in this crate is an arbitrary-precision rational;
//! floating point enters only at evaluation time. Gamma functions appear in
//! the formulas exclusively through ratios whose arguments differ by integers
//! or half-integers, so they are computed as finite products of rationals with
//! `sqrt(pi)` as the only transcendental constant.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number. Always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// `sqrt(pi)` to full double precision, the only transcendental constant
/// injected into exact computations.
pub const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q` or `p` with optional sign.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidRational(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::InvalidRational(format!("{s}: zero denominator")));
        }
        Ok(Rational::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(n))
    }
}

/// Formats as `p/q`, or `p` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn pow2(e: i64) -> f64 {
    let e = e.clamp(-2200, 2200) as i32;
    2f64.powi(e)
}

/// Converts a rational of any magnitude to the nearest `f64` (within a couple
/// of ulps). `BigRational::to_f64` overflows to NaN for large numerator and
/// denominator; this scales first.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let num = r.numer().abs();
    let den = r.denom().clone();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    // Scale so the integer quotient carries ~63 significant bits.
    let shift = 63 - (nb - db);
    let q = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let v = q.to_f64().unwrap_or(f64::INFINITY) * pow2(-shift);
    if r.is_negative() {
        -v
    } else {
        v
    }
}

/// Exact rational value of a finite `f64` (every finite double is a dyadic
/// rational). Returns `None` for NaN or infinities.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Odd double factorial `(2b-1)!! = 1*3*...*(2b-1)`, with the empty product 1.
pub fn double_factorial_odd(b: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= 2 * i + 1;
    }
    acc
}

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, empty product 1.
pub fn rising(a: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut f = a.clone();
    for _ in 0..n {
        acc *= &f;
        f += Rational::one();
    }
    acc
}

/// `Gamma(a)/Gamma(b)` for arguments differing by an integer, as an exact
/// rational. Both arguments must be positive.
pub fn gamma_ratio(a: &Rational, b: &Rational) -> Result<Rational> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::GammaArgNotPositive(format!(
            "gamma ratio {}/{}",
            format_rational(a),
            format_rational(b)
        )));
    }
    let diff = a - b;
    if !diff.denom().is_one() {
        return Err(Error::Internal(format!(
            "gamma ratio arguments differ by non-integer {}",
            format_rational(&diff)
        )));
    }
    let n = diff
        .numer()
        .abs()
        .to_usize()
        .ok_or_else(|| Error::Internal("gamma ratio difference too large".into()))?;
    if diff.is_negative() {
        Ok(Rational::one() / rising(a, n))
    } else {
        Ok(rising(b, n))
    }
}

/// Value of `Gamma` at an integer or half-odd-integer argument, kept exact as
/// `rat * sqrt(pi)^sqrt_pi_pow`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfIntegerGamma {
    pub rat: Rational,
    pub sqrt_pi_pow: i32,
}

impl HalfIntegerGamma {
    pub fn one() -> Self {
        HalfIntegerGamma {
            rat: Rational::one(),
            sqrt_pi_pow: 0,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        HalfIntegerGamma {
            rat: &self.rat * &other.rat,
            sqrt_pi_pow: self.sqrt_pi_pow + other.sqrt_pi_pow,
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        HalfIntegerGamma {
            rat: &self.rat / &other.rat,
            sqrt_pi_pow: self.sqrt_pi_pow - other.sqrt_pi_pow,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        HalfIntegerGamma {
            rat: &self.rat * c,
            sqrt_pi_pow: self.sqrt_pi_pow,
        }
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.rat) * SQRT_PI.powi(self.sqrt_pi_pow)
    }
}

/// `Gamma(z)` for positive `z` with `2z` an integer.
///
/// Integer `z = n` gives `(n-1)!`; half-odd `z = m + 1/2` gives
/// `(2m-1)!!/2^m * sqrt(pi)`.
pub fn gamma_half_integer(z: &Rational) -> Result<HalfIntegerGamma> {
    if !z.is_positive() {
        return Err(Error::GammaArgNotPositive(format_rational(z)));
    }
    let two_z = z * rat_int(2);
    if !two_z.denom().is_one() {
        return Err(Error::Internal(format!(
            "gamma argument {} is not an integer or half-integer",
            format_rational(z)
        )));
    }
    let two_z = two_z
        .numer()
        .to_usize()
        .ok_or_else(|| Error::Internal("gamma argument too large".into()))?;
    if two_z % 2 == 0 {
        let n = two_z / 2;
        Ok(HalfIntegerGamma {
            rat: Rational::from_integer(factorial(n - 1)),
            sqrt_pi_pow: 0,
        })
    } else {
        let m = (two_z - 1) / 2;
        Ok(HalfIntegerGamma {
            rat: Rational::new(double_factorial_odd(m), BigInt::one() << m),
            sqrt_pi_pow: 1,
        })
    }
}

/// `Gamma(z)` as a float for any positive rational `z`: exact product form
/// when `2z` is an integer, Lanczos approximation otherwise.
pub fn gamma_f64(z: &Rational) -> Result<f64> {
    if !z.is_positive() {
        return Err(Error::GammaArgNotPositive(format_rational(z)));
    }
    if (z * rat_int(2)).denom().is_one() {
        return Ok(gamma_half_integer(z)?.to_f64());
    }
    Ok(lanczos_gamma(rational_to_f64(z)))
}

// Lanczos approximation, g = 7, 9 coefficients. Relative error below 1e-13
// for positive arguments.
fn lanczos_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    let z = x - 1.0;
    let mut a = C[0];
    for (i, c) in C.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * a
}
