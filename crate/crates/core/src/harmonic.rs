//! Canonical decomposition of homogeneous polynomials into harmonic
//! components.
//!
//! Every homogeneous polynomial `P` of degree `l` on `R^d` splits uniquely as
//!
//! ```text
//! P = sum_{k=0}^{floor(l/2)} r^{2k} h_{l-2k}(P),        Delta h_{l-2k}(P) = 0,
//! ```
//!
//! with the components given explicitly by
//!
//! ```text
//! h_{l-2k}(P) = sum_{j=0}^{floor(l/2)-k} e_j^l(k) r^{2j} Delta^{k+j} P,
//!
//! e_j^l(k) = (-1)^j (a+l-2k) Gamma(a+l-2k-j) / (4^{k+j} k! j! Gamma(a+l+1-k)),
//! ```
//!
//! where `a = (d-2)/2`. The gamma ratio telescopes to a finite product of
//! rationals, so the whole decomposition is exact. The maps
//! `P -> r^{2k} h_{l-2k}(P)` are orthogonal projections with respect to the
//! normalized sphere inner product.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::polyalg::{laplacian, mul_r2, HomogeneousPolynomial};
use crate::rational::{factorial, format_rational, gamma_ratio, rat, rat_int, Rational};

/// The dimension parameter `a = (d-2)/2` for `d >= 3`; always an integer or
/// half-odd integer, at least 1/2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alpha {
    value: Rational,
}

impl Alpha {
    /// `a = (d-2)/2` from the ambient dimension.
    pub fn from_dimension(d: usize) -> Result<Self> {
        if d < 3 {
            return Err(Error::DimensionTooSmall(d));
        }
        Ok(Alpha {
            value: rat(d as i64 - 2, 2),
        })
    }

    /// Validates a rational value: `2a` must be a positive integer
    /// (equivalently `d = 2a + 2` is an integer at least 3).
    pub fn new(value: Rational) -> Result<Self> {
        let two = &value * rat_int(2);
        if !two.denom().is_one() || value < rat(1, 2) {
            return Err(Error::InvalidParameter(format!(
                "alpha = {} must be a positive integer or half-odd integer >= 1/2",
                format_rational(&value)
            )));
        }
        Ok(Alpha { value })
    }

    pub fn value(&self) -> &Rational {
        &self.value
    }

    /// The ambient dimension `d = 2a + 2`.
    pub fn dimension(&self) -> usize {
        (&self.value * rat_int(2) + rat_int(2))
            .numer()
            .to_usize()
            .expect("dimension fits usize")
    }

    pub fn to_f64(&self) -> f64 {
        crate::rational::rational_to_f64(&self.value)
    }
}

/// The ordered list of harmonic components `h_{l-2k}(P)`, `k = 0..floor(l/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicDecomposition {
    source_degree: usize,
    components: Vec<(usize, HomogeneousPolynomial)>,
}

impl HarmonicDecomposition {
    pub fn source_degree(&self) -> usize {
        self.source_degree
    }

    /// Pairs `(k, h_{l-2k})` in increasing `k`.
    pub fn components(&self) -> &[(usize, HomogeneousPolynomial)] {
        &self.components
    }

    pub fn component(&self, k: usize) -> Option<&HomogeneousPolynomial> {
        self.components.get(k).map(|(_, h)| h)
    }

    /// Reassembles `sum_k r^{2k} h_{l-2k}`; equals the source exactly.
    pub fn reconstruct(&self) -> HomogeneousPolynomial {
        let dim = self.components[0].1.dim();
        let mut acc = HomogeneousPolynomial::zero(dim, self.source_degree);
        for (k, h) in &self.components {
            let mut t = h.clone();
            for _ in 0..*k {
                t = mul_r2(&t);
            }
            acc = acc.add(&t).expect("components live in the source space");
        }
        acc
    }
}

/// The coefficient `e_j^l(k)` of the canonical decomposition, exactly.
///
/// Valid for `0 <= k <= floor(l/2)` and `0 <= j <= floor(l/2) - k`.
pub fn harmonic_coefficient(alpha: &Alpha, l: usize, k: usize, j: usize) -> Result<Rational> {
    let half = l / 2;
    if k > half {
        return Err(Error::IndexOutOfRange {
            what: "k",
            got: k as i64,
            max: half as i64,
        });
    }
    if j > half - k {
        return Err(Error::IndexOutOfRange {
            what: "j",
            got: j as i64,
            max: (half - k) as i64,
        });
    }
    let a = alpha.value();
    let front = a + rat_int(l as i64 - 2 * k as i64);
    // Gamma(a+l-2k-j) / Gamma(a+l+1-k): arguments differ by k+j+1
    let ratio = gamma_ratio(
        &(a + rat_int(l as i64 - 2 * k as i64 - j as i64)),
        &(a + rat_int(l as i64 + 1 - k as i64)),
    )?;
    let mut denom = Rational::from_integer(BigInt::one() << (2 * (k + j)));
    denom *= Rational::from_integer(factorial(k) * factorial(j));
    let mut e = front * ratio / denom;
    if j % 2 == 1 {
        e = -e;
    }
    Ok(e)
}

/// Canonical decomposition of `P` into harmonic components. Each component is
/// exactly harmonic and `sum_k r^{2k} h_{l-2k}` reconstructs `P` exactly.
///
/// For `l < 2` the decomposition is the identity: a single component `h_l = P`.
pub fn decompose(p: &HomogeneousPolynomial) -> Result<HarmonicDecomposition> {
    let alpha = Alpha::from_dimension(p.dim())?;
    let l = p.degree();
    let half = l / 2;

    // Delta^i P for i = 0..=floor(l/2), shared across all components.
    let mut powers: Vec<HomogeneousPolynomial> = Vec::with_capacity(half + 1);
    powers.push(p.clone());
    for i in 1..=half {
        powers.push(laplacian(&powers[i - 1]));
    }

    let mut components = Vec::with_capacity(half + 1);
    for k in 0..=half {
        let mut h = HomogeneousPolynomial::zero(p.dim(), l - 2 * k);
        let mut r2j = HomogeneousPolynomial::constant(p.dim(), Rational::one());
        for j in 0..=(half - k) {
            let coeff = harmonic_coefficient(&alpha, l, k, j)?;
            if j > 0 {
                r2j = mul_r2(&r2j);
            }
            if !powers[k + j].is_zero() {
                let contrib = r2j.mul(&powers[k + j])?.scale(&coeff);
                h = h.add(&contrib)?;
            }
        }
        components.push((k, h));
    }
    Ok(HarmonicDecomposition {
        source_degree: l,
        components,
    })
}

/// `dim H^l`, the dimension of the space of degree-`l` harmonic homogeneous
/// polynomials: `2(l+a) Gamma(2a+l) / (Gamma(l+1) Gamma(2a+1))`, evaluated
/// exactly.
pub fn harmonic_dim(alpha: &Alpha, l: usize) -> BigInt {
    let two_a = alpha.value() * rat_int(2);
    let front = (alpha.value() + rat_int(l as i64)) * rat_int(2);
    let ratio = gamma_ratio(&(&two_a + rat_int(l as i64)), &(&two_a + rat_int(1)))
        .expect("positive gamma arguments");
    let dim = front * ratio / Rational::from_integer(factorial(l));
    assert!(
        dim.denom().is_one() && dim.is_positive(),
        "harmonic_dim produced a non-integer: {dim}"
    );
    dim.numer().clone()
}

/// The projection `P -> r^{2k} h_{l-2k}(P)` of the degree-`l` space onto an
/// irreducible subspace. Idempotent, and images for different `k` are
/// orthogonal under the sphere inner product.
pub fn project(p: &HomogeneousPolynomial, k: usize) -> Result<HomogeneousPolynomial> {
    let half = p.degree() / 2;
    if k > half {
        return Err(Error::IndexOutOfRange {
            what: "k",
            got: k as i64,
            max: half as i64,
        });
    }
    let decomp = decompose(p)?;
    let mut out = decomp.components[k].1.clone();
    for _ in 0..k {
        out = mul_r2(&out);
    }
    Ok(out)
}
