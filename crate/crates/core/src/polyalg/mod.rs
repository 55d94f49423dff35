//! Exact sparse arithmetic for homogeneous polynomials on `R^d`, together
//! with the Laplacian, multiplication by `r^2 = sum x_i^2`, floating-point
//! evaluation, and exact integration over the unit sphere.
//!
//! The surface measure is normalized so the total area of the sphere is 1;
//! no other convention is offered anywhere in this crate. With that
//! normalization every monomial integral is an exact rational:
//!
//! ```text
//! integral of x^(2b) over S^{d-1}  =  prod_i (2 b_i - 1)!!  /  prod_{i=0}^{|b|-1} (d + 2i)
//! ```
//!
//! and integrals of monomials with any odd exponent vanish.

mod parse;
mod serialize;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{double_factorial_odd, rational_to_f64, Rational};

pub use serialize::PolynomialJson;

/// Exponent vector of a single monomial. Ordered by total degree, then
/// lexicographically, so `BTreeMap` iteration is the canonical graded-lex
/// term order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial { exponents }
    }

    /// The constant monomial in `d` variables.
    pub fn constant(d: usize) -> Self {
        Monomial {
            exponents: vec![0; d],
        }
    }

    /// `x_i` as a monomial in `d` variables (`i` is 0-based).
    pub fn variable(d: usize, i: usize) -> Self {
        let mut e = vec![0; d];
        e[i] = 1;
        Monomial { exponents: e }
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.dim(), other.dim());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Bitmask of exponent parities; used to skip monomial pairs whose
    /// product integrates to zero over the sphere.
    fn parity_mask(&self) -> u64 {
        debug_assert!(self.dim() <= 64);
        self.exponents
            .iter()
            .enumerate()
            .fold(0u64, |m, (i, e)| m | (((*e as u64) & 1) << i))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exponents.cmp(&other.exponents))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A homogeneous polynomial of fixed degree on `R^d`, stored sparsely with
/// exact rational coefficients. Zero coefficients are never stored; the zero
/// polynomial of any degree has an empty term map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneousPolynomial {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl HomogeneousPolynomial {
    /// The zero polynomial, regarded as an element of the degree-`degree`
    /// homogeneous space.
    pub fn zero(dim: usize, degree: usize) -> Self {
        HomogeneousPolynomial {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `c` (degree 0).
    pub fn constant(dim: usize, c: Rational) -> Self {
        let mut p = Self::zero(dim, 0);
        if !c.is_zero() {
            p.terms.insert(Monomial::constant(dim), c);
        }
        p
    }

    /// The coordinate polynomial `x_i` (0-based `i`).
    pub fn variable(dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(Error::IndexOutOfRange {
                what: "variable index",
                got: i as i64,
                max: dim as i64 - 1,
            });
        }
        let mut p = Self::zero(dim, 1);
        p.terms.insert(Monomial::variable(dim, i), Rational::one());
        Ok(p)
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, validating
    /// dimension and homogeneity and merging duplicates.
    pub fn from_terms<I>(dim: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(dim, degree);
        for (m, c) in terms {
            if m.dim() != dim {
                return Err(Error::DimensionMismatch(m.dim(), dim));
            }
            if m.degree() as usize != degree {
                return Err(Error::InvalidPolynomial(format!(
                    "monomial of degree {} in a degree-{} polynomial",
                    m.degree(),
                    degree
                )));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Sum of absolute coefficient values as a float; a bound for |P| on the
    /// unit sphere.
    pub fn l1_norm_f64(&self) -> f64 {
        self.terms.values().map(|c| rational_to_f64(c).abs()).sum()
    }

    // The zero polynomial belongs to every degree space, so a zero operand
    // is accepted regardless of its recorded degree.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        self.check_same_space(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim, self.degree);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Product of two homogeneous polynomials (degrees add).
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    fn check_same_space(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        if self.degree != other.degree {
            return Err(Error::InvalidPolynomial(format!(
                "degree mismatch: {} vs {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    /// Applies the permutation `perm` to the variables: `x_i -> x_{perm[i]}`.
    pub fn permute_variables(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.dim {
            return Err(Error::DimensionMismatch(perm.len(), self.dim));
        }
        let mut out = Self::zero(self.dim, self.degree);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; self.dim];
            for (i, &ei) in m.exponents().iter().enumerate() {
                e[perm[i]] = ei;
            }
            out.add_term(Monomial::new(e), c.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for HomogeneousPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        parse::format_polynomial(self, f)
    }
}

/// `Delta P`, homogeneous of degree `max(deg - 2, 0)`; the zero polynomial
/// when `deg < 2`.
pub fn laplacian(p: &HomogeneousPolynomial) -> HomogeneousPolynomial {
    let out_degree = p.degree().saturating_sub(2);
    let mut out = HomogeneousPolynomial::zero(p.dim(), out_degree);
    if p.degree() < 2 {
        return out;
    }
    for (m, c) in p.iter() {
        for i in 0..p.dim() {
            let ei = m.exponents()[i];
            if ei >= 2 {
                let mut e = m.exponents().to_vec();
                e[i] -= 2;
                let factor = Rational::from_integer(BigInt::from(ei as u64 * (ei as u64 - 1)));
                out.add_term(Monomial::new(e), c * factor);
            }
        }
    }
    out
}

/// `(sum_i x_i^2) * P`, homogeneous of degree `deg + 2`.
pub fn mul_r2(p: &HomogeneousPolynomial) -> HomogeneousPolynomial {
    let mut out = HomogeneousPolynomial::zero(p.dim(), p.degree() + 2);
    for (m, c) in p.iter() {
        for i in 0..p.dim() {
            let mut e = m.exponents().to_vec();
            e[i] += 2;
            out.add_term(Monomial::new(e), c.clone());
        }
    }
    out
}

/// Floating-point evaluation at `x`.
pub fn evaluate(p: &HomogeneousPolynomial, x: &[f64]) -> Result<f64> {
    if x.len() != p.dim() {
        return Err(Error::DimensionMismatch(x.len(), p.dim()));
    }
    let mut acc = 0.0;
    for (m, c) in p.iter() {
        let mut prod = rational_to_f64(c);
        for (xi, &e) in x.iter().zip(m.exponents()) {
            if e > 0 {
                prod *= xi.powi(e as i32);
            }
        }
        acc += prod;
    }
    Ok(acc)
}

/// Exact integral of the monomial `x^e` over the unit sphere under the
/// probability surface measure: zero when any exponent is odd, otherwise
/// `prod_i (e_i - 1)!! / prod_{i=0}^{|e|/2 - 1} (d + 2i)`.
pub fn sphere_monomial_integral(e: &[u32]) -> Rational {
    if e.iter().any(|&ei| ei % 2 == 1) {
        return Rational::zero();
    }
    let d = e.len();
    let mut num = BigInt::one();
    let mut half_total = 0usize;
    for &ei in e {
        let b = (ei / 2) as usize;
        num *= double_factorial_odd(b);
        half_total += b;
    }
    let mut den = BigInt::one();
    for i in 0..half_total {
        den *= d + 2 * i;
    }
    Rational::new(num, den)
}

/// Exact integral of `P` over the unit sphere (probability measure).
pub fn sphere_integral(p: &HomogeneousPolynomial) -> Rational {
    let mut acc = Rational::zero();
    for (m, c) in p.iter() {
        let i = sphere_monomial_integral(m.exponents());
        if !i.is_zero() {
            acc += c * i;
        }
    }
    acc
}

/// Exact inner product `<P|Q>` on the sphere under the probability measure.
/// Conjugation is the identity on rational coefficients. The degrees of `P`
/// and `Q` may differ; the dimensions may not.
///
/// Terms are bucketed by exponent parity so that only pairs with an even
/// product monomial are touched, and monomial integrals are memoized per
/// call; this keeps large-degree inner products tractable.
pub fn sphere_inner_product(
    p: &HomogeneousPolynomial,
    q: &HomogeneousPolynomial,
) -> Result<Rational> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch(p.dim(), q.dim()));
    }
    let bucket = |poly: &HomogeneousPolynomial| {
        let mut map: HashMap<u64, Vec<(Monomial, Rational)>> = HashMap::new();
        for (m, c) in poly.iter() {
            map.entry(m.parity_mask())
                .or_default()
                .push((m.clone(), c.clone()));
        }
        map
    };
    let pa = bucket(p);
    let qa = bucket(q);
    let mut memo: HashMap<Vec<u32>, Rational> = HashMap::new();
    let mut acc = Rational::zero();
    for (mask, pterms) in &pa {
        if let Some(qterms) = qa.get(mask) {
            for (mp, cp) in pterms {
                for (mq, cq) in qterms {
                    let e: Vec<u32> = mp
                        .exponents()
                        .iter()
                        .zip(mq.exponents())
                        .map(|(a, b)| a + b)
                        .collect();
                    let integral = memo
                        .entry(e)
                        .or_insert_with_key(|e| sphere_monomial_integral(e));
                    if !integral.is_zero() {
                        acc += cp * cq * &*integral;
                    }
                }
            }
        }
    }
    Ok(acc)
}

/// A point on the unit sphere: a float vector with Euclidean norm 1 within
/// 1e-14.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitVector {
    components: Vec<f64>,
}

impl UnitVector {
    /// Validates that `v` already has unit norm.
    pub fn new(v: Vec<f64>) -> Result<Self> {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-14 {
            return Err(Error::NotUnitVector { norm });
        }
        Ok(UnitVector { components: v })
    }

    /// Rescales `v` to unit norm; errors on the zero vector.
    pub fn normalized(v: Vec<f64>) -> Result<Self> {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotUnitVector { norm });
        }
        Ok(UnitVector {
            components: v.into_iter().map(|x| x / norm).collect(),
        })
    }

    /// The coordinate axis `e_i`.
    pub fn axis(dim: usize, i: usize) -> Result<Self> {
        if i >= dim {
            return Err(Error::IndexOutOfRange {
                what: "axis index",
                got: i as i64,
                max: dim as i64 - 1,
            });
        }
        let mut v = vec![0.0; dim];
        v[i] = 1.0;
        Ok(UnitVector { components: v })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    pub fn dot(&self, other: &UnitVector) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a * b)
            .sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use num_traits::Signed;

    fn poly(d: usize, s: &str) -> HomogeneousPolynomial {
        HomogeneousPolynomial::parse(d, s).unwrap()
    }

    #[test]
    fn laplacian_of_r2_is_twice_dim() {
        // Delta(x1^2 + x2^2 + x3^2) = 6 in d = 3
        let p = poly(3, "x1^2 + x2^2 + x3^2");
        let lp = laplacian(&p);
        assert_eq!(lp, HomogeneousPolynomial::constant(3, rat_int(6)));
    }

    #[test]
    fn laplacian_of_mixed_monomial_vanishes() {
        let p = poly(3, "x1*x2");
        assert!(laplacian(&p).is_zero());
        assert_eq!(laplacian(&p).degree(), 0);
    }

    #[test]
    fn laplacian_of_quartic_power() {
        // Delta(x1^4) = 12 x1^2
        let p = poly(3, "x1^4");
        assert_eq!(laplacian(&p), poly(3, "12*x1^2"));
    }

    #[test]
    fn laplacian_low_degree_is_zero_polynomial() {
        let p = poly(3, "x1");
        let lp = laplacian(&p);
        assert!(lp.is_zero());
        assert_eq!(lp.degree(), 0);
    }

    #[test]
    fn mul_r2_of_one_and_x1() {
        let one = HomogeneousPolynomial::constant(3, rat_int(1));
        assert_eq!(mul_r2(&one), poly(3, "x1^2 + x2^2 + x3^2"));
        let x1 = poly(3, "x1");
        assert_eq!(mul_r2(&x1), poly(3, "x1^3 + x1*x2^2 + x1*x3^2"));
    }

    #[test]
    fn laplacian_mul_r2_commutator() {
        // [Delta, r^2] P = (4l + 2d) P for P homogeneous of degree l
        for (d, l, s) in [
            (3, 2, "x1^2 - 2*x2*x3"),
            (4, 3, "x1*x2*x3 + x4^3"),
            (5, 1, "x5"),
        ] {
            let p = poly(d, s);
            let lhs = laplacian(&mul_r2(&p)).sub(&mul_r2(&laplacian(&p))).unwrap();
            let expect = p.scale(&rat_int((4 * l + 2 * d) as i64));
            assert_eq!(lhs, expect);
        }
    }

    #[test]
    fn evaluate_basics() {
        let p = poly(3, "x1^2");
        assert_eq!(evaluate(&p, &[2.0, 0.0, 0.0]).unwrap(), 4.0);
        // degree >= 1 vanishes at the origin
        let q = poly(3, "x1*x2 + x3^2");
        assert_eq!(evaluate(&q, &[0.0, 0.0, 0.0]).unwrap(), 0.0);
        assert!(evaluate(&p, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn evaluate_homogeneity_scaling() {
        let p = poly(3, "x1^2*x2 - x3^3");
        let x = [0.3, -1.2, 0.7];
        let t = 1.7;
        let tx: Vec<f64> = x.iter().map(|v| v * t).collect();
        let lhs = evaluate(&p, &tx).unwrap();
        let rhs = t.powi(3) * evaluate(&p, &x).unwrap();
        assert!((lhs - rhs).abs() < 1e-12 * rhs.abs().max(1.0));
    }

    #[test]
    fn sphere_monomial_integral_values() {
        assert_eq!(sphere_monomial_integral(&[0, 0, 0]), rat_int(1));
        assert_eq!(sphere_monomial_integral(&[2, 0, 0]), rat(1, 3));
        assert_eq!(sphere_monomial_integral(&[1, 1, 0]), rat_int(0));
        // d=3: integral of x1^2 x2^2 = 1/15
        assert_eq!(sphere_monomial_integral(&[2, 2, 0]), rat(1, 15));
        // d=3: integral of x1^4 = 3!!/(3*5) = 1/5
        assert_eq!(sphere_monomial_integral(&[4, 0, 0]), rat(1, 5));
    }

    #[test]
    fn sphere_monomial_integral_partition_of_unity() {
        // sum_i integral(e + 2 e_i) = integral(e), from sum xi^2 = 1
        for e in [[0u32, 0, 0, 0], [2, 0, 4, 0], [2, 2, 2, 0]] {
            let total = sphere_monomial_integral(&e);
            let mut acc = Rational::zero();
            for i in 0..e.len() {
                let mut e2 = e;
                e2[i] += 2;
                acc += sphere_monomial_integral(&e2);
            }
            assert_eq!(acc, total);
        }
    }

    #[test]
    fn inner_product_examples() {
        let one = HomogeneousPolynomial::constant(3, rat_int(1));
        assert_eq!(sphere_inner_product(&one, &one).unwrap(), rat_int(1));
        let x1 = poly(3, "x1");
        let x2 = poly(3, "x2");
        assert_eq!(sphere_inner_product(&x1, &x2).unwrap(), rat_int(0));
        let p = poly(3, "x1^2");
        let q = poly(3, "x2^2");
        assert_eq!(sphere_inner_product(&p, &q).unwrap(), rat(1, 15));
        let bad = HomogeneousPolynomial::constant(4, rat_int(1));
        assert!(sphere_inner_product(&p, &bad).is_err());
    }

    #[test]
    fn monomial_integral_agrees_with_surface_quadrature() {
        // independent route on S^2: x = (sin th cos ph, sin th sin ph, cos th),
        // dsigma = sin th dth dph / (4 pi)
        use crate::quadrature::GaussLegendre;
        let rule = GaussLegendre::new(32);
        let surface = |e: [u32; 3]| -> f64 {
            let inner = |theta: f64| {
                rule.integrate(0.0, 2.0 * std::f64::consts::PI, &|phi: f64| {
                    let x = theta.sin() * phi.cos();
                    let y = theta.sin() * phi.sin();
                    let z = theta.cos();
                    x.powi(e[0] as i32) * y.powi(e[1] as i32) * z.powi(e[2] as i32)
                })
            };
            rule.integrate(0.0, std::f64::consts::PI, &|theta: f64| {
                inner(theta) * theta.sin()
            }) / (4.0 * std::f64::consts::PI)
        };
        for e in [[2u32, 2, 0], [4, 0, 0], [2, 2, 2], [0, 0, 6], [1, 1, 0]] {
            let exact = rational_to_f64(&sphere_monomial_integral(&e));
            let quad = surface(e);
            assert!(
                (exact - quad).abs() < 1e-12,
                "e={e:?}: exact {exact} vs quadrature {quad}"
            );
        }
    }

    #[test]
    fn inner_product_positive_definite_and_parity() {
        let p = poly(4, "x1^2*x2 - 3*x3*x4^2");
        let pp = sphere_inner_product(&p, &p).unwrap();
        assert!(pp.is_positive());
        // odd-degree vs even-degree polynomials are orthogonal
        let q = poly(4, "x1^2 + x2*x3");
        assert_eq!(sphere_inner_product(&p, &q).unwrap(), Rational::zero());
    }

    #[test]
    fn mul_r2_invariant_on_sphere() {
        let p = poly(3, "x1^2*x2");
        let xi = [0.6, 0.8, 0.0];
        let a = evaluate(&mul_r2(&p), &xi).unwrap();
        let b = evaluate(&p, &xi).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn unit_vector_validation() {
        assert!(UnitVector::new(vec![0.6, 0.8, 0.0]).is_ok());
        assert!(UnitVector::new(vec![0.6, 0.9, 0.0]).is_err());
        assert!(UnitVector::normalized(vec![0.0, 0.0, 0.0]).is_err());
        let u = UnitVector::normalized(vec![3.0, 4.0, 0.0]).unwrap();
        assert!((u.components()[0] - 0.6).abs() < 1e-15);
    }

    #[test]
    fn permute_variables_relabels_exponents() {
        let p = poly(3, "x1^2*x2");
        // x1 -> x2, x2 -> x3, x3 -> x1
        let q = p.permute_variables(&[1, 2, 0]).unwrap();
        assert_eq!(q, poly(3, "x2^2*x3"));
    }
}
