//! Shared test support: seeded random inputs and an independent exact
//! linear-algebra oracle for the dimension of the harmonic subspace.

#![allow(dead_code)]

use num_traits::Zero;
use rand_core::{Rng, SeedableRng};
use rand_pcg::Pcg64Mcg;

use zonal_harmonics::polyalg::{HomogeneousPolynomial, Monomial, UnitVector};
use zonal_harmonics::rational::{rat, Rational};

pub type TestRng = Pcg64Mcg;

pub fn rng(seed: u64) -> TestRng {
    Pcg64Mcg::seed_from_u64(seed)
}

pub fn gen_below(rng: &mut TestRng, n: u64) -> u64 {
    rng.next_u64() % n
}

/// Uniform float in [-1, 1).
pub fn gen_signed_unit(rng: &mut TestRng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 52) as f64 - 1.0
}

/// Random nonzero rational with numerator in {-9..9}\{0} and denominator in
/// 1..=4.
pub fn random_coefficient(rng: &mut TestRng) -> Rational {
    let num = loop {
        let v = gen_below(rng, 19) as i64 - 9;
        if v != 0 {
            break v;
        }
    };
    let den = 1 + gen_below(rng, 4) as i64;
    rat(num, den)
}

/// Random monomial of exact degree `l` in `d` variables (balls in boxes).
pub fn random_monomial(rng: &mut TestRng, d: usize, l: usize) -> Monomial {
    let mut e = vec![0u32; d];
    for _ in 0..l {
        e[gen_below(rng, d as u64) as usize] += 1;
    }
    Monomial::new(e)
}

/// Random nonzero homogeneous polynomial with at most `max_terms` terms.
pub fn random_poly(
    rng: &mut TestRng,
    d: usize,
    l: usize,
    max_terms: usize,
) -> HomogeneousPolynomial {
    loop {
        let n_terms = 1 + gen_below(rng, max_terms as u64) as usize;
        let terms = (0..n_terms)
            .map(|_| (random_monomial(rng, d, l), random_coefficient(rng)))
            .collect::<Vec<_>>();
        let p = HomogeneousPolynomial::from_terms(d, l, terms).unwrap();
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_unit_vector(rng: &mut TestRng, d: usize) -> UnitVector {
    loop {
        let v: Vec<f64> = (0..d).map(|_| gen_signed_unit(rng)).collect();
        if let Ok(u) = UnitVector::normalized(v) {
            return u;
        }
    }
}

/// Random point with exact dyadic coordinates (multiples of 1/8) and
/// Euclidean norm at most 5.
pub fn random_dyadic_point(rng: &mut TestRng, d: usize) -> Vec<f64> {
    let k = (40.0 / (d as f64).sqrt()).floor() as u64; // per-axis cap in eighths
    (0..d)
        .map(|_| (gen_below(rng, 2 * k + 1) as i64 - k as i64) as f64 / 8.0)
        .collect()
}

/// All monomials of degree `l` in `d` variables.
pub fn monomials_of_degree(d: usize, l: usize) -> Vec<Monomial> {
    fn rec(d: usize, l: usize, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == d - 1 {
            prefix.push(l as u32);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=l {
            prefix.push(e as u32);
            rec(d, l - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, l, &mut Vec::new(), &mut out);
    out
}

/// Exact rank of a rational matrix by Gaussian elimination.
pub fn rank_rational(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut col = 0;
    while rank < rows && col < cols {
        if let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) {
            m.swap(rank, p);
            let pivot = m[rank][col].clone();
            for r in (rank + 1)..rows {
                if !m[r][col].is_zero() {
                    let f = &m[r][col] / &pivot;
                    for c in col..cols {
                        let sub = &m[rank][c] * &f;
                        m[r][c] -= sub;
                    }
                }
            }
            rank += 1;
        }
        col += 1;
    }
    rank
}

/// Dimension of the kernel of the Laplacian on degree-`l` homogeneous
/// polynomials, computed independently by exact linear algebra on the
/// monomial basis.
pub fn laplacian_kernel_dim(d: usize, l: usize) -> usize {
    let cols = monomials_of_degree(d, l);
    if l < 2 {
        return cols.len();
    }
    let rows = monomials_of_degree(d, l - 2);
    let row_index: std::collections::HashMap<&Monomial, usize> =
        rows.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut matrix = vec![vec![Rational::zero(); cols.len()]; rows.len()];
    for (j, mono) in cols.iter().enumerate() {
        let p = HomogeneousPolynomial::from_terms(
            d,
            l,
            [(mono.clone(), Rational::from_integer(1.into()))],
        )
        .unwrap();
        for (m, c) in zonal_harmonics::polyalg::laplacian(&p).iter() {
            matrix[row_index[m]][j] = c.clone();
        }
    }
    cols.len() - rank_rational(matrix)
}
