//! Panel-based Gauss-Legendre quadrature with adaptive interval halving.
//!
//! Each panel's error is estimated by comparing the rule on the whole panel
//! against the same rule on its two halves; the worst panel is split until
//! the summed estimate meets the tolerance or a depth cap is reached. For an
//! order-`g` rule on smooth integrands, halving a panel shrinks its error by
//! roughly `2^{2g}`, so refinement converges fast away from singularities.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`,
/// computed by Newton iteration on the Legendre polynomial.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..n {
        let kf = k as f64;
        let p2 = ((2.0 * kf + 1.0) * x * p1 - kf * p0) / (kf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "need at least a 2-point rule");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // Chebyshev initial guess, then Newton
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..60 {
                let (p, dp) = legendre_with_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre_with_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes on `[-1, 1]` in ascending order.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Applies the rule to `f` on `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: &F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureOutcome {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: usize,
}

struct Panel {
    a: f64,
    b: f64,
    refined: f64,
    err: f64,
    depth: usize,
}

impl Panel {
    fn build<F: Fn(f64) -> f64>(rule: &GaussLegendre, a: f64, b: f64, depth: usize, f: &F) -> Self {
        let coarse = rule.integrate(a, b, f);
        let mid = 0.5 * (a + b);
        let refined = rule.integrate(a, mid, f) + rule.integrate(mid, b, f);
        Panel {
            a,
            b,
            refined,
            err: (coarse - refined).abs(),
            depth,
        }
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err && self.a == other.a
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // max-heap on error, tie-broken by position for determinism
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Adaptively integrates `f` over `[a, b]` to the requested absolute
/// tolerance with the given rule. `max_panel_width` bounds the initial panel
/// width (used to resolve oscillatory integrands); `max_depth` caps the
/// number of times any single panel may be halved.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    rule: &GaussLegendre,
    max_panel_width: Option<f64>,
    max_depth: usize,
) -> Result<QuadratureOutcome> {
    if !(a.is_finite() && b.is_finite()) || b <= a {
        return Err(Error::InvalidParameter(format!(
            "bad integration interval [{a}, {b}]"
        )));
    }
    let width = b - a;
    let initial = match max_panel_width {
        Some(w) if w > 0.0 && w < width => (width / w).ceil() as usize,
        _ => 1,
    };
    let mut heap = BinaryHeap::new();
    let mut value = 0.0;
    let mut err_total = 0.0;
    for i in 0..initial {
        let pa = a + width * i as f64 / initial as f64;
        let pb = a + width * (i + 1) as f64 / initial as f64;
        let p = Panel::build(rule, pa, pb, 0, f);
        value += p.refined;
        err_total += p.err;
        heap.push(p);
    }
    while err_total > tol {
        let worst = heap.pop().expect("heap never empties while err > 0");
        if worst.depth >= max_depth {
            return Err(Error::QuadratureTolerance {
                value,
                estimate: err_total,
                tol,
            });
        }
        value -= worst.refined;
        err_total -= worst.err;
        let mid = 0.5 * (worst.a + worst.b);
        for (pa, pb) in [(worst.a, mid), (mid, worst.b)] {
            let p = Panel::build(rule, pa, pb, worst.depth + 1, f);
            value += p.refined;
            err_total += p.err;
            heap.push(p);
        }
    }
    Ok(QuadratureOutcome {
        value,
        error_estimate: err_total,
        panels: heap.len(),
    })
}
