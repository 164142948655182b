use crate::error::{Error, Result};
use crate::scalar::Real;

use super::legendre_values;

const MAX_NEWTON_ITERS: usize = 100;

/// Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> QuadratureRule<T> {
    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Approximates `∫_{-1}^{1} f(s) ds`.
    pub fn integrate_reference(&self, mut f: impl FnMut(T) -> T) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&s, &w)| acc + w * f(s))
    }

    /// Approximates `∫_a^b f(t) dt`.
    pub fn integrate(&self, a: T, b: T, mut f: impl FnMut(T) -> T) -> T {
        let half = (b - a) / T::lit(2.0);
        let mid = (a + b) / T::lit(2.0);
        half * self.integrate_reference(|s| f(mid + half * s))
    }
}

/// `q`-point Gauss-Legendre rule: roots of `P_q` by Newton iteration from
/// Chebyshev initial guesses, weights `2 / ((1 - x^2) P_q'(x)^2)`.
pub fn gauss_rule<T: Real>(q: usize) -> Result<QuadratureRule<T>> {
    if q == 0 {
        return Err(Error::EmptyQuadrature);
    }
    let tol = T::tol(1e-15);
    let qf = T::of(q);
    let mut nodes = vec![T::zero(); q];
    let mut weights = vec![T::zero(); q];
    // Roots come in symmetric pairs; solve for the positive half only.
    for i in 0..q.div_ceil(2) {
        // Chebyshev-type guess for the i-th largest root.
        let theta = T::PI() * (T::of(4 * i + 3)) / (T::of(4) * qf + T::lit(2.0));
        let mut x = theta.cos();
        let mut converged = false;
        let mut dp = T::one();
        for _ in 0..MAX_NEWTON_ITERS {
            let (p, d) = value_and_derivative(q, x);
            dp = d;
            let dx = p / d;
            x = x - dx;
            if dx.abs() <= tol {
                converged = true;
                dp = value_and_derivative(q, x).1;
                break;
            }
        }
        if !converged {
            return Err(Error::QuadratureNotConverged { q });
        }
        if q % 2 == 1 && i == q / 2 {
            x = T::zero();
            dp = value_and_derivative(q, x).1;
        }
        let w = T::lit(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[q - 1 - i] = x;
        nodes[i] = -x;
        weights[q - 1 - i] = w;
        weights[i] = w;
    }
    Ok(QuadratureRule { nodes, weights })
}

fn value_and_derivative<T: Real>(q: usize, x: T) -> (T, T) {
    let p = legendre_values(q, x);
    let pq = p[q];
    let pm = if q >= 1 { p[q - 1] } else { T::zero() };
    // P_q'(x) = q (x P_q - P_{q-1}) / (x^2 - 1); roots stay away from ±1.
    let d = T::of(q) * (x * pq - pm) / (x * x - T::one());
    (pq, d)
}
