//! Built-in benchmark problems addressable by name.

use std::fmt;
use std::sync::Arc;

use crate::basis::Interval;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Real;
use crate::solver::RhsOperator;

/// Names accepted by [`problem_by_name`].
pub const PROBLEM_NAMES: [&str; 3] = ["paper3x3", "rotation2d", "zero"];

const SAMPLES: usize = 16;

type ExactFn<T> = dyn Fn(T) -> Vec<T> + Send + Sync;

/// Initial value problem with an optional closed-form solution.
#[derive(Clone)]
pub struct BenchmarkProblem<T> {
    pub name: String,
    pub rhs: RhsOperator<T>,
    pub u0: Vec<T>,
    exact: Option<Arc<ExactFn<T>>>,
}

impl<T: Real> BenchmarkProblem<T> {
    pub fn new(name: impl Into<String>, rhs: RhsOperator<T>, u0: Vec<T>) -> Self {
        Self {
            name: name.into(),
            rhs,
            u0,
            exact: None,
        }
    }

    pub fn with_exact(mut self, exact: impl Fn(T) -> Vec<T> + Send + Sync + 'static) -> Self {
        self.exact = Some(Arc::new(exact));
        self
    }

    pub fn exact(&self, t: T) -> Option<Vec<T>> {
        self.exact.as_ref().map(|e| e(t))
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn exact_fn(&self) -> Option<impl Fn(T) -> Vec<T> + '_> {
        self.exact.as_ref().map(|e| move |t| e(t))
    }
}

impl<T> fmt::Debug for BenchmarkProblem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BenchmarkProblem")
            .field("name", &self.name)
            .field("rhs", &self.rhs)
            .field("has_exact", &self.exact.is_some())
            .finish()
    }
}

/// `A(t)` of the 3×3 skew-symmetric benchmark system.
pub fn skew3_matrix<T: Real>(t: T) -> Matrix<T> {
    let two_t = T::lit(2.0) * t;
    let phase = T::lit(3.0) * (-t).exp();
    let (s, c) = phase.sin_cos();
    let z = T::zero();
    Matrix::from_rows(&[
        [z, -two_t * c, -two_t * s],
        [two_t * c, z, phase],
        [two_t * s, -phase, z],
    ])
}

/// `u(t) = (cos t², sin t² cos(3e^{-t}), sin t² sin(3e^{-t}))`.
pub fn skew3_exact_solution<T: Real>(t: T) -> Vec<T> {
    let (s2, c2) = (t * t).sin_cos();
    let (sp, cp) = (T::lit(3.0) * (-t).exp()).sin_cos();
    vec![c2, s2 * cp, s2 * sp]
}

/// Wraps a skew-symmetric `A(t)` as an orthogonal, lower-adjoint operator.
///
/// Skew symmetry is checked at 16 equispaced times in `[0, horizon]`. The
/// Lipschitz bound on an interval is the largest spectral norm of `A` over
/// 16 equispaced times in it, endpoints included.
pub fn make_linear_skew<T: Real>(
    dim: usize,
    a: impl Fn(T) -> Matrix<T> + Send + Sync + 'static,
    horizon: T,
) -> Result<RhsOperator<T>> {
    for i in 0..SAMPLES {
        let t = horizon * T::of(i) / T::of(SAMPLES - 1);
        let m = a(t);
        if m.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: m.dim(),
            });
        }
        let defect = m.skew_defect();
        if defect > T::tol(1e-12) * m.frobenius_norm() {
            return Err(Error::SkewCheckFailed {
                t: t.as_f64(),
                defect: defect.as_f64(),
            });
        }
    }
    let a = Arc::new(a);
    let a_lip = Arc::clone(&a);
    Ok(RhsOperator::linear(dim, move |t| a(t))
        .with_lipschitz(move |iv: &Interval<T>| {
            iv.equispaced(SAMPLES)
                .into_iter()
                .fold(T::zero(), |m, t| m.max(a_lip(t).spectral_norm()))
        })
        .with_orthogonal(true)
        .with_lower_adjoint(true))
}

/// The 3×3 benchmark with `u(0) = (1, 0, 0)` and its exact solution.
pub fn paper3x3<T: Real>() -> BenchmarkProblem<T> {
    let rhs = make_linear_skew(3, skew3_matrix, T::lit(8.0)).expect("benchmark is skew");
    BenchmarkProblem::new("paper3x3", rhs, vec![T::one(), T::zero(), T::zero()])
        .with_exact(skew3_exact_solution)
}

/// `u' = (-u_2, u_1)`, `u(0) = (1, 0)`, solution `(cos t, sin t)`.
pub fn rotation2d<T: Real>() -> BenchmarkProblem<T> {
    let generator = Matrix::from_rows(&[[T::zero(), -T::one()], [T::one(), T::zero()]]);
    let rhs = make_linear_skew(2, move |_| generator.clone(), T::one()).expect("rotation is skew");
    BenchmarkProblem::new("rotation2d", rhs, vec![T::one(), T::zero()])
        .with_exact(|t: T| vec![t.cos(), t.sin()])
}

/// `u' = 0` in `R^2`, `u(0) = (0.6, 0.8)`.
pub fn zero<T: Real>() -> BenchmarkProblem<T> {
    let rhs = make_linear_skew(2, |_| Matrix::zeros(2), T::one()).expect("zero is skew");
    let u0 = vec![T::lit(0.6), T::lit(0.8)];
    let exact = u0.clone();
    BenchmarkProblem::new("zero", rhs, u0).with_exact(move |_| exact.clone())
}

pub fn problem_by_name<T: Real>(name: &str) -> Result<BenchmarkProblem<T>> {
    match name {
        "paper3x3" => Ok(paper3x3()),
        "rotation2d" => Ok(rotation2d()),
        "zero" => Ok(zero()),
        other => Err(Error::UnknownProblem(other.to_string())),
    }
}
