use std::fmt;
use std::sync::Arc;

use crate::basis::Interval;
use crate::linalg::Matrix;
use crate::scalar::Real;

type EvalFn<T> = dyn Fn(T, &[T], &mut [T]) + Send + Sync;
type LipschitzFn<T> = dyn Fn(&Interval<T>) -> T + Send + Sync;
type MatrixFn<T> = dyn Fn(T) -> Matrix<T> + Send + Sync;

/// Right-hand side `F(t, v)` of `u' = F(t, u)` on `R^n`.
///
/// The structural flags are claims made by whoever builds the operator;
/// nothing here enforces them.
#[derive(Clone)]
pub struct RhsOperator<T> {
    dim: usize,
    eval: Arc<EvalFn<T>>,
    lipschitz: Option<Arc<LipschitzFn<T>>>,
    matrix: Option<Arc<MatrixFn<T>>>,
    claims_orthogonal: bool,
    claims_lower_adjoint: bool,
}

impl<T: Real> RhsOperator<T> {
    /// General operator; `f(t, v, out)` writes `F(t, v)` into `out`.
    pub fn new(dim: usize, f: impl Fn(T, &[T], &mut [T]) + Send + Sync + 'static) -> Self {
        Self {
            dim,
            eval: Arc::new(f),
            lipschitz: None,
            matrix: None,
            claims_orthogonal: false,
            claims_lower_adjoint: false,
        }
    }

    /// Linear operator `F(t, v) = A(t) v`. Linearity lets the step solver
    /// use a direct solve instead of Picard iteration.
    pub fn linear(dim: usize, a: impl Fn(T) -> Matrix<T> + Send + Sync + 'static) -> Self {
        let a: Arc<MatrixFn<T>> = Arc::new(a);
        let a_eval = Arc::clone(&a);
        let mut op = Self::new(dim, move |t, v, out| a_eval(t).mul_vec_into(v, out));
        op.matrix = Some(a);
        op
    }

    pub fn with_lipschitz(mut self, l: impl Fn(&Interval<T>) -> T + Send + Sync + 'static) -> Self {
        self.lipschitz = Some(Arc::new(l));
        self
    }

    pub fn with_orthogonal(mut self, claim: bool) -> Self {
        self.claims_orthogonal = claim;
        self
    }

    pub fn with_lower_adjoint(mut self, claim: bool) -> Self {
        self.claims_lower_adjoint = claim;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval_into(&self, t: T, v: &[T], out: &mut [T]) {
        (self.eval)(t, v, out)
    }

    pub fn eval(&self, t: T, v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim];
        self.eval_into(t, v, &mut out);
        out
    }

    /// Lipschitz bound `L_m` on `interval`, when one was supplied.
    pub fn lipschitz(&self, interval: &Interval<T>) -> Option<T> {
        self.lipschitz.as_ref().map(|l| l(interval))
    }

    /// `A(t)` for linear operators.
    pub fn matrix(&self, t: T) -> Option<Matrix<T>> {
        self.matrix.as_ref().map(|a| a(t))
    }

    pub fn is_linear(&self) -> bool {
        self.matrix.is_some()
    }

    pub fn claims_orthogonal(&self) -> bool {
        self.claims_orthogonal
    }

    pub fn claims_lower_adjoint(&self) -> bool {
        self.claims_lower_adjoint
    }
}

impl<T> fmt::Debug for RhsOperator<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RhsOperator")
            .field("dim", &self.dim)
            .field("linear", &self.matrix.is_some())
            .field("lipschitz", &self.lipschitz.is_some())
            .field("claims_orthogonal", &self.claims_orthogonal)
            .field("claims_lower_adjoint", &self.claims_lower_adjoint)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_operator_evaluates_matrix_product() {
        let op = RhsOperator::linear(2, |_t: f64| Matrix::from_rows(&[[0.0, -1.0], [1.0, 0.0]]))
            .with_orthogonal(true);
        assert_eq!(op.eval(0.0, &[1.0, 0.0]), vec![0.0, 1.0]);
        assert!(op.is_linear());
        assert!(op.claims_orthogonal());
        assert!(!op.claims_lower_adjoint());
        assert!(op.lipschitz(&Interval::new(0.0, 1.0).unwrap()).is_none());
    }

    #[test]
    fn closure_operator() {
        let op = RhsOperator::new(1, |t: f64, v: &[f64], out: &mut [f64]| out[0] = t * v[0])
            .with_lipschitz(|iv| iv.end());
        assert_eq!(op.eval(2.0, &[3.0]), vec![6.0]);
        assert_eq!(op.lipschitz(&Interval::new(0.0, 4.0).unwrap()), Some(4.0));
        assert!(!op.is_linear());
    }
}
