use crate::error::{Error, Result};
use crate::scalar::Real;

/// What to do when `k_m L_m >= sqrt(2)` on a step with a known Lipschitz bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ContractionPolicy {
    Error,
    #[default]
    Warn,
    Ignore,
}

/// How the discrete fixed point of a step is found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StepMethod {
    /// Picard iteration on the fixed point map.
    Picard,
    /// Assemble and solve the (affine) step equations densely; linear operators only.
    Direct,
    /// `Direct` for linear operators, `Picard` otherwise.
    #[default]
    Auto,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions<T> {
    /// Gauss points per step are `r_m + quad_points_offset`.
    pub quad_points_offset: usize,
    pub picard_tol_rel: T,
    pub picard_tol_abs: T,
    pub picard_max_iters: usize,
    pub contraction_policy: ContractionPolicy,
    pub method: StepMethod,
    /// Evaluate `F(U)` instead of `F(Π^{r-1} U)`: the classical cG scheme,
    /// which is not norm preserving. Comparison runs only.
    pub standard_cg: bool,
}

impl<T: Real> Default for SolverOptions<T> {
    fn default() -> Self {
        Self {
            quad_points_offset: 4,
            picard_tol_rel: T::tol(1e-12),
            picard_tol_abs: T::tol(1e-14),
            picard_max_iters: 100,
            contraction_policy: ContractionPolicy::Warn,
            method: StepMethod::Auto,
            standard_cg: false,
        }
    }
}

impl<T: Real> SolverOptions<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.picard_tol_rel > T::zero()) || !(self.picard_tol_abs > T::zero()) {
            return Err(Error::InvalidOptions(
                "Picard tolerances must be positive".into(),
            ));
        }
        if self.picard_max_iters == 0 {
            return Err(Error::InvalidOptions(
                "picard_max_iters must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Same options in another precision; tolerances are floored at round-off.
    pub fn cast<U: Real>(&self) -> SolverOptions<U> {
        SolverOptions {
            quad_points_offset: self.quad_points_offset,
            picard_tol_rel: U::tol(self.picard_tol_rel.as_f64()),
            picard_tol_abs: U::tol(self.picard_tol_abs.as_f64()),
            picard_max_iters: self.picard_max_iters,
            contraction_policy: self.contraction_policy,
            method: self.method,
            standard_cg: self.standard_cg,
        }
    }

    /// Gauss points used for a step of degree `r`.
    pub fn quad_points(&self, r: usize) -> usize {
        (r + self.quad_points_offset).max(1)
    }
}
