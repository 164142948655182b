use crate::basis::{
    antiderivative_from_left, gauss_rule, project, Interval, LocalPoly, QuadratureRule,
};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::solver::{CgSolution, RhsOperator, SolverOptions, TimePartition};

use super::delta_coeffs;

/// Continuous piecewise polynomial `Û` of degree `r_m + 1` on each step,
/// agreeing with the cG solution at every node.
#[derive(Debug, Clone)]
pub struct Reconstruction<T> {
    partition: TimePartition<T>,
    locals: Vec<LocalPoly<T>>,
    jumps: Vec<Vec<T>>,
}

impl<T: Real> Reconstruction<T> {
    /// `Û = U` with zero jumps: the estimator without reconstruction.
    pub fn unreconstructed(sol: &CgSolution<T>) -> Self {
        Self {
            partition: sol.partition().clone(),
            locals: sol.locals().to_vec(),
            jumps: vec![vec![T::zero(); sol.dim()]; sol.partition().num_steps()],
        }
    }

    pub fn partition(&self) -> &TimePartition<T> {
        &self.partition
    }

    pub fn locals(&self) -> &[LocalPoly<T>] {
        &self.locals
    }

    /// The defects `U^m - U^{m-1} - ∫_{I_m} Π^{r_m} F(U)`, one per step.
    pub fn jumps(&self) -> &[Vec<T>] {
        &self.jumps
    }

    pub fn eval(&self, t: T) -> Result<Vec<T>> {
        let m = self.partition.locate(t).ok_or(Error::OutOfInterval {
            t: t.as_f64(),
            a: 0.0,
            b: self.partition.end_time().as_f64(),
        })?;
        self.locals[m].eval(t)
    }
}

/// Gauss points for the degree-raised projection on a step of degree `r`.
pub(crate) fn recon_quad_points<T: Real>(r: usize, opts: &SolverOptions<T>) -> usize {
    opts.quad_points(r).max(r + 1)
}

fn sample_rhs<T: Real>(
    f: &RhsOperator<T>,
    local: &LocalPoly<T>,
    rule: &QuadratureRule<T>,
) -> Vec<Vec<T>> {
    let iv = local.interval();
    rule.nodes()
        .iter()
        .map(|&s| f.eval(iv.from_reference(s), &local.eval_reference(s)))
        .collect()
}

fn jump_from_samples<T: Real>(
    samples: &[Vec<T>],
    rule: &QuadratureRule<T>,
    interval: Interval<T>,
    u_prev: &[T],
    u_next: &[T],
) -> Vec<T> {
    let half = interval.length() / T::lit(2.0);
    (0..u_prev.len())
        .map(|d| {
            let integral = rule
                .weights()
                .iter()
                .zip(samples)
                .fold(T::zero(), |acc, (&w, s)| acc + w * s[d]);
            u_next[d] - u_prev[d] - half * integral
        })
        .collect()
}

/// `U^m - U^{m-1} - ∫_{I_m} F(t, U(t)) dt`. The integral of the degree-`r`
/// projection equals the plain quadrature of the samples, so the projection
/// is skipped.
pub fn jump_term<T: Real>(
    f: &RhsOperator<T>,
    local: &LocalPoly<T>,
    u_prev: &[T],
    u_next: &[T],
    opts: &SolverOptions<T>,
) -> Result<Vec<T>> {
    let rule = gauss_rule(recon_quad_points(local.degree(), opts))?;
    let samples = sample_rhs(f, local, &rule);
    Ok(jump_from_samples(
        &samples,
        &rule,
        local.interval(),
        u_prev,
        u_next,
    ))
}

/// Builds `Û` on every step:
/// `Û(t) = U^{m-1} + ∫_{t_{m-1}}^t Π^{r_m} F(U) + 𝔘^{m-1} ∫_{t_{m-1}}^t L^m`.
pub fn reconstruct<T: Real>(
    f: &RhsOperator<T>,
    sol: &CgSolution<T>,
    opts: &SolverOptions<T>,
) -> Result<Reconstruction<T>> {
    let partition = sol.partition();
    let nodal = sol.nodal_values();
    let mut locals = Vec::with_capacity(partition.num_steps());
    let mut jumps = Vec::with_capacity(partition.num_steps());
    for (m, local) in sol.locals().iter().enumerate() {
        let r = partition.degrees()[m];
        let interval = local.interval();
        let rule = gauss_rule(recon_quad_points(r, opts))?;
        let samples = sample_rhs(f, local, &rule);
        let jump = jump_from_samples(&samples, &rule, interval, &nodal[m], &nodal[m + 1]);

        let lifted = antiderivative_from_left(&project(&samples, &rule, r, interval)?);
        let delta = LocalPoly::scalar(interval, &delta_coeffs(r, interval.length()));
        let correction = LocalPoly::scalar_times_vector(&antiderivative_from_left(&delta), &jump);
        locals.push(lifted.add(&correction).add_constant(&nodal[m]));
        jumps.push(jump);
    }
    Ok(Reconstruction {
        partition: partition.clone(),
        locals,
        jumps,
    })
}
