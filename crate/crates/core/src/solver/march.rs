use crate::basis::LocalPoly;
use crate::error::{Error, Result};
use crate::scalar::{norm, Real};

use super::{solve_step, RhsOperator, SolverOptions, TimePartition};

/// Globally continuous piecewise polynomial produced by [`integrate`].
#[derive(Debug, Clone)]
pub struct CgSolution<T> {
    partition: TimePartition<T>,
    locals: Vec<LocalPoly<T>>,
    nodal: Vec<Vec<T>>,
    picard_iterations: Vec<usize>,
    contraction_warnings: Vec<usize>,
}

impl<T: Real> CgSolution<T> {
    pub fn partition(&self) -> &TimePartition<T> {
        &self.partition
    }

    pub fn locals(&self) -> &[LocalPoly<T>] {
        &self.locals
    }

    pub fn u0(&self) -> &[T] {
        &self.nodal[0]
    }

    pub fn dim(&self) -> usize {
        self.nodal[0].len()
    }

    /// `U(t_0), ..., U(t_M)`; `U(t_0)` is the initial value verbatim and
    /// `U(t_m)` the right endpoint of the polynomial on `I_m`.
    pub fn nodal_values(&self) -> &[Vec<T>] {
        &self.nodal
    }

    pub fn picard_iterations(&self) -> &[usize] {
        &self.picard_iterations
    }

    pub fn total_picard_iterations(&self) -> usize {
        self.picard_iterations.iter().sum()
    }

    /// Zero-based steps on which `k_m L_m >= sqrt(2)` was tolerated.
    pub fn contraction_warnings(&self) -> &[usize] {
        &self.contraction_warnings
    }

    /// `U(t)` for `t ∈ [0, T]`.
    pub fn eval(&self, t: T) -> Result<Vec<T>> {
        let m = self.partition.locate(t).ok_or(Error::OutOfInterval {
            t: t.as_f64(),
            a: 0.0,
            b: self.partition.end_time().as_f64(),
        })?;
        self.locals[m].eval(t)
    }
}

/// Marches the cG scheme over `partition`; step `m` starts from the
/// endpoint value of step `m - 1`.
pub fn integrate<T: Real>(
    f: &RhsOperator<T>,
    partition: &TimePartition<T>,
    u0: &[T],
    opts: &SolverOptions<T>,
) -> Result<CgSolution<T>> {
    if u0.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: u0.len(),
        });
    }
    let steps = partition.num_steps();
    let mut locals = Vec::with_capacity(steps);
    let mut nodal = Vec::with_capacity(steps + 1);
    let mut picard_iterations = Vec::with_capacity(steps);
    let mut contraction_warnings = Vec::new();
    nodal.push(u0.to_vec());
    for (m, interval) in partition.intervals().enumerate() {
        let r = partition.degrees()[m];
        let out = solve_step(f, &nodal[m], interval, r, opts).map_err(|e| Error::Step {
            index: m,
            a: interval.start().as_f64(),
            b: interval.end().as_f64(),
            source: Box::new(e),
        })?;
        if out.contraction_warning() {
            contraction_warnings.push(m);
        }
        nodal.push(out.poly.right_value());
        locals.push(out.poly);
        picard_iterations.push(out.iterations);
    }
    Ok(CgSolution {
        partition: partition.clone(),
        locals,
        nodal,
        picard_iterations,
        contraction_warnings,
    })
}

/// `max_m | ‖U(t_m)‖ - ‖u_0‖ |`: distance of the nodal values from the
/// sphere through the initial value.
pub fn nodal_norm_drift<T: Real>(sol: &CgSolution<T>) -> T {
    let r0 = norm(sol.u0());
    sol.nodal
        .iter()
        .fold(T::zero(), |m, u| m.max((norm(u) - r0).abs()))
}
