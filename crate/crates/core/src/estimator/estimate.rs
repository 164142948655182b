use serde::Serialize;

use crate::basis::gauss_rule;
use crate::error::{Error, Result};
use crate::scalar::{dist, Real};
use crate::solver::{CgSolution, RhsOperator, SolverOptions};

use super::Reconstruction;

/// Which function the residual is measured on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EstimatorVariant {
    /// Residual of the degree-raised reconstruction `Û`.
    #[default]
    Reconstructed,
    /// Residual of `U` itself, no reconstruction (suboptimal order).
    Unreconstructed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorOptions {
    /// Residual quadrature uses `q_m + extra_quad_points` Gauss points.
    pub extra_quad_points: usize,
    /// Equispaced samples per step (endpoints included) for `L∞` quantities.
    pub samples_per_interval: usize,
    pub variant: EstimatorVariant,
}

impl Default for EstimatorOptions {
    fn default() -> Self {
        Self {
            extra_quad_points: 4,
            samples_per_interval: 33,
            variant: EstimatorVariant::Reconstructed,
        }
    }
}

/// Cumulative bound `‖u - U‖_{L∞(0,t)} <= ‖F(Û) - Û'‖_{L¹(0,t)} + ‖U - Û‖_{L∞(0,t)}`
/// at each checkpoint `t`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimatorReport<T> {
    pub t_checkpoints: Vec<T>,
    pub residual_l1: Vec<T>,
    pub recon_gap_linf: Vec<T>,
    pub bound: Vec<T>,
}

impl<T: Real> EstimatorReport<T> {
    /// Bound at the last checkpoint.
    pub fn final_bound(&self) -> T {
        self.bound.last().copied().unwrap_or_else(T::zero)
    }
}

/// Evaluates the a posteriori bound at sorted `checkpoints` in `[0, T]`.
/// Pass the partition nodes for the usual per-step report.
pub fn estimate<T: Real>(
    f: &RhsOperator<T>,
    sol: &CgSolution<T>,
    recon: &Reconstruction<T>,
    checkpoints: &[T],
    opts: &SolverOptions<T>,
    est: &EstimatorOptions,
) -> Result<EstimatorReport<T>> {
    let partition = sol.partition();
    let nodes = partition.nodes();
    let t_end = partition.end_time();
    let slack = T::tol(1e-12) * (T::one() + t_end.abs());
    if checkpoints.windows(2).any(|w| !(w[1] >= w[0])) {
        return Err(Error::InvalidOptions("checkpoints must be sorted".into()));
    }
    if checkpoints
        .iter()
        .any(|&c| !(c >= -slack && c <= t_end + slack))
    {
        return Err(Error::InvalidOptions(
            "checkpoints must lie in [0, T]".into(),
        ));
    }
    let unrec;
    let recon = match est.variant {
        EstimatorVariant::Reconstructed => recon,
        EstimatorVariant::Unreconstructed => {
            unrec = Reconstruction::unreconstructed(sol);
            &unrec
        }
    };

    let mut report = EstimatorReport {
        t_checkpoints: checkpoints.to_vec(),
        residual_l1: Vec::with_capacity(checkpoints.len()),
        recon_gap_linf: Vec::with_capacity(checkpoints.len()),
        bound: Vec::with_capacity(checkpoints.len()),
    };
    let mut pos = T::zero();
    let mut m = 0;
    let mut residual = T::zero();
    let mut gap = T::zero();
    for &c in checkpoints {
        let c = c.max(T::zero()).min(t_end);
        while pos < c {
            while nodes[m + 1] <= pos {
                m += 1;
            }
            let hi = c.min(nodes[m + 1]);
            let (r, g) = piece(f, sol, recon, m, pos, hi, opts, est)?;
            residual = residual + r;
            gap = gap.max(g);
            pos = hi;
        }
        report.residual_l1.push(residual);
        report.recon_gap_linf.push(gap);
        report.bound.push(residual + gap);
    }
    Ok(report)
}

/// Residual integral and maximal gap on `[lo, hi] ⊂ I_m`.
#[allow(clippy::too_many_arguments)]
fn piece<T: Real>(
    f: &RhsOperator<T>,
    sol: &CgSolution<T>,
    recon: &Reconstruction<T>,
    m: usize,
    lo: T,
    hi: T,
    opts: &SolverOptions<T>,
    est: &EstimatorOptions,
) -> Result<(T, T)> {
    let r = sol.partition().degrees()[m];
    let u = &sol.locals()[m];
    let uhat = &recon.locals()[m];
    let rule = gauss_rule(opts.quad_points(r) + est.extra_quad_points)?;

    let mut failure = None;
    let residual = rule.integrate(lo, hi, |t| {
        let value = uhat.eval(t).and_then(|v| Ok((v, uhat.eval_derivative(t)?)));
        match value {
            Ok((v, dv)) => dist(&f.eval(t, &v), &dv),
            Err(e) => {
                failure.get_or_insert(e);
                T::zero()
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }

    let mut gap = T::zero();
    let n = est.samples_per_interval.max(2);
    for i in 0..n {
        let t = if i == n - 1 {
            hi
        } else {
            lo + (hi - lo) * T::of(i) / T::of(n - 1)
        };
        let diff = dist(&u.eval(t)?, &uhat.eval(t)?);
        gap = gap.max(diff);
    }
    Ok((residual, gap))
}
