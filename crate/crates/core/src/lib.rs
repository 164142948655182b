//! Norm-preserving continuous Galerkin (cG) time stepping.
//!
//! For `u' = F(t, u)` with `⟨F(t, v), v⟩ = 0` the exact flow stays on the
//! sphere `‖u(t)‖ = ‖u(0)‖`. The scheme here evaluates `F` at the
//! L2-projection of the discrete solution onto one degree less, which keeps
//! `‖U(t_m)‖ = ‖u(0)‖` at every time node for any step sizes and any
//! per-step polynomial degrees. A degree-raising reconstruction `Û`
//! turns the residual `F(Û) - Û'` into a computable, guaranteed
//! `L∞` error bound.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the
//! `*64` / `*32` aliases below fix the precision.
//!
//! ```
//! use normcg::{estimate, integrate, problems, reconstruct, EstimatorOptions, SolverOptions64, TimePartition64};
//!
//! let problem = problems::paper3x3::<f64>();
//! let partition = TimePartition64::uniform(4.0, 32, 2).unwrap();
//! let opts = SolverOptions64::default();
//! let sol = integrate(&problem.rhs, &partition, &problem.u0, &opts).unwrap();
//! assert!(normcg::nodal_norm_drift(&sol) < 1e-11);
//!
//! let recon = reconstruct(&problem.rhs, &sol, &opts).unwrap();
//! let report = estimate(&problem.rhs, &sol, &recon, partition.nodes(), &opts, &EstimatorOptions::default()).unwrap();
//! assert!(report.final_bound() > 0.0);
//! ```

// `!(x > y)` guards throughout the crate are deliberate: they reject NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
mod error;
pub mod estimator;
pub mod linalg;
pub mod problems;
mod scalar;
pub mod solver;
pub mod study;

pub use basis::{
    antiderivative_from_left, gauss_rule, legendre_derivatives, legendre_values, poly_eval,
    project, Interval, LocalPoly, QuadratureRule,
};
pub use error::{Error, Result};
pub use estimator::{
    delta_coeffs, estimate, jump_term, reconstruct, EstimatorOptions, EstimatorReport,
    EstimatorVariant, Reconstruction,
};
pub use problems::BenchmarkProblem;
pub use scalar::Real;
pub use solver::{
    check_contraction, integrate, nodal_norm_drift, solve_step, weak_form_residual, CgSolution,
    ContractionPolicy, RhsOperator, SolverOptions, StepMethod, StepOutcome, TimePartition,
};

pub type Interval64 = Interval<f64>;
pub type Interval32 = Interval<f32>;
pub type LocalPoly64 = LocalPoly<f64>;
pub type LocalPoly32 = LocalPoly<f32>;
pub type QuadratureRule64 = QuadratureRule<f64>;
pub type QuadratureRule32 = QuadratureRule<f32>;
pub type RhsOperator64 = RhsOperator<f64>;
pub type RhsOperator32 = RhsOperator<f32>;
pub type TimePartition64 = TimePartition<f64>;
pub type TimePartition32 = TimePartition<f32>;
pub type SolverOptions64 = SolverOptions<f64>;
pub type SolverOptions32 = SolverOptions<f32>;
pub type CgSolution64 = CgSolution<f64>;
pub type CgSolution32 = CgSolution<f32>;
pub type Reconstruction64 = Reconstruction<f64>;
pub type Reconstruction32 = Reconstruction<f32>;
pub type EstimatorReport64 = EstimatorReport<f64>;
pub type EstimatorReport32 = EstimatorReport<f32>;
pub type BenchmarkProblem64 = BenchmarkProblem<f64>;
pub type BenchmarkProblem32 = BenchmarkProblem<f32>;
