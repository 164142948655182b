//! Continuous Galerkin step solver and time marching.
//!
//! On each step `I_m` the solver finds `U ∈ P^{r_m}(I_m)` with
//! `U(t) = U(t_{m-1}) + ∫_{t_{m-1}}^t Π^{r_m-1} F(τ, Π^{r_m-1} U(τ)) dτ`.
//! Evaluating `F` at the projected state is what keeps `‖U(t_m)‖ = ‖u_0‖`
//! whenever `⟨F(t, v), v⟩ = 0`.

mod march;
mod options;
mod partition;
mod rhs;
mod step;

pub use march::{integrate, nodal_norm_drift, CgSolution};
pub use options::{ContractionPolicy, SolverOptions, StepMethod};
pub use partition::TimePartition;
pub use rhs::RhsOperator;
pub use step::{check_contraction, solve_step, weak_form_residual, StepOutcome};
