//! Degree-raising reconstruction of a cG solution and the residual-based
//! a posteriori bound on `‖u - U‖_{L∞(0,t)}`.

mod delta;
mod estimate;
mod reconstruct;

pub use delta::delta_coeffs;
pub use estimate::{estimate, EstimatorOptions, EstimatorReport, EstimatorVariant};
pub use reconstruct::{jump_term, reconstruct, Reconstruction};
