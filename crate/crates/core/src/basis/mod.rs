//! Legendre basis on reference and physical intervals, Gauss quadrature,
//! discrete L2 projection and polynomial calculus.

mod legendre;
mod poly;
mod quadrature;

pub use legendre::{legendre_derivatives, legendre_values};
pub use poly::{antiderivative_from_left, poly_eval, project, Interval, LocalPoly};
pub use quadrature::{gauss_rule, QuadratureRule};
