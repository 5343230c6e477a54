//! Self-contained numerical kernels: dense complex linear algebra, special
//! functions, quadrature, and fixed-step ODE integration.

pub mod matrix;
pub mod ode;
pub mod quad;
pub mod special;

pub use matrix::{hermitian_eigen, unitary_exp, ComplexMatrix};
pub use ode::{ode_solve, OdeSpec, Trajectory};
pub use quad::{integrate, integrate_samples, QuadratureSpec};
pub use special::{laguerre, laguerre_complex, ln_gamma};
