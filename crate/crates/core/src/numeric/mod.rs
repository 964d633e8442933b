//! Internal numerical toolkit: extended precision, root finding, dense linear
//! solves, quadrature, ODE integration, extrapolation, and series machinery.

pub mod dd;
pub mod extrap;
pub mod interp;
pub mod linalg;
pub mod ode;
pub mod quad;
pub mod roots;
pub mod series;
