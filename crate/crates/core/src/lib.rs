//! Regular solutions, spectra, and trace identities for one-dimensional
//! Schrodinger operators whose potential carries the boundary singularity
//! `-1/(4 z^2) + v_{-1}/z` at the origin, on the half line or on a finite
//! interval with a mirrored singularity at the far end.

pub mod kernels;
pub mod numeric;
pub mod potential;
pub mod regsol;
pub mod specfun;
pub mod spectrum;
pub mod trace;
