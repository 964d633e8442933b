//! Finite-interval spectra of symmetric singular potentials: eigenvalues and
//! norm parameters by parity shooting, closed-form spectra for the solvable
//! cases, and the large-index asymptotic models used for tail acceleration.
//!
//! On a symmetric interval of length `N` the eigenfunctions are even or odd
//! under reflection about the midpoint, so each eigenvalue is a root of a
//! midpoint condition on the regular solution: `phi'(N/2, k) = 0` for odd
//! index `nu` (even eigenfunction), `phi(N/2, k) = 0` for even `nu` (odd
//! eigenfunction). The roots sit near `a_nu = pi (nu - 1/2) / N` and obey
//!
//! ```text
//! k_nu = a_nu + (1/a_nu) { 1/(2N^2) + (v_{-1}/N)[ln(4 a_nu N) + gamma_E]
//!                          + (1/N) int_0^{N/2} u }  + O(a_nu^{-3}),
//! kappa_nu = N / (pi a_nu) + O(a_nu^{-2}),
//! ```
//!
//! with `u = v - v_sg` the regular part (absent for the ringed reference
//! spectra).

use std::f64::consts::PI;

use thiserror::Error;

use crate::numeric::ode::{integrate_ode, OdeError, OdeOptions};
use crate::numeric::quad::{self, QuadError};
use crate::numeric::roots::{brent, RootError};
use crate::potential::{Potential, PotentialError};
use crate::regsol::{
    frobenius_coeffs, frobenius_launch, frobenius_norm_integral, BoundState, RegsolError,
};
use crate::specfun::{bessel_j0, bessel_j0_zero, bessel_j1, legendre_p, EULER_GAMMA};

/// Errors from spectrum computation.
#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Regsol(#[from] RegsolError),
    #[error("integration failed: {0}")]
    Ode(#[from] OdeError),
    #[error("root search failed: {0}")]
    Root(#[from] RootError),
    #[error("quadrature failed: {0}")]
    Quad(#[from] QuadError),
    #[error("spectrum requires a symmetric interval potential")]
    NotSymmetricInterval,
    #[error("missed eigenvalue nu = {nu}: no sign change in ({lo:.6}, {hi:.6})")]
    MissedRoot { nu: u32, lo: f64, hi: f64 },
    #[error("eigenvalue ordering violated at nu = {nu}: k = {k:.9} after {prev:.9}")]
    OrderingViolated { nu: u32, k: f64, prev: f64 },
}

/// Parity of an eigenfunction under reflection about the midpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// Parity alternates starting Even at `nu = 1`: odd indices are even
    /// eigenfunctions (Neumann-type midpoint condition) and vice versa.
    pub fn of_index(nu: u32) -> Parity {
        if nu % 2 == 1 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Sign `(-1)^(nu-1)` of the eigenfunction on the right half-interval.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

/// One finite-interval eigenvalue with its norm parameter.
#[derive(Debug, Clone, Copy)]
pub struct SpectrumEntry {
    /// 1-based index.
    pub nu: u32,
    /// Momentum; the eigenvalue is `k^2`.
    pub k: f64,
    pub parity: Parity,
    /// Squared L2([0, N]) norm of the eigenfunction normalized to
    /// `phi ~ sqrt(z)` at the left endpoint.
    pub kappa: f64,
}

/// Eigenvalues `k_1 < k_2 < ...` of a symmetric interval potential.
#[derive(Debug, Clone)]
pub struct IntervalSpectrum {
    /// Interval length.
    pub n: f64,
    pub entries: Vec<SpectrumEntry>,
}

impl IntervalSpectrum {
    /// Check ordering, parity alternation, and norm positivity.
    pub fn validate(&self) -> Result<(), SpectrumError> {
        let mut prev = 0.0;
        for e in &self.entries {
            if e.k <= prev {
                return Err(SpectrumError::OrderingViolated {
                    nu: e.nu,
                    k: e.k,
                    prev,
                });
            }
            debug_assert_eq!(e.parity, Parity::of_index(e.nu));
            debug_assert!(e.kappa > 0.0);
            prev = e.k;
        }
        Ok(())
    }
}

/// Large-index eigenvalue/norm model for a symmetric interval potential.
#[derive(Debug, Clone, Copy)]
pub struct TailModel {
    /// Interval length.
    pub n: f64,
    pub v_minus1: f64,
    /// `int_0^{N/2} u(z) dz` with `u = v - v_sg`; zero for the reference
    /// (ringed) potentials.
    pub u_integral: f64,
}

impl TailModel {
    /// Build the model for a symmetric interval potential, computing the
    /// regular-part integral by quadrature.
    pub fn for_potential(p: &Potential) -> Result<TailModel, SpectrumError> {
        let n = interval_length(p)?;
        let laurent = p.laurent()?;
        let mut inner_err: Option<PotentialError> = None;
        let (u_integral, _) = quad::integrate(
            |z| match p.eval_regular(z) {
                Ok(u) => u,
                Err(e) => {
                    if inner_err.is_none() {
                        inner_err = Some(e);
                    }
                    f64::NAN
                }
            },
            0.0,
            n / 2.0,
            1e-12,
            1e-14,
        )?;
        if let Some(e) = inner_err {
            return Err(e.into());
        }
        Ok(TailModel {
            n,
            v_minus1: laurent.v_minus1,
            u_integral,
        })
    }

    /// First momentum guess `a_nu = pi (nu - 1/2) / N`.
    pub fn a(&self, nu: u32) -> f64 {
        PI * (f64::from(nu) - 0.5) / self.n
    }
}

/// Two-term eigenvalue asymptotic; `ringed` selects the reference spectrum
/// (regular part absent). The error is `O(a_nu^{-3})`.
pub fn asymptotic_k(tail: &TailModel, nu: u32, ringed: bool) -> f64 {
    let a = tail.a(nu);
    let n = tail.n;
    let mut brace = 0.5 / (n * n);
    if tail.v_minus1 != 0.0 {
        brace += tail.v_minus1 / n * ((4.0 * a * n).ln() + EULER_GAMMA);
    }
    if !ringed {
        brace += tail.u_integral / n;
    }
    a + brace / a
}

/// Leading norm asymptotic `kappa_nu = N / (pi a_nu)`, error `O(a_nu^{-2})`.
pub fn asymptotic_kappa(tail: &TailModel, nu: u32) -> f64 {
    tail.n / (PI * tail.a(nu))
}

fn interval_length(p: &Potential) -> Result<f64, SpectrumError> {
    match (p.domain.length(), p.symmetric) {
        (Some(n), true) => Ok(n),
        _ => Err(SpectrumError::NotSymmetricInterval),
    }
}

/// Midpoint data of the regular solution at momentum `k`:
/// `(phi, dphi, 2 int_0^{N/2} phi^2)`.
fn midpoint_shoot(
    p: &Potential,
    k: f64,
    half: f64,
    ode_tol: f64,
    with_norm: bool,
) -> Result<(f64, f64, f64), SpectrumError> {
    // Keep the series argument k*z0 small so six coefficients reach 1e-14.
    let z0 = 1e-3f64.min(0.2 / k.max(1.0));
    let order = 6;
    let coeffs = frobenius_coeffs(p, k, order)?;
    let (phi0, dphi0) = frobenius_launch(p, k, z0, order)?;
    let mut inner_err: Option<PotentialError> = None;
    let mut eval = |z: f64| match p.eval(z) {
        Ok(v) => v,
        Err(e) => {
            if inner_err.is_none() {
                inner_err = Some(e);
            }
            f64::NAN
        }
    };
    let opts = OdeOptions {
        rel_tol: ode_tol,
        abs_tol: ode_tol * 1e-2,
        ..OdeOptions::default()
    };
    let result = if with_norm {
        let rhs = |z: f64, y: &[f64], dy: &mut [f64]| {
            let v = eval(z);
            dy[0] = y[1];
            dy[1] = (v - k * k) * y[0];
            dy[2] = y[0] * y[0];
        };
        let head = frobenius_norm_integral(&coeffs, z0);
        integrate_ode(rhs, z0, &[phi0, dphi0, head], half, &[], &opts)
    } else {
        let rhs = |z: f64, y: &[f64], dy: &mut [f64]| {
            let v = eval(z);
            dy[0] = y[1];
            dy[1] = (v - k * k) * y[0];
        };
        integrate_ode(rhs, z0, &[phi0, dphi0], half, &[], &opts)
    };
    if let Some(e) = inner_err {
        return Err(e.into());
    }
    let sol = result?;
    let norm = if with_norm {
        2.0 * sol.y_end[2]
    } else {
        f64::NAN
    };
    Ok((sol.y_end[0], sol.y_end[1], norm))
}

/// Default local error target of the shooting integrations.
const SHOOT_ODE_TOL: f64 = 1e-12;

/// Compute the first `nu_max` eigenvalues of a symmetric interval potential
/// by parity shooting and refine each to absolute momentum tolerance `tol`.
///
/// Roots are bracketed in `[a_nu - pi/(2N) + delta, a_nu + pi/(2N) - delta]`
/// and the bracket is widened (up to the neighbouring guesses) if the sign
/// change is missing; a root that still cannot be bracketed, or any
/// non-monotone ordering, is reported as an error rather than skipped.
pub fn shoot_spectrum(
    p: &Potential,
    nu_max: u32,
    tol: f64,
) -> Result<IntervalSpectrum, SpectrumError> {
    let n = interval_length(p)?;
    let half = n / 2.0;
    let mut entries = Vec::with_capacity(nu_max as usize);
    let mut prev_k = 0.0f64;
    for nu in 1..=nu_max {
        let parity = Parity::of_index(nu);
        let a = PI * (f64::from(nu) - 0.5) / n;
        let g = |k: f64| -> Result<f64, SpectrumError> {
            let (phi, dphi, _) = midpoint_shoot(p, k, half, SHOOT_ODE_TOL, false)?;
            Ok(match parity {
                Parity::Even => dphi,
                Parity::Odd => phi,
            })
        };
        let delta = 1e-6;
        let half_cell = PI / (2.0 * n);
        let mut lo = a - half_cell + delta;
        let mut hi = a + half_cell - delta;
        let mut flo = g(lo)?;
        let mut fhi = g(hi)?;
        let mut widen = 0;
        while flo.signum() == fhi.signum() {
            widen += 1;
            if widen > 4 {
                return Err(SpectrumError::MissedRoot { nu, lo, hi });
            }
            let grow = half_cell * 0.2 * f64::from(widen);
            lo = (a - half_cell - grow).max(prev_k + delta).max(delta);
            hi = a + half_cell + grow;
            flo = g(lo)?;
            fhi = g(hi)?;
        }
        let mut g_err: Option<SpectrumError> = None;
        let k_nu = brent(
            |k| match g(k) {
                Ok(v) => v,
                Err(e) => {
                    if g_err.is_none() {
                        g_err = Some(e);
                    }
                    f64::NAN
                }
            },
            lo,
            hi,
            tol,
            200,
        );
        if let Some(e) = g_err {
            return Err(e);
        }
        let k_nu = k_nu?;
        if k_nu <= prev_k {
            return Err(SpectrumError::OrderingViolated {
                nu,
                k: k_nu,
                prev: prev_k,
            });
        }
        let (_, _, kappa) = midpoint_shoot(p, k_nu, half, SHOOT_ODE_TOL, true)?;
        entries.push(SpectrumEntry {
            nu,
            k: k_nu,
            parity,
            kappa,
        });
        prev_k = k_nu;
    }
    let spectrum = IntervalSpectrum { n, entries };
    spectrum.validate()?;
    Ok(spectrum)
}

/// Closed-form spectra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedSpectrumCase {
    /// Trigonometric Rosen-Morse well on [0, 1]: `k_nu = pi (nu - 1/2)`,
    /// `kappa_nu = 1 / (pi^2 (nu - 1/2))`.
    V4,
    /// Its pure-singular reference on [0, 1]: even `nu` roots of
    /// `J0(k/2) = 0`, odd `nu` roots of `J0(k/2) - k J1(k/2) = 0`,
    /// `kappa_nu = [J0(k/2)^2 + J1(k/2)^2] / 4`.
    VTilde4,
    /// Bound states of the attractive-Coulomb half-line reference:
    /// `E_nu = -16 / (pi^4 (2 nu - 1)^2)`, `kappa_nu = pi^4 (2 nu - 1)^3 / 64`.
    VTilde3Bound,
}

/// Closed-form spectral data: either an interval spectrum or a bound-state
/// list, depending on the case.
#[derive(Debug, Clone)]
pub enum ClosedSpectrum {
    Interval(IntervalSpectrum),
    Bound(Vec<BoundState>),
}

/// Root of `J0(x) - 2 x J1(x) = 0` (the odd-index midpoint condition of the
/// pure singular interval potential, in the variable `x = k/2`) nearest the
/// `m`-th guess.
fn vtilde4_odd_root(m: u32) -> Result<f64, RootError> {
    // k_nu ~ a_nu = pi (nu - 1/2) with nu = 2m - 1; x = k/2.
    let a = PI * (2.0 * f64::from(m) - 1.5);
    let lo = (0.5 * (a - 0.5 * PI)).max(1e-9);
    let hi = 0.5 * (a + 0.5 * PI);
    brent(
        |x| bessel_j0(x) - 2.0 * x * bessel_j1(x),
        lo,
        hi,
        1e-14,
        200,
    )
}

/// Exact eigenvalues/norms for the closed-form interval cases.
pub fn closed_interval_spectrum(
    case: ClosedSpectrumCase,
    nu_max: u32,
) -> Result<IntervalSpectrum, SpectrumError> {
    let mut entries = Vec::with_capacity(nu_max as usize);
    for nu in 1..=nu_max {
        let parity = Parity::of_index(nu);
        let entry = match case {
            ClosedSpectrumCase::V4 => {
                let half_int = f64::from(nu) - 0.5;
                SpectrumEntry {
                    nu,
                    k: PI * half_int,
                    parity,
                    kappa: 1.0 / (PI * PI * half_int),
                }
            }
            ClosedSpectrumCase::VTilde4 => {
                let k = match parity {
                    Parity::Odd => 2.0 * bessel_j0_zero(nu / 2),
                    Parity::Even => 2.0 * vtilde4_odd_root(nu.div_ceil(2))?,
                };
                let (j0, j1) = (bessel_j0(k / 2.0), bessel_j1(k / 2.0));
                SpectrumEntry {
                    nu,
                    k,
                    parity,
                    kappa: (j0 * j0 + j1 * j1) / 4.0,
                }
            }
            ClosedSpectrumCase::VTilde3Bound => return Err(SpectrumError::NotSymmetricInterval),
        };
        entries.push(entry);
    }
    let spectrum = IntervalSpectrum { n: 1.0, entries };
    spectrum.validate()?;
    Ok(spectrum)
}

/// Bound states of the attractive-Coulomb half-line reference potential.
pub fn vtilde3_bound_states(nu_max: u32) -> Vec<BoundState> {
    (1..=nu_max)
        .map(|nu| {
            let odd = 2.0 * f64::from(nu) - 1.0;
            BoundState {
                nu,
                energy: -16.0 / (PI.powi(4) * odd * odd),
                kappa: PI.powi(4) * odd.powi(3) / 64.0,
            }
        })
        .collect()
}

/// Unified closed-form entry point.
pub fn closed_spectrum(
    case: ClosedSpectrumCase,
    nu_max: u32,
) -> Result<ClosedSpectrum, SpectrumError> {
    match case {
        ClosedSpectrumCase::VTilde3Bound => Ok(ClosedSpectrum::Bound(vtilde3_bound_states(nu_max))),
        _ => Ok(ClosedSpectrum::Interval(closed_interval_spectrum(
            case, nu_max,
        )?)),
    }
}

/// Closed-form eigenfunction of the trigonometric Rosen-Morse well on [0,1],
/// normalized to `phi ~ sqrt(z)` at the left endpoint:
/// `sqrt(sin(pi z)/pi) P_{nu-1}(cos(pi z))`.
pub fn eigenfunction_v4(nu: u32, z: f64) -> f64 {
    ((PI * z).sin() / PI).sqrt() * legendre_p(nu as usize - 1, (PI * z).cos())
}

/// Closed-form eigenfunction of the pure singular reference on [0,1]:
/// `sqrt(z) J0(k z)` mirrored with sign `(-1)^(nu-1)` onto the right half.
pub fn eigenfunction_vtilde4(nu: u32, k: f64, z: f64) -> f64 {
    if z <= 0.5 {
        z.sqrt() * bessel_j0(k * z)
    } else {
        Parity::of_index(nu).sign() * (1.0 - z).sqrt() * bessel_j0(k * (1.0 - z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::{Builtin, Domain, RegularPart};

    #[test]
    fn closed_v4_values() {
        let s = closed_interval_spectrum(ClosedSpectrumCase::V4, 5).unwrap();
        assert_eq!(s.entries.len(), 5);
        let e1 = s.entries[0];
        assert_eq!(e1.k, PI / 2.0);
        assert!((e1.kappa - 2.0 / (PI * PI)).abs() < 1e-16);
        assert!((e1.kappa - 0.2026424).abs() < 1e-7);
        assert_eq!(e1.parity, Parity::Even);
        assert_eq!(s.entries[1].parity, Parity::Odd);
        assert_eq!(s.entries[2].k, 2.5 * PI);
    }

    #[test]
    fn closed_vtilde4_values() {
        let s = closed_interval_spectrum(ClosedSpectrumCase::VTilde4, 9).unwrap();
        // Even indices: k = 2 j_{0, nu/2}.
        let e2 = s.entries[1];
        assert!((e2.k - 2.0 * bessel_j0_zero(1)).abs() < 1e-13);
        assert!((e2.k - 4.8096511).abs() < 1e-7);
        let j1 = bessel_j1(bessel_j0_zero(1));
        assert!((e2.kappa - j1 * j1 / 4.0).abs() < 1e-15);
        // Odd indices satisfy the derivative condition.
        for e in s.entries.iter().filter(|e| e.nu % 2 == 1) {
            let x = e.k / 2.0;
            let res = bessel_j0(x) - 2.0 * x * bessel_j1(x);
            assert!(res.abs() < 1e-11, "nu={}: residual {res}", e.nu);
        }
        // Families interlace through the combined, validated ordering.
        s.validate().unwrap();
    }

    #[test]
    fn closed_vtilde3_bound_values() {
        let b = vtilde3_bound_states(3);
        assert!((b[0].energy + 16.0 / PI.powi(4)).abs() < 1e-16);
        assert!((b[0].energy + 0.16425572).abs() < 1e-7);
        assert!((b[0].kappa - PI.powi(4) / 64.0).abs() < 1e-15);
        assert!((b[0].kappa - 1.5220170).abs() < 1e-7);
        assert!((b[1].kappa - PI.powi(4) * 27.0 / 64.0).abs() < 1e-12);
        match closed_spectrum(ClosedSpectrumCase::VTilde3Bound, 2).unwrap() {
            ClosedSpectrum::Bound(list) => assert_eq!(list.len(), 2),
            ClosedSpectrum::Interval(_) => panic!("expected bound states"),
        }
    }

    #[test]
    fn shooting_matches_v4_closed_form() {
        let p = Potential::builtin(Builtin::V4);
        let s = shoot_spectrum(&p, 6, 1e-11).unwrap();
        for e in &s.entries {
            let exact = PI * (f64::from(e.nu) - 0.5);
            assert!(
                (e.k - exact).abs() < 1e-9,
                "nu={}: {} vs {exact}",
                e.nu,
                e.k
            );
            let kappa_exact = 1.0 / (PI * exact);
            assert!(
                (e.kappa - kappa_exact).abs() < 1e-9,
                "nu={}: kappa {} vs {kappa_exact}",
                e.nu,
                e.kappa
            );
        }
    }

    #[test]
    fn shooting_matches_vtilde4_closed_form() {
        let p = Potential::builtin(Builtin::VTilde4);
        let s = shoot_spectrum(&p, 12, 1e-12).unwrap();
        let c = closed_interval_spectrum(ClosedSpectrumCase::VTilde4, 12).unwrap();
        for (e, x) in s.entries.iter().zip(&c.entries) {
            assert!((e.k - x.k).abs() < 1e-10, "nu={}: {} vs {}", e.nu, e.k, x.k);
            assert!(
                (e.kappa - x.kappa).abs() < 1e-9 * x.kappa.max(1.0),
                "nu={}: kappa {} vs {}",
                e.nu,
                e.kappa,
                x.kappa
            );
        }
    }

    #[test]
    fn norm_consistency_by_quadrature() {
        for nu in 1..=10u32 {
            let exact = 1.0 / (PI * PI * (f64::from(nu) - 0.5));
            let (got, _) =
                quad::integrate(|z| eigenfunction_v4(nu, z).powi(2), 0.0, 1.0, 1e-12, 1e-14)
                    .unwrap();
            assert!((got - exact).abs() < 1e-9, "v4 nu={nu}: {got} vs {exact}");
        }
        let c = closed_interval_spectrum(ClosedSpectrumCase::VTilde4, 10).unwrap();
        for e in &c.entries {
            let (got, _) = quad::integrate(
                |z| eigenfunction_vtilde4(e.nu, e.k, z).powi(2),
                0.0,
                1.0,
                1e-12,
                1e-14,
            )
            .unwrap();
            assert!(
                (got - e.kappa).abs() < 1e-9,
                "vtilde4 nu={}: {got} vs {}",
                e.nu,
                e.kappa
            );
        }
    }

    #[test]
    fn asymptotic_k_matches_bessel_zero() {
        let tail = TailModel {
            n: 1.0,
            v_minus1: 0.0,
            u_integral: 0.0,
        };
        // nu = 10 is even: exact k = 2 j_{0,5}.
        let exact = 2.0 * bessel_j0_zero(5);
        let approx = asymptotic_k(&tail, 10, true);
        let a = tail.a(10);
        assert!((approx - (a + 0.5 / a)).abs() < 1e-15);
        let diff = (approx - exact).abs();
        assert!(
            diff < 2.0 / a.powi(3),
            "diff {diff} vs bound {}",
            2.0 / a.powi(3)
        );
        assert!(diff > 0.5 / a.powi(3), "diff {diff} suspiciously small");
    }

    #[test]
    fn asymptotic_k_ringed_equals_unringed_without_regular_part() {
        let tail = TailModel {
            n: 1.0,
            v_minus1: 0.0,
            u_integral: 0.0,
        };
        for nu in [1, 7, 40] {
            assert_eq!(
                asymptotic_k(&tail, nu, true),
                asymptotic_k(&tail, nu, false)
            );
        }
    }

    #[test]
    fn asymptotic_k_coulomb_tail_matches_shooting() {
        // Symmetrized pure-Coulomb interval potential, v_{-1} = 4/pi^2.
        let p = Potential {
            v_minus1: 4.0 / (PI * PI),
            regular_part: RegularPart::Zero,
            domain: Domain::Interval { n: 1.0 },
            symmetric: true,
        };
        let tail = TailModel::for_potential(&p).unwrap();
        assert_eq!(tail.u_integral, 0.0);
        for nu in [60u32, 100] {
            let s = shoot_spectrum_single(&p, nu);
            let approx = asymptotic_k(&tail, nu, true);
            let a = tail.a(nu);
            assert!(
                (s - approx).abs() < 20.0 / a.powi(3),
                "nu={nu}: shoot {s} vs asym {approx}, scaled {}",
                (s - approx).abs() * a.powi(3)
            );
        }
    }

    /// Shoot a single eigenvalue (test helper bypassing the full sweep).
    fn shoot_spectrum_single(p: &Potential, nu: u32) -> f64 {
        let a = PI * (f64::from(nu) - 0.5);
        let parity = Parity::of_index(nu);
        let g = |k: f64| {
            let (phi, dphi, _) = midpoint_shoot(p, k, 0.5, SHOOT_ODE_TOL, false).unwrap();
            match parity {
                Parity::Even => dphi,
                Parity::Odd => phi,
            }
        };
        brent(g, a - 1.4, a + 1.4, 1e-12, 200).unwrap()
    }

    #[test]
    fn asymptotic_kappa_values() {
        let tail = TailModel {
            n: 1.0,
            v_minus1: 0.0,
            u_integral: 0.0,
        };
        assert!((asymptotic_kappa(&tail, 1) - 2.0 / (PI * PI)).abs() < 1e-16);
        assert!((asymptotic_kappa(&tail, 10) - 1.0 / (9.5 * PI * PI)).abs() < 1e-16);
        assert!((asymptotic_kappa(&tail, 10) - 0.0106654).abs() < 1e-7);
        let c = closed_interval_spectrum(ClosedSpectrumCase::VTilde4, 200).unwrap();
        let e = c.entries.last().unwrap();
        let ratio = e.kappa / asymptotic_kappa(&tail, 200);
        assert!((ratio - 1.0).abs() < 1e-2, "ratio {ratio}");
    }

    #[test]
    fn asymptotic_sandwich_on_shooting() {
        let p = Potential::builtin(Builtin::VTilde4);
        let tail = TailModel::for_potential(&p).unwrap();
        // Fit the a^{-3} constant on the lowest sampled index per parity and
        // require the later ones to stay within a factor of two.
        for base in [50u32, 51] {
            let a0 = tail.a(base);
            let c0 = (shoot_spectrum_single(&p, base) - asymptotic_k(&tail, base, true)).abs()
                * a0.powi(3);
            assert!(c0 > 1e-3 && c0 < 10.0, "nu={base}: fitted constant {c0}");
            for nu in [base + 50, base + 150] {
                let a = tail.a(nu);
                let diff = (shoot_spectrum_single(&p, nu) - asymptotic_k(&tail, nu, true)).abs();
                assert!(
                    diff < 2.0 * c0 / a.powi(3),
                    "nu={nu}: diff {diff} vs fitted bound {}",
                    2.0 * c0 / a.powi(3)
                );
            }
        }
    }

    #[test]
    fn tail_model_regular_integral() {
        let v4 = TailModel::for_potential(&Potential::builtin(Builtin::V4)).unwrap();
        assert!((v4.u_integral + 0.5).abs() < 1e-10, "{}", v4.u_integral);
        // Consistency of the two-term models: the unringed asymptotic for the
        // well is exact because 1/(2N^2) cancels against the integral.
        for nu in [3u32, 11, 101] {
            let exact = PI * (f64::from(nu) - 0.5);
            assert!((asymptotic_k(&v4, nu, false) - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn completeness_partial_sums() {
        // Expand a smooth test function in the closed v4 eigenbasis and watch
        // the pointwise reconstruction error decrease with the cutoff.
        let f = |z: f64| z * (1.0 - z);
        let z_star = 0.3;
        let exact = f(z_star);
        let mut coeffs = Vec::new();
        let mut errs = Vec::new();
        for m in [25u32, 50, 100] {
            let start = coeffs.len() as u32 + 1;
            for nu in start..=m {
                let (inner, _) =
                    quad::integrate(|z| eigenfunction_v4(nu, z) * f(z), 0.0, 1.0, 1e-11, 1e-13)
                        .unwrap();
                let kappa = 1.0 / (PI * PI * (f64::from(nu) - 0.5));
                coeffs.push(inner / kappa);
            }
            let recon: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c * eigenfunction_v4(i as u32 + 1, z_star))
                .sum();
            errs.push((recon - exact).abs());
        }
        assert!(errs[1] < errs[0], "errors {errs:?}");
        assert!(errs[2] < errs[1], "errors {errs:?}");
        assert!(errs[2] < 1e-3, "errors {errs:?}");
    }

    #[test]
    fn eigenfunction_parity_and_boundary() {
        // Boundary behaviour phi ~ sqrt(z) and reflection signs.
        for nu in [1u32, 2, 3, 4] {
            let phi = eigenfunction_v4(nu, 1e-6);
            assert!((phi / 1e-3 - 1.0).abs() < 1e-5, "nu={nu}");
            let (l, r) = (eigenfunction_v4(nu, 0.3), eigenfunction_v4(nu, 0.7));
            assert!(
                (l - Parity::of_index(nu).sign() * r).abs() < 1e-13,
                "nu={nu}: {l} vs {r}"
            );
        }
        let c = closed_interval_spectrum(ClosedSpectrumCase::VTilde4, 4).unwrap();
        for e in &c.entries {
            let (l, r) = (
                eigenfunction_vtilde4(e.nu, e.k, 0.3),
                eigenfunction_vtilde4(e.nu, e.k, 0.7),
            );
            assert!((l - e.parity.sign() * r).abs() < 1e-15, "nu={}", e.nu);
        }
    }
}
