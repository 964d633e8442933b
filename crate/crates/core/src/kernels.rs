//! Translation-kernel machinery on a symmetric interval: series expansions
//! of the transformation kernel `P(z, s)` and of the integral-equation
//! kernel `K(z, s)` about the singular endpoint, the integral-equation
//! residual that couples them, synthesis of `K` from a pair of spectra, and
//! extraction of the potential coefficient `v0` from the kernel diagonal.
//!
//! Both kernels live on `0 < s <= z` and vanish like `sqrt(s)` as `s -> 0`,
//! reflecting the `sqrt(z)` boundary behaviour of the regular solutions of
//! the singular operator `-d^2/dz^2 - 1/(4 z^2) + ...`. They satisfy
//!
//! `K(z, s) + P(z, s) + int_0^z P(z, t) K(s, t) dt = 0`
//!
//! and recover the regular part of the potential through
//! `v(z) = v_ring(z) + 2 d/dz P(z, z)`.
//!
//! For an even regular part `v0 + v2 z^2 + v4 z^4 + ...` both kernels expand
//! as `sqrt(z s)` times a polynomial in `z^2` and `s^2` ([`pl_coeffs_even`],
//! [`gl_kernel_even`]). With a Coulomb term `v_minus1 / z` in the singular
//! part the expansion proceeds instead in overall powers of `z` at fixed
//! ratio `rho = s / z` ([`p_general`]). Finally, `K` admits a spectral
//! representation as a sum over paired eigenvalue data of the target and
//! reference operators ([`kernel_from_spectra`]), whose diagonal yields `v0`
//! by extrapolation ([`v0_from_kernel`]).

use std::f64::consts::PI;

use thiserror::Error;

use crate::numeric::linalg;
use crate::numeric::series::{hurwitz_zeta, lerch_unit_circle, KahanSum};
use crate::specfun::bessel_j0;
use crate::spectrum::IntervalSpectrum;

/// Errors from kernel construction and limit extraction.
#[derive(Debug, Error)]
pub enum KernelError {
    /// The two spectra do not describe the same interval problem.
    #[error("incompatible spectra: {0}")]
    MismatchedSpectra(String),
    /// Not enough levels for the tail calibration window.
    #[error("truncation nu_max = {0} is too small for tail calibration")]
    InvalidTruncation(u32),
    /// The paired eigenvalue sum converges too slowly at the requested
    /// point: the tail estimate is not small compared to the value.
    #[error("slow tail convergence: estimate {estimate:e} against value {value:e}")]
    SlowTailConvergence { estimate: f64, value: f64 },
    /// Successive extrapolants of the diagonal limit move apart instead of
    /// settling, so no limit can be reported.
    #[error("kernel diagonal limit does not converge: deltas {0:e}, {1:e}, {2:e}")]
    NonConvergentLimit(f64, f64, f64),
}

/// Coefficients of a truncated even expansion
/// `sqrt(z s) * sum_{j+k <= 2} c_jk z^(2j) s^(2k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvenCoeffs {
    pub c00: f64,
    pub c10: f64,
    pub c01: f64,
    pub c20: f64,
    pub c11: f64,
    pub c02: f64,
}

impl EvenCoeffs {
    /// Evaluate the truncated expansion at `(z, s)`.
    pub fn eval(&self, z: f64, s: f64) -> f64 {
        let (z2, s2) = (z * z, s * s);
        (z * s).sqrt()
            * (self.c00
                + self.c10 * z2
                + self.c01 * s2
                + self.c20 * z2 * z2
                + self.c11 * z2 * s2
                + self.c02 * s2 * s2)
    }
}

/// Matched truncated expansions of the transformation kernel `P` and the
/// integral-equation kernel `K` for an even regular potential part.
#[derive(Debug, Clone, Copy)]
pub struct KernelExpansionEven {
    /// `P(z, s) = sqrt(z s) [p00 + p10 z^2 + p01 s^2 + ...]`; not symmetric
    /// under `z <-> s`.
    pub p: EvenCoeffs,
    /// `K(z, s)`; symmetric, so `c10 = c01` and `c20 = c02`.
    pub k: EvenCoeffs,
}

/// Kernel expansion coefficients for a potential with regular part
/// `v0 + v2 z^2 + v4 z^4` relative to the bare singular reference.
///
/// The `P` coefficients satisfy two groups of linear constraints: the
/// recovery rows `2 p00 = v0`, `6 (p10 + p01) = v2`,
/// `10 (p20 + p11 + p02) = v4` from `v(z) = v_ring(z) + 2 d/dz P(z, z)`, and
/// the order-matching rows `4 p10 - 4 p01 = p00 v0`,
/// `16 p20 - 4 p11 = p10 v0 + p00 v2`, `4 p11 - 16 p02 = p01 v0` from the
/// kernel differential equation. In debug builds the closed forms are
/// cross-checked against the direct solution of that 6x6 system.
pub fn pl_coeffs_even(v0: f64, v2: f64, v4: f64) -> KernelExpansionEven {
    let v03 = v0 * v0 * v0;
    let p = EvenCoeffs {
        c00: v0 / 2.0,
        c10: v2 / 12.0 + v0 * v0 / 16.0,
        c01: v2 / 12.0 - v0 * v0 / 16.0,
        c20: v4 / 60.0 + v03 / 384.0 + v0 * v2 / 32.0,
        c11: v4 / 15.0 - v03 / 192.0 - v0 * v2 / 48.0,
        c02: v4 / 60.0 + v03 / 384.0 - v0 * v2 / 96.0,
    };
    #[cfg(debug_assertions)]
    {
        let q = pl_coeffs_from_system(v0, v2, v4);
        let scale = 1.0 + v0.abs().powi(3) + v2.abs() * (1.0 + v0.abs()) + v4.abs();
        for (a, b) in [
            (p.c00, q.c00),
            (p.c10, q.c10),
            (p.c01, q.c01),
            (p.c20, q.c20),
            (p.c11, q.c11),
            (p.c02, q.c02),
        ] {
            debug_assert!(
                (a - b).abs() <= 1e-14 * scale,
                "closed-form kernel coefficient {a} disagrees with system solution {b}"
            );
        }
    }
    let k = EvenCoeffs {
        c00: -v0 / 2.0,
        c10: v0 * v0 / 16.0 - v2 / 12.0,
        c01: v0 * v0 / 16.0 - v2 / 12.0,
        c20: v0 * v2 / 96.0 - v03 / 384.0 - v4 / 60.0,
        c11: v0 * v2 / 24.0 - v03 / 96.0 - v4 / 15.0,
        c02: v0 * v2 / 96.0 - v03 / 384.0 - v4 / 60.0,
    };
    KernelExpansionEven { p, k }
}

/// Solve the 6x6 linear system formed by the recovery and order-matching
/// rows for the `P` coefficients. The system matrix is nonsingular for
/// every `(v0, v2, v4)`.
fn pl_coeffs_from_system(v0: f64, v2: f64, v4: f64) -> EvenCoeffs {
    // Unknown order: [p00, p10, p01, p20, p11, p02].
    let mut a = vec![
        vec![2.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        vec![0.0, 6.0, 6.0, 0.0, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, 10.0, 10.0, 10.0],
        vec![-v0, 4.0, -4.0, 0.0, 0.0, 0.0],
        vec![-v2, -v0, 0.0, 16.0, -4.0, 0.0],
        vec![0.0, 0.0, -v0, 0.0, 4.0, -16.0],
    ];
    let mut b = vec![v0, v2, v4, 0.0, 0.0, 0.0];
    let x = linalg::solve(&mut a, &mut b).expect("kernel coefficient system is nonsingular");
    EvenCoeffs {
        c00: x[0],
        c10: x[1],
        c01: x[2],
        c20: x[3],
        c11: x[4],
        c02: x[5],
    }
}

/// Truncated integral-equation kernel for an even regular potential part:
///
/// `K(z, s) = sqrt(z s) [ -v0/2 + (v0^2/16 - v2/12)(z^2 + s^2)
///   + (v0 v2/96 - v0^3/384 - v4/60)(z^4 + s^4)
///   + (v0 v2/24 - v0^3/96 - v4/15) z^2 s^2 ]`.
///
/// The expansion is asymptotic for small arguments; beyond roughly
/// `z ~ 0.3` the dropped sixth-order terms are no longer negligible and the
/// value should only be used as a qualitative guide. On the diagonal the
/// leading behaviour is `K(z, z) ~ -(v0/2) z`.
pub fn gl_kernel_even(v0: f64, v2: f64, v4: f64, z: f64, s: f64) -> f64 {
    pl_coeffs_even(v0, v2, v4).k.eval(z, s)
}

/// Residual of the kernel integral equation
/// `K(z, s) + P(z, s) + int_0^z P(z, t) K(s, t) dt` with both kernels
/// replaced by their truncated even expansions.
///
/// The integral is evaluated exactly, monomial by monomial, so the residual
/// measures pure series truncation: it scales like the first omitted order
/// and shrinks by roughly two orders of magnitude per halving of `(z, s)`.
pub fn gl_residual_even(v0: f64, v2: f64, v4: f64, z: f64, s: f64) -> f64 {
    let KernelExpansionEven { p, k } = pl_coeffs_even(v0, v2, v4);
    let (z2, s2) = (z * z, s * s);
    // P(z, t) = sqrt(z t) sum_i pc[i] t^(2i), K(s, t) = sqrt(s t) sum_j kc[j] t^(2j).
    let pc = [
        p.c00 + p.c10 * z2 + p.c20 * z2 * z2,
        p.c01 + p.c11 * z2,
        p.c02,
    ];
    let kc = [
        k.c00 + k.c10 * s2 + k.c20 * s2 * s2,
        k.c01 + k.c11 * s2,
        k.c02,
    ];
    // int_0^z t^(2(i+j)+1) dt = z^(2(i+j)+2) / (2(i+j)+2), exactly.
    let mut integral = 0.0;
    for (i, &pi) in pc.iter().enumerate() {
        for (j, &kj) in kc.iter().enumerate() {
            let m = 2 * (i + j) + 2;
            integral += pi * kj * z.powi(m as i32) / m as f64;
        }
    }
    (k.eval(z, s) + p.eval(z, s) + (z * s).sqrt() * integral).abs()
}

/// Leading kernel orders for a singular part containing a Coulomb term
/// `v_minus1 / z`, written as `P(z, s) = P1(rho) z + P2(rho) z^2 + ...` with
/// `rho = s / z` held fixed in `(0, 1]`.
#[derive(Debug, Clone, Copy)]
pub struct KernelExpansionGeneral {
    pub v0: f64,
    pub v_minus1: f64,
    pub v1: f64,
}

impl KernelExpansionGeneral {
    /// First-order coefficient function `P1(rho) = (v0/2) sqrt(rho)`.
    ///
    /// `P1` solves `(1 - rho^-2)[P1 + 4 rho^2 P1''] = 0`. The second
    /// solution `sqrt(rho) ln(rho)` of that equation is excluded: it would
    /// violate the `sqrt(s)` boundary behaviour of `P(z, s)` as `s -> 0`.
    pub fn p1(&self, rho: f64) -> f64 {
        0.5 * self.v0 * rho.sqrt()
    }

    /// Second-order coefficient function
    ///
    /// `P2(rho) = (pi/16)(v1 - 4 v0 v_minus1) 2F1(-1/2, -1/2; 1; rho^2)
    /// sqrt(rho) + (v0 v_minus1 / 2)(1 + rho) sqrt(rho)`,
    ///
    /// the solution of
    /// `(1/rho - 1) v_minus1 P1 + (rho^2 - 1) P2'' - 2 rho P2' +
    /// (9 - rho^-2) P2 / 4 = 0`
    /// that stays bounded relative to `sqrt(rho)` and has `P2(1) = v1/4` as
    /// required by the diagonal recovery formula. (With the opposite sign
    /// on the `v_minus1` coupling term no multiple of `(1 + rho) sqrt(rho)`
    /// satisfies both constraints; the sign here is the consistent one.)
    /// The homogeneous equation
    /// has a second independent solution, expressible as a Meijer
    /// G-function, which behaves like `-(8/pi) sqrt(rho) [2 + ln(rho/4)]`
    /// for `rho -> 0`; the logarithm is incompatible with the `sqrt(s)`
    /// boundary condition, so that branch carries zero weight.
    pub fn p2(&self, rho: f64) -> f64 {
        let root = rho.sqrt();
        (PI / 16.0) * (self.v1 - 4.0 * self.v0 * self.v_minus1) * hyp2f1_neg_half(rho * rho) * root
            + 0.5 * self.v0 * self.v_minus1 * (1.0 + rho) * root
    }

    /// First-order coefficient of the matching integral-equation kernel,
    /// `K1(rho) = -(v0/2) sqrt(rho)`.
    pub fn k1(&self, rho: f64) -> f64 {
        -0.5 * self.v0 * rho.sqrt()
    }
}

/// Leading transformation-kernel orders `(P1(rho), P2(rho))` for a singular
/// part with Coulomb coefficient `v_minus1` and regular coefficients
/// `v0`, `v1`.
///
/// # Panics
///
/// Panics unless `rho` lies in `(0, 1]`.
pub fn p_general(rho: f64, v0: f64, v_minus1: f64, v1: f64) -> (f64, f64) {
    assert!(rho > 0.0 && rho <= 1.0, "rho = {rho} must lie in (0, 1]");
    let g = KernelExpansionGeneral { v0, v_minus1, v1 };
    (g.p1(rho), g.p2(rho))
}

/// Gauss hypergeometric value `2F1(-1/2, -1/2; 1; m)` for `m` in `[0, 1]`,
/// computed from the complete elliptic integrals as
/// `(2/pi) [2 E(m) - (1 - m) K(m)]` with the arithmetic-geometric mean.
/// At `m = 1` the value is `4/pi`.
fn hyp2f1_neg_half(m: f64) -> f64 {
    debug_assert!(
        (-1e-15..=1.0 + 1e-15).contains(&m),
        "m = {m} outside [0, 1]"
    );
    if m >= 1.0 - 1e-14 {
        return 4.0 / PI;
    }
    let (kk, ee) = elliptic_ke(m);
    (2.0 / PI) * (2.0 * ee - (1.0 - m) * kk)
}

/// Complete elliptic integrals `(K(m), E(m))` in the parameter convention
/// (`m` = squared modulus), by the arithmetic-geometric mean iteration.
fn elliptic_ke(m: f64) -> (f64, f64) {
    debug_assert!((0.0..1.0).contains(&(m - 1e-300).max(0.0)) && m < 1.0);
    let mut a = 1.0_f64;
    let mut b = (1.0 - m).sqrt();
    // E/K = 1 - sum_{n>=0} 2^(n-1) c_n^2 with c_0 = sqrt(m), c_{n+1} = (a_n - b_n)/2.
    let mut c_sum = 0.5 * m;
    let mut weight = 0.5;
    for _ in 0..32 {
        let c = 0.5 * (a - b);
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
        weight *= 2.0;
        c_sum += weight * c * c;
        // Stop at the roundoff floor of a - b: iterating further only
        // feeds noise into the exponentially weighted sum.
        if c.abs() <= 4.0 * f64::EPSILON * a {
            break;
        }
    }
    let kk = 0.5 * PI / a;
    (kk, kk * (1.0 - c_sum))
}

/// Regular solution of the bare singular operator at momentum `k`,
/// normalized to `sqrt(z)` at the origin: `phi(z, k) = sqrt(z) J0(k z)`.
/// This is the ringed-basis eigenfunction evaluator for interval problems
/// whose reference potential is `-1/(4 z^2)` alone.
pub fn phi_bare_singular(z: f64, k: f64) -> f64 {
    z.sqrt() * bessel_j0(k * z)
}

/// Number of trailing levels used to calibrate the tail model of
/// [`kernel_from_spectra`].
const TAIL_WINDOW: usize = 32;
/// Number of trailing levels used to gauge how well the tail model matches
/// the data.
const RESIDUAL_WINDOW: usize = 16;

/// Synthesize the integral-equation kernel from two interval spectra:
///
/// `K(z, zp) = sum_nu [ phi(z, k_nu) phi(zp, k_nu) / kappa_nu
///   - phi(z, k_ring_nu) phi(zp, k_ring_nu) / kappa_ring_nu ]`,
///
/// where `phi` is the ringed-basis regular solution supplied by the caller
/// (for the bare singular reference, [`phi_bare_singular`]) and both terms
/// of each summand pair the level `nu` of the target spectrum with the same
/// level of the reference spectrum, so the summand decays like `1/nu`
/// instead of staying order one.
///
/// The first `nu_max` summands are taken from the spectra. Beyond the data
/// the summand is replaced by its large-`nu` asymptotic form: with
/// `a_nu = pi (nu - 1/2) / N`, the eigenvalue splitting behaves like
/// `k_ring - k ~ c_delta / a_nu` and the norm amplitudes like
/// `N / (pi k kappa) ~ 1 + c_eps / k^2`; both constants are calibrated from
/// the last [`TAIL_WINDOW`] data levels. The oscillatory tail channels are
/// then summed in closed form (half-integer Lerch sums on the unit circle,
/// Hurwitz zeta values for the mean channels), which keeps the synthesis
/// accurate far below the naive `1/nu_max` truncation floor.
///
/// Returns the kernel value together with a truncation-error estimate that
/// combines the dropped asymptotic orders with the measured mismatch
/// between data and tail model. Errors with
/// [`KernelError::SlowTailConvergence`] when that estimate is not small
/// compared to the value itself.
///
/// # Panics
///
/// Panics unless `0 < z, zp <= N/2`.
pub fn kernel_from_spectra<F>(
    z: f64,
    zp: f64,
    spec: &IntervalSpectrum,
    spec_ring: &IntervalSpectrum,
    mut phi_ring: F,
    nu_max: u32,
) -> Result<(f64, f64), KernelError>
where
    F: FnMut(f64, f64) -> f64,
{
    let nl = spec.n;
    assert!(
        z > 0.0 && zp > 0.0 && z <= 0.5 * nl && zp <= 0.5 * nl,
        "evaluation points must lie in (0, N/2]"
    );
    if nu_max < 2 * TAIL_WINDOW as u32 {
        return Err(KernelError::InvalidTruncation(nu_max));
    }
    if spec_ring.n != nl {
        return Err(KernelError::MismatchedSpectra(format!(
            "interval lengths differ: {} vs {}",
            nl, spec_ring.n
        )));
    }
    let m = nu_max as usize;
    if spec.entries.len() < m || spec_ring.entries.len() < m {
        return Err(KernelError::MismatchedSpectra(format!(
            "need {} levels, got {} and {}",
            m,
            spec.entries.len(),
            spec_ring.entries.len()
        )));
    }

    let kap = nl / PI; // a_nu = (nu - 1/2) / kap
    let diag = z == zp;
    let sz = z + zp;
    let dz = (z - zp).abs();
    let th_sig = PI * sz / nl;
    let th_del = PI * dz / nl;

    // Finite part straight from the data, plus running heads of the two
    // slowest (first-power) oscillatory channels.
    let mut data = KahanSum::new();
    let mut head_cos_sig = KahanSum::new();
    let mut head_sin_del = KahanSum::new();
    let mut recent = [0.0_f64; RESIDUAL_WINDOW];
    for i in 0..m {
        let e = &spec.entries[i];
        let er = &spec_ring.entries[i];
        if e.nu != (i + 1) as u32 || er.nu != e.nu {
            return Err(KernelError::MismatchedSpectra(format!(
                "level indices out of step at position {}: {} vs {}",
                i, e.nu, er.nu
            )));
        }
        let b = phi_ring(z, e.k) * phi_ring(zp, e.k) / e.kappa
            - phi_ring(z, er.k) * phi_ring(zp, er.k) / er.kappa;
        data.add(b);
        if i >= m - RESIDUAL_WINDOW {
            recent[i - (m - RESIDUAL_WINDOW)] = b;
        }
        let w = i as f64 + 0.5;
        head_cos_sig.add((w * th_sig).cos() / w);
        if !diag {
            head_sin_del.add((w * th_del).sin() / w);
        }
    }

    // Calibrate the splitting and amplitude constants of the asymptotic
    // summand from the last TAIL_WINDOW levels. Spectra that actually
    // follow the asymptotic laws produce samples with negligible scatter;
    // large scatter means the tail cannot be modelled and the sum cannot
    // be completed to useful accuracy.
    let mut cd = 0.0;
    let mut cm = 0.0;
    let mut cd_sq = 0.0;
    let mut cm_sq = 0.0;
    for i in m - TAIL_WINDOW..m {
        let e = &spec.entries[i];
        let er = &spec_ring.entries[i];
        let a = (i as f64 + 0.5) / kap;
        let sample_d = (er.k - e.k) * a;
        let eps = nl / (PI * e.k * e.kappa) - 1.0;
        let eps_ring = nl / (PI * er.k * er.kappa) - 1.0;
        let sample_m = eps * e.k * e.k - eps_ring * er.k * er.k;
        cd += sample_d;
        cd_sq += sample_d * sample_d;
        cm += sample_m;
        cm_sq += sample_m * sample_m;
    }
    let win = TAIL_WINDOW as f64;
    cd /= win;
    cm /= win;
    let scatter_d = (cd_sq / win - cd * cd).max(0.0).sqrt();
    let scatter_m = (cm_sq / win - cm * cm).max(0.0).sqrt();
    if scatter_d > 0.5 * (1.0 + cd.abs()) || scatter_m > 0.5 * (1.0 + cm.abs()) {
        return Err(KernelError::SlowTailConvergence {
            estimate: scatter_d.max(scatter_m),
            value: data.value(),
        });
    }

    if cd == 0.0 && cm == 0.0 {
        // Identical spectra: the data summands cancel exactly and the tail
        // model vanishes with them.
        return Ok((data.value(), 0.0));
    }

    // Asymptotic summand. The two leading channels oscillate with phases
    // (nu - 1/2) th_del and (nu - 1/2) th_sig; on the diagonal the
    // difference channel degenerates into a mean and three subleading
    // corrections become relevant.
    let model_term = |i: usize| -> f64 {
        let w = i as f64 + 0.5;
        let a = w / kap;
        let (xs, xd) = (w * th_sig, w * th_del);
        let mut t = (cd / a) * (dz * xd.sin() - sz * xs.cos());
        t += (cm / (a * a)) * (xd.cos() + xs.sin());
        if diag {
            t += -(0.5 * cd) * xs.sin() / (a * a)
                + (cd / 16.0 - cm / 4.0) * xs.cos() / (a * a * a * z)
                - 0.125 * (2.0 * cd + cm) / (a * a * a * a * z * z);
        }
        t / nl
    };

    // Mismatch between data and model over the last levels.
    let mut r_amp = 0.0_f64;
    for (offset, &b) in recent.iter().enumerate() {
        let i = m - RESIDUAL_WINDOW + offset;
        r_amp = r_amp.max((b - model_term(i)).abs());
    }

    // Numeric continuation of the model until the second-power channels are
    // cheap to bound, then closed forms for what remains.
    let nu_big = (4 * m).max((40.0 / th_sig).ceil() as usize).min(6_000_000);
    let mut model = KahanSum::new();
    for i in m..nu_big {
        model.add(model_term(i));
        let w = i as f64 + 0.5;
        head_cos_sig.add((w * th_sig).cos() / w);
        if !diag {
            head_sin_del.add((w * th_del).sin() / w);
        }
    }

    // First-power remainders beyond nu_big from the closed full sums
    // sum_{nu>=1} e^(i (nu-1/2) theta) / (nu - 1/2)
    //   = e^(i theta/2) sum_{n>=0} e^(i n theta) / (n + 1/2).
    let mut closed = 0.0;
    let mut est = 0.0;
    if cd != 0.0 {
        let (full_cos_sig, _) = half_power_circle_sums(th_sig);
        closed -= cd * sz * kap * (full_cos_sig - head_cos_sig.value()) / nl;
        if !diag {
            if th_del > 1e-7 {
                let (_, full_sin_del) = half_power_circle_sums(th_del);
                closed += cd * dz * kap * (full_sin_del - head_sin_del.value()) / nl;
            } else if dz > 0.0 {
                // Nearly coincident points: the difference channel is
                // bounded by its coefficient times the full-sum magnitude.
                est += cd.abs() * dz * kap * (40.0 + th_del.recip().ln()) / nl;
            }
        }
    }

    // Mean channels beyond nu_big are Hurwitz zeta tails; oscillatory
    // second-power channels are bounded by partial-sum envelopes.
    let vb = nu_big as f64 + 0.5;
    let envelope = |theta: f64| 1.0 / (0.5 * theta).sin().abs();
    if diag {
        closed += (cm * kap * kap * hurwitz_zeta(2.0, vb)
            - 0.125 * (2.0 * cd + cm) * kap.powi(4) * hurwitz_zeta(4.0, vb) / (z * z))
            / nl;
        est += (cm.abs() + 0.5 * cd.abs()) * kap * kap * envelope(th_sig) / (vb * vb) / nl;
        est += (cd.abs() / 16.0 + cm.abs() / 4.0) * kap.powi(3) * envelope(th_sig)
            / (vb.powi(3) * z)
            / nl;
    } else {
        // Off the diagonal both second-power channels oscillate; bound each
        // by the smaller of its envelope and its absolute tail.
        let zeta2 = hurwitz_zeta(2.0, vb);
        let bound = |theta: f64| (envelope(theta) / (vb * vb)).min(zeta2);
        est += cm.abs() * kap * kap * (bound(th_sig) + bound(th_del.max(1e-12))) / nl;
    }
    // Dropped orders of the asymptotic summand, measured where data and
    // model overlap, continue as an oscillatory tail.
    est +=
        r_amp * envelope(th_sig.min(if diag { th_sig } else { th_del.max(th_sig) })).min(m as f64);

    let value = data.value() + model.value() + closed;
    if est > 0.5 * value.abs() + 1e-9 {
        return Err(KernelError::SlowTailConvergence {
            estimate: est,
            value,
        });
    }
    Ok((value, est))
}

/// Closed values of `sum_{nu>=1} cos((nu-1/2) theta) / (nu-1/2)` and the
/// matching sine sum, for `theta` in `(0, 2 pi)`.
fn half_power_circle_sums(theta: f64) -> (f64, f64) {
    let (re, im) = lerch_unit_circle(theta, 0.5);
    let (c, s) = ((0.5 * theta).cos(), (0.5 * theta).sin());
    (c * re - s * im, c * im + s * re)
}

/// Extract `v0 = -2 lim_{z->0} K(z, z) / z` from a kernel diagonal by
/// extrapolating the sequence `z_j = 0.05 * 2^-j`, `j = 0..=6`, to zero
/// with a second-order Neville tableau (which annihilates linear and
/// quadratic contamination of the diagonal slope).
///
/// Synthesized diagonals carry noise that grows towards small `z`, so the
/// reported limit is the tableau entry whose last correction is smallest,
/// not necessarily the deepest one; the correction itself is returned as
/// the error estimate. Errors with [`KernelError::NonConvergentLimit`]
/// when even the best correction is large on the scale of the value, as
/// happens when the diagonal does not vanish linearly at the origin.
pub fn v0_from_kernel<F>(mut k_diag: F) -> Result<(f64, f64), KernelError>
where
    F: FnMut(f64) -> f64,
{
    const Z0: f64 = 0.05;
    const LEVELS: usize = 7;
    let mut g = [0.0_f64; LEVELS];
    for (j, gj) in g.iter_mut().enumerate() {
        let zj = Z0 / (1u32 << j) as f64;
        *gj = -2.0 * k_diag(zj) / zj;
    }
    let mut t1 = [0.0_f64; LEVELS];
    let mut t2 = [0.0_f64; LEVELS];
    for j in 1..LEVELS {
        t1[j] = 2.0 * g[j] - g[j - 1];
    }
    for j in 2..LEVELS {
        t2[j] = (4.0 * t1[j] - t1[j - 1]) / 3.0;
    }
    let mut best = 3;
    for j in 4..LEVELS {
        if (t2[j] - t2[j - 1]).abs() < (t2[best] - t2[best - 1]).abs() {
            best = j;
        }
    }
    let value = t2[best];
    let err = (t2[best] - t2[best - 1]).abs();
    if err > 1e-3 * value.abs().max(1.0) {
        return Err(KernelError::NonConvergentLimit(
            (t2[4] - t2[3]).abs(),
            (t2[5] - t2[4]).abs(),
            (t2[6] - t2[5]).abs(),
        ));
    }
    Ok((value, err))
}
