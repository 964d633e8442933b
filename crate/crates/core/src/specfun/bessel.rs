//! Bessel functions J0, J1 and zeros of J0.
//!
//! Accuracy strategy: the ascending power series suffers catastrophic
//! cancellation for moderate arguments (the largest term reaches ~1e11 at
//! x = 30 while the function is O(0.1)), so it is summed in double-double
//! precision up to x = 30; beyond that the Hankel asymptotic expansion is
//! already accurate to well below 1e-16.

use crate::numeric::dd::Dd;

const SERIES_ASYMPTOTIC_SPLIT: f64 = 30.0;

/// Ascending series in double-double arithmetic: order 0 or 1.
fn bessel_series_dd(x: f64, order: u8) -> f64 {
    let xh = Dd::from(0.5 * x);
    let q = xh * xh; // x^2/4, exactly in dd
    let mut term = Dd::from(1.0);
    let mut sum = Dd::from(1.0);
    let mut max_abs = 1.0f64;
    for n in 1..200 {
        let nf = n as f64;
        let denom = if order == 0 { nf * nf } else { nf * (nf + 1.0) };
        term = (term * q).div_f64(-denom);
        sum = sum + term;
        let t = term.hi.abs();
        max_abs = max_abs.max(t);
        if t < 1e-35 * max_abs && nf > 0.5 * x {
            break;
        }
    }
    if order == 0 {
        sum.value()
    } else {
        sum.mul_f64(0.5 * x).value()
    }
}

/// Hankel phase chi = x - (2 order + 1) pi/4 reduced modulo 2 pi in
/// double-double arithmetic.  A plain f64 subtraction rounds the phase to
/// ~x*eps absolute (2e-12 at x = 1.6e4), which would cap the relative
/// accuracy of J0/J1 at that level; the compensated reduction keeps the
/// phase accurate to ~1e-16 for any argument below 2^52.
fn hankel_phase_mod_2pi(x: f64, order: u8) -> f64 {
    let pi_4 = Dd {
        hi: std::f64::consts::FRAC_PI_4,
        lo: 3.061616997868383e-17,
    };
    let two_pi = Dd {
        hi: std::f64::consts::TAU,
        lo: 2.4492935982947064e-16,
    };
    let shift = 1.0 + 2.0 * order as f64;
    let chi = Dd::from(x) + pi_4.mul_f64(-shift);
    let n = (chi.hi / two_pi.hi).round();
    (chi + two_pi.mul_f64(-n)).value()
}

/// Hankel asymptotic expansion coefficients A_m(nu) accumulated on the fly:
/// J_nu(x) = sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)], chi = x - nu pi/2 - pi/4,
/// P = sum_j (-1)^j A_{2j} x^{-2j}, Q = sum_j (-1)^j A_{2j+1} x^{-2j-1},
/// A_m = A_{m-1} (4 nu^2 - (2m-1)^2) / (8 m).
fn bessel_asymptotic(x: f64, order: u8) -> f64 {
    let mu = 4.0 * (order as f64) * (order as f64);
    let mut a = 1.0f64; // A_0
    let mut p = 1.0f64;
    let mut q = 0.0f64;
    let mut xp = 1.0f64; // x^{-m}
    for m in 1..=20 {
        let mf = m as f64;
        a *= (mu - (2.0 * mf - 1.0) * (2.0 * mf - 1.0)) / (8.0 * mf);
        xp /= x;
        let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if m % 2 == 0 {
            p += sign * a * xp;
        } else {
            q += sign * a * xp;
        }
    }
    let chi = hankel_phase_mod_2pi(x, order);
    (2.0 / (std::f64::consts::PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// Bessel function of the first kind, order zero, for `x >= 0`.
pub fn bessel_j0(x: f64) -> f64 {
    assert!(x >= 0.0, "bessel_j0 requires x >= 0");
    if x <= SERIES_ASYMPTOTIC_SPLIT {
        bessel_series_dd(x, 0)
    } else {
        bessel_asymptotic(x, 0)
    }
}

/// Bessel function of the first kind, order one, for `x >= 0`.
pub fn bessel_j1(x: f64) -> f64 {
    assert!(x >= 0.0, "bessel_j1 requires x >= 0");
    if x <= SERIES_ASYMPTOTIC_SPLIT {
        bessel_series_dd(x, 1)
    } else {
        bessel_asymptotic(x, 1)
    }
}

/// The `m`-th positive zero of J0 (`m >= 1`).
///
/// McMahon's asymptotic estimate refined by Newton iteration
/// (J0' = -J1); accurate to ~1e-13 absolute for all m.
pub fn bessel_j0_zero(m: u32) -> f64 {
    assert!(m >= 1);
    let beta = (m as f64 - 0.25) * std::f64::consts::PI;
    let b2 = beta * beta;
    // McMahon expansion for the zeros of J0
    let mut x =
        beta + (1.0 / 8.0) / beta * (1.0 - (31.0 / 48.0) / b2 + (3779.0 / 1920.0) / (b2 * b2));
    for _ in 0..4 {
        let f = bessel_j0(x);
        let df = -bessel_j1(x);
        let dx = f / df;
        x -= dx;
        if dx.abs() < 1e-14 * x {
            break;
        }
    }
    x
}
