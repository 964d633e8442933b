//! Series utilities: compensated summation, Hurwitz zeta, inverse-power tail
//! models for slowly converging spectral sums, and a Lerch-type integral for
//! oscillatory tails.

use super::linalg::{lsq_fit, LinalgError};
use super::quad;

/// Kahan-Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Hurwitz zeta function `zeta(s, a) = sum_{n>=0} (n+a)^(-s)` for `s > 1`,
/// `a > 0`, by Euler-Maclaurin summation.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    assert!(s > 1.0 && a > 0.0);
    const M: usize = 18;
    // B_2, B_4, ..., B_14
    const BERN: [f64; 7] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
    ];
    let mut head = KahanSum::new();
    for n in 0..M {
        head.add((n as f64 + a).powf(-s));
    }
    let x = M as f64 + a;
    let mut total = head.value() + x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // correction terms B_{2j}/(2j)! * (s)_{2j-1} * x^{-s-2j+1}
    let mut poch = s; // rising factorial (s)_{2j-1}
    let mut fact = 2.0; // (2j)!
    let mut xpow = x.powf(-s - 1.0);
    for (j, &b) in BERN.iter().enumerate() {
        total += b / fact * poch * xpow;
        let two_j = 2.0 * (j as f64 + 1.0);
        poch *= (s + two_j - 1.0) * (s + two_j);
        fact *= (two_j + 1.0) * (two_j + 2.0);
        xpow /= x * x;
    }
    total
}

/// Fit of tail residuals `d_nu ~ sum_p c_p nu^(-p)` by least squares over the
/// supplied sample indices.  Returns the coefficients and the RMS residual.
pub fn fit_inverse_power_tail(
    nu: &[f64],
    d: &[f64],
    powers: &[f64],
) -> Result<(Vec<f64>, f64), LinalgError> {
    let cols: Vec<Vec<f64>> = powers
        .iter()
        .map(|&p| nu.iter().map(|&x| x.powf(-p)).collect())
        .collect();
    lsq_fit(&cols, d)
}

/// Analytic sum of a fitted inverse-power model over the arithmetic
/// progression `start, start + step, start + 2 step, ...`:
/// `sum_p c_p * step^(-p) * zeta(p, start/step)`.
pub fn inverse_power_tail_sum(coeffs: &[f64], powers: &[f64], start: f64, step: f64) -> f64 {
    assert_eq!(coeffs.len(), powers.len());
    let mut acc = KahanSum::new();
    for (&c, &p) in coeffs.iter().zip(powers) {
        acc.add(c * step.powf(-p) * hurwitz_zeta(p, start / step));
    }
    acc.value()
}

/// `sum_{n>=0} e^(i n theta) / (n + c)` for `0 < theta < 2 pi`, `c > 0`,
/// evaluated through its integral representation
/// `int_0^inf e^(-c t) / (1 - e^(i theta - t)) dt`.
/// Returns `(re, im)`.
pub fn lerch_unit_circle(theta: f64, c: f64) -> (f64, f64) {
    assert!(theta > 0.0 && theta < 2.0 * std::f64::consts::PI && c > 0.0);
    let cos_t = theta.cos();
    let sin_t = theta.sin();
    // e^{-c t} <= 1e-20 beyond l; remainder integral is bounded by
    // e^{-c l} / (c (1 - e^{-l})), far below the quadrature tolerance.
    let l = (46.0 / c).max(2.0);
    let re = quad::integrate(
        |t: f64| {
            let e = (-t).exp();
            let d = 1.0 - 2.0 * e * cos_t + e * e;
            (-c * t).exp() * (1.0 - e * cos_t) / d
        },
        0.0,
        l,
        1e-12,
        1e-15,
    )
    .expect("lerch real part")
    .0;
    let im = quad::integrate(
        |t: f64| {
            let e = (-t).exp();
            let d = 1.0 - 2.0 * e * cos_t + e * e;
            (-c * t).exp() * e * sin_t / d
        },
        0.0,
        l,
        1e-12,
        1e-15,
    )
    .expect("lerch imag part")
    .0;
    (re, im)
}
