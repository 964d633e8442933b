//! Confluent (1F1) and Gauss (2F1) hypergeometric functions.
//!
//! The Kummer series is summed in double-double arithmetic: for oscillatory
//! arguments of modulus ~30 the largest term reaches ~1e11 while the value is
//! O(1), so plain f64 summation would lose eleven digits.  Beyond modulus 30
//! the standard two-sum large-argument expansion takes over.

use super::gamma::log_gamma;
use super::{SpecFunError, MAX_SERIES_TERMS};
use crate::numeric::dd::Dd;
use num_complex::Complex64;

/// Complex double-double value (componentwise).
#[derive(Clone, Copy, Debug)]
struct DdC {
    re: Dd,
    im: Dd,
}

impl DdC {
    fn one() -> Self {
        DdC {
            re: Dd::from(1.0),
            im: Dd::zero(),
        }
    }

    fn add(self, o: DdC) -> Self {
        DdC {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }

    /// Multiply by an exact f64 complex number.
    fn mul_c64(self, c: Complex64) -> Self {
        DdC {
            re: self.re.mul_f64(c.re) + self.im.mul_f64(-c.im),
            im: self.re.mul_f64(c.im) + self.im.mul_f64(c.re),
        }
    }

    /// Multiply by `(w + n)` without rounding the shifted parameter.
    fn mul_shifted(self, w: Complex64, n: f64) -> Self {
        self.mul_c64(w).add(DdC {
            re: self.re.mul_f64(n),
            im: self.im.mul_f64(n),
        })
    }

    fn div_dd(self, d: Dd) -> Self {
        DdC {
            re: self.re / d,
            im: self.im / d,
        }
    }

    fn div_f64(self, d: f64) -> Self {
        DdC {
            re: self.re.div_f64(d),
            im: self.im.div_f64(d),
        }
    }

    fn abs_hi(self) -> f64 {
        self.re.hi.hypot(self.im.hi)
    }

    fn value(self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// Squared modulus of `w + n` in double-double precision.
fn abs2_shifted(w: Complex64, n: f64) -> Dd {
    let re = Dd::from(w.re).add_f64(n);
    let im2 = Dd::from(w.im).mul_f64(w.im);
    re * re + im2
}

fn is_nonpositive_integer(w: Complex64) -> bool {
    w.im == 0.0 && w.re <= 0.0 && w.re.fract() == 0.0
}

const ONE_F1_SPLIT: f64 = 30.0;

/// Kummer confluent hypergeometric function `1F1(a; b; z)` for complex
/// arguments.
///
/// Taylor series (double-double) for `|z| <= 30`; large-argument expansion
/// beyond.  Relative accuracy ~1e-13 in the series regime and ~1e-11 at the
/// crossover.
pub fn hyp1f1(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64, SpecFunError> {
    if is_nonpositive_integer(b) {
        return Err(SpecFunError::Pole {
            what: "1F1 denominator parameter",
            value: b.re,
        });
    }
    if !(a.is_finite() && b.is_finite() && z.is_finite()) {
        return Err(SpecFunError::NonFinite("1F1 argument"));
    }
    if z.norm() <= ONE_F1_SPLIT {
        hyp1f1_series(a, b, z)
    } else {
        Ok(hyp1f1_asymptotic(a, b, z))
    }
}

fn hyp1f1_series(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64, SpecFunError> {
    let mut term = DdC::one();
    let mut sum = DdC::one();
    let mut max_abs = 1.0f64;
    for n in 0..MAX_SERIES_TERMS {
        let nf = n as f64;
        // term *= (a + n) z / ((b + n)(n + 1)); the division is realized as
        // multiplication by conj(b + n) over |b + n|^2, all parameter shifts
        // kept exact in dd
        term = term.mul_shifted(a, nf).mul_c64(z);
        term = term.mul_shifted(Complex64::new(b.re, -b.im), nf);
        let den = abs2_shifted(b, nf);
        term = term.div_dd(den).div_f64(nf + 1.0);
        sum = sum.add(term);
        let t = term.abs_hi();
        max_abs = max_abs.max(t);
        if t < 1e-33 * max_abs && nf > z.norm() {
            return Ok(sum.value());
        }
    }
    Err(SpecFunError::NoConvergence {
        what: "1F1 Taylor series",
        terms: MAX_SERIES_TERMS,
    })
}

/// Large-argument expansion (two descending series weighted by gamma factors):
/// `1F1(a;b;z)/Gamma(b) = e^{s i pi a} z^{-a}/Gamma(b-a) S1 + e^z z^{a-b}/Gamma(a) S2`
/// with `s = sign(Im z)` and
/// `S1 = sum (a)_n (a-b+1)_n / (n! (-z)^n)`, `S2 = sum (b-a)_n (1-a)_n / (n! z^n)`.
fn hyp1f1_asymptotic(a: Complex64, b: Complex64, z: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let descending = |p: Complex64, q: Complex64, x: Complex64| -> Complex64 {
        // sum_n (p)_n (q)_n / (n! x^n), truncated at the smallest term
        let mut term = one;
        let mut sum = one;
        let mut best = f64::INFINITY;
        for n in 0..40 {
            let nf = n as f64;
            term = term * (p + nf) * (q + nf) / ((nf + 1.0) * x);
            let t = term.norm();
            if t > best {
                break;
            }
            best = t;
            sum += term;
        }
        sum
    };
    let s = if z.im >= 0.0 { 1.0 } else { -1.0 };
    let i_pi_a = Complex64::new(0.0, s * std::f64::consts::PI) * a;
    let t1 = (i_pi_a - a * z.ln() + log_gamma(b) - log_gamma(b - a)).exp()
        * descending(a, a - b + one, -z);
    let t2 =
        (z + (a - b) * z.ln() + log_gamma(b) - log_gamma(a)).exp() * descending(b - a, one - a, z);
    t1 + t2
}

/// Whittaker function `M_{kappa,0}(z)` (second index fixed to zero):
/// `e^{-z/2} z^{1/2} 1F1(1/2 - kappa; 1; z)` on the principal branch.
pub fn whittaker_m(kappa: Complex64, z: Complex64) -> Result<Complex64, SpecFunError> {
    let half = Complex64::new(0.5, 0.0);
    let m = hyp1f1(half - kappa, Complex64::new(1.0, 0.0), z)?;
    Ok((-z * 0.5).exp() * z.sqrt() * m)
}

const TWO_F1_NEAR_UNIT: f64 = 0.9;

/// Gauss hypergeometric function `2F1(a, b; c; x)` for real parameters and
/// `0 <= x < 1`.
///
/// Direct series away from `x = 1`; near the endpoint the `c-a-b` linear
/// transformation is applied when `c-a-b` is not an integer, while for a
/// positive integer gap (absolutely convergent log case) the direct series is
/// summed with an extended term budget.
pub fn hyp2f1(a: f64, b: f64, c: f64, x: f64) -> Result<f64, SpecFunError> {
    if c <= 0.0 && c.fract() == 0.0 {
        return Err(SpecFunError::Pole {
            what: "2F1 denominator parameter",
            value: c,
        });
    }
    if !(0.0..1.0).contains(&x) {
        return Err(SpecFunError::NonFinite("2F1 argument outside [0,1)"));
    }
    if x <= TWO_F1_NEAR_UNIT {
        return hyp2f1_series(a, b, c, x);
    }
    let s = c - a - b;
    let s_round = s.round();
    if (s - s_round).abs() > 1e-9 {
        // linear transformation in powers of (1 - x); gamma factors are
        // combined in the complex log to keep signs at negative arguments
        let g = |w: f64| log_gamma(Complex64::new(w, 0.0));
        let t1 =
            (g(c) + g(s) - g(c - a) - g(c - b)).exp().re * hyp2f1_series(a, b, 1.0 - s, 1.0 - x)?;
        let t2 = (g(c) + g(-s) - g(a) - g(b)).exp().re
            * (1.0 - x).powf(s)
            * hyp2f1_series(c - a, c - b, 1.0 + s, 1.0 - x)?;
        return Ok(t1 + t2);
    }
    if s_round >= 1.0 {
        // integer gap >= 1: series still absolutely convergent (terms decay
        // like n^{-s-1}); sum directly with the extended budget
        return hyp2f1_series(a, b, c, x);
    }
    Err(SpecFunError::LogCaseNearUnit {
        gap: s_round as i64,
        x,
    })
}

fn hyp2f1_series(a: f64, b: f64, c: f64, x: f64) -> Result<f64, SpecFunError> {
    let mut term = 1.0f64;
    let mut sum = crate::numeric::series::KahanSum::new();
    sum.add(1.0);
    // budget scales with how close x is to 1 for the slowly convergent cases
    let budget = if x > 0.99 {
        4_000_000
    } else {
        MAX_SERIES_TERMS
    };
    for n in 0..budget {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        sum.add(term);
        if term.abs() < 1e-17 * (1.0 + sum.value().abs()) {
            return Ok(sum.value());
        }
    }
    Err(SpecFunError::NoConvergence {
        what: "2F1 Gauss series",
        terms: budget,
    })
}

/// `2F1(a, b; c; x)` with complex parameters, real `x` in `[0, 1)`.
///
/// Used by the closed-form regular solutions whose parameters carry the wave
/// number in the imaginary part.  Same policy as the real version: direct
/// series away from 1, linear `c-a-b` transformation near 1 (the gap is never
/// an integer for the parameter families used here).
pub fn hyp2f1_complex(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    x: f64,
) -> Result<Complex64, SpecFunError> {
    if is_nonpositive_integer(c) {
        return Err(SpecFunError::Pole {
            what: "2F1 denominator parameter",
            value: c.re,
        });
    }
    if !(0.0..1.0).contains(&x) {
        return Err(SpecFunError::NonFinite("2F1 argument outside [0,1)"));
    }
    if x <= TWO_F1_NEAR_UNIT {
        return hyp2f1_complex_series(a, b, c, x);
    }
    let one = Complex64::new(1.0, 0.0);
    let s = c - a - b;
    let lx = Complex64::new(1.0 - x, 0.0);
    let t1 = (log_gamma(c) + log_gamma(s) - log_gamma(c - a) - log_gamma(c - b)).exp()
        * hyp2f1_complex_series(a, b, one - s, 1.0 - x)?;
    let t2 = (log_gamma(c) + log_gamma(-s) - log_gamma(a) - log_gamma(b)).exp()
        * lx.powc(s)
        * hyp2f1_complex_series(c - a, c - b, one + s, 1.0 - x)?;
    Ok(t1 + t2)
}

fn hyp2f1_complex_series(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    x: f64,
) -> Result<Complex64, SpecFunError> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum_re = crate::numeric::series::KahanSum::new();
    let mut sum_im = crate::numeric::series::KahanSum::new();
    sum_re.add(1.0);
    for n in 0..MAX_SERIES_TERMS {
        let nf = n as f64;
        term = term * (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
        sum_re.add(term.re);
        sum_im.add(term.im);
        let s_abs = sum_re.value().hypot(sum_im.value());
        if term.norm() < 1e-16 * (1.0 + s_abs) {
            return Ok(Complex64::new(sum_re.value(), sum_im.value()));
        }
    }
    Err(SpecFunError::NoConvergence {
        what: "complex 2F1 series",
        terms: MAX_SERIES_TERMS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::bessel::bessel_j0;

    #[test]
    fn kummer_trivial_identities() {
        let a = Complex64::new(0.3, -1.1);
        let b = Complex64::new(1.0, 0.4);
        assert!((hyp1f1(a, b, Complex64::new(0.0, 0.0)).unwrap() - 1.0).norm() < 1e-15);
        // 1F1(b; b; z) = e^z
        let z = Complex64::new(1.2, -2.0);
        assert!((hyp1f1(b, b, z).unwrap() - z.exp()).norm() / z.exp().norm() < 1e-13);
    }

    #[test]
    fn kummer_transformation_residual() {
        // 1F1(a;b;z) = e^z 1F1(b-a;b;-z) on a grid |z| <= 10
        let a = Complex64::new(0.5, 0.8);
        let b = Complex64::new(1.0, 0.0);
        for &r in &[0.5, 3.0, 7.0, 10.0] {
            for m in 0..8 {
                let th = 0.25 * std::f64::consts::PI * m as f64 + 0.1;
                let z = Complex64::from_polar(r, th);
                let lhs = hyp1f1(a, b, z).unwrap();
                let rhs = z.exp() * hyp1f1(b - a, b, -z).unwrap();
                let rel = (lhs - rhs).norm() / lhs.norm().max(1e-30);
                assert!(rel < 1e-11, "z={z}: rel={rel:e}");
            }
        }
    }

    #[test]
    fn series_asymptotic_overlap() {
        // the two regimes must agree near |z| = 30 for oscillatory arguments
        let a = Complex64::new(0.5, 0.35);
        let b = Complex64::new(1.0, 0.0);
        for &w in &[28.0, 29.5, 30.0] {
            let z = Complex64::new(0.0, -w);
            let series = hyp1f1_series(a, b, z).unwrap();
            let asym = hyp1f1_asymptotic(a, b, z);
            let rel = (series - asym).norm() / series.norm();
            assert!(rel < 1e-9, "w={w}: rel={rel:e}");
        }
    }

    #[test]
    fn whittaker_reduces_to_bessel_at_zero_index() {
        // e^{i pi/4} (2k)^{-1/2} M_{0,0}(-2ikz) = sqrt(z) J0(kz)
        for &k in &[0.5, 1.0, 2.0, 5.0] {
            for &z in &[0.25, 1.0, 2.5, 5.0] {
                let arg = Complex64::new(0.0, -2.0 * k * z);
                let m = whittaker_m(Complex64::new(0.0, 0.0), arg).unwrap();
                let lhs =
                    Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4) / (2.0 * k).sqrt() * m;
                let rhs = z.sqrt() * bessel_j0(k * z);
                assert!(
                    (lhs.re - rhs).abs() < 1e-11 * (1.0 + rhs.abs()) && lhs.im.abs() < 1e-11,
                    "k={k}, z={z}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn whittaker_frobenius_normalization() {
        let kappa = Complex64::new(0.0, -0.8);
        let z = Complex64::new(1e-6, 0.0);
        let m = whittaker_m(kappa, z).unwrap();
        let ratio = m / z.sqrt();
        assert!((ratio - 1.0).norm() < 1e-5);
    }

    #[test]
    fn gauss_series_reference_values() {
        // 2F1(1,1;2;x) = -ln(1-x)/x
        let v = hyp2f1(1.0, 1.0, 2.0, 0.5).unwrap();
        assert!((v - 2.0 * std::f64::consts::LN_2).abs() < 1e-13);
        // direct 200-term oracle at x = 0.25 for the quarter-parameter case
        let (a, b, c, x) = (-0.5, -0.5, 1.0, 0.25);
        let mut term = 1.0;
        let mut oracle = 1.0;
        for n in 0..200 {
            let nf = n as f64;
            term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * x;
            oracle += term;
        }
        assert!((hyp2f1(a, b, c, x).unwrap() - oracle).abs() < 1e-14);
    }

    #[test]
    fn gauss_series_near_unit_log_case() {
        // c-a-b = 2: absolutely convergent up to x=1; value at 1 is
        // Gamma(1)Gamma(2)/Gamma(3/2)^2 = 4/pi.
        let v = hyp2f1(-0.5, -0.5, 1.0, 0.999999).unwrap();
        let at_one = 4.0 / std::f64::consts::PI;
        assert!((v - at_one).abs() < 1e-5);
        // monotone approach and series consistency at moderate x
        let v95 = hyp2f1(-0.5, -0.5, 1.0, 0.95).unwrap();
        let v95_direct = hyp2f1_series(-0.5, -0.5, 1.0, 0.95).unwrap();
        assert!((v95 - v95_direct).abs() < 1e-13);
    }

    #[test]
    fn gauss_linear_transformation_non_integer_gap() {
        // non-integer gap: transformation result must match the direct series
        // in the overlap region
        let (a, b, c) = (0.3, 0.7, 1.25);
        for &x in &[0.905, 0.95, 0.99] {
            let direct = hyp2f1_series(a, b, c, x).unwrap();
            let trans = hyp2f1(a, b, c, x).unwrap();
            assert!((direct - trans).abs() < 1e-11 * direct.abs(), "x={x}");
        }
    }

    #[test]
    fn complex_gauss_matches_real_on_real_parameters() {
        let c = |v: f64| Complex64::new(v, 0.0);
        for &x in &[0.2, 0.85, 0.97] {
            let zr = hyp2f1(0.3, 0.7, 1.25, x).unwrap();
            let zc = hyp2f1_complex(c(0.3), c(0.7), c(1.25), x).unwrap();
            assert!((zc.re - zr).abs() < 1e-11 && zc.im.abs() < 1e-13, "x={x}");
        }
    }
}
