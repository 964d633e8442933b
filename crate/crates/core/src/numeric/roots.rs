//! Scalar root finding: bracketing Brent iteration and a safeguarded Newton.

/// Errors from the root finders.
#[derive(Debug, Clone, thiserror::Error)]
pub enum RootError {
    #[error("root not bracketed: f({a:.6e}) = {fa:.6e}, f({b:.6e}) = {fb:.6e}")]
    NotBracketed { a: f64, b: f64, fa: f64, fb: f64 },
    #[error("root finder failed to converge within {0} iterations")]
    NoConvergence(usize),
}

/// Brent's method on a bracket `[a, b]` with `f(a) f(b) <= 0`.
///
/// Returns `x` with either `|f(x)| = 0` or a final bracket width below
/// `xtol + 4 eps |x|`.
pub fn brent<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    xtol: f64,
    max_iter: usize,
) -> Result<f64, RootError> {
    let (mut a, mut b) = (a, b);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(RootError::NotBracketed { a, b, fa, fb });
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = b - a;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic / secant step
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b += d;
        } else {
            b += tol1.copysign(xm);
        }
        fb = f(b);
    }
    Err(RootError::NoConvergence(max_iter))
}

/// Newton iteration started at `x0`, falling back on bisection of `[lo, hi]`
/// whenever a step leaves the bracket.  `f` returns `(value, derivative)`.
pub fn newton_bracketed<F: FnMut(f64) -> (f64, f64)>(
    mut f: F,
    x0: f64,
    lo: f64,
    hi: f64,
    xtol: f64,
    max_iter: usize,
) -> Result<f64, RootError> {
    let mut x = x0.clamp(lo, hi);
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..max_iter {
        let (v, dv) = f(x);
        if v == 0.0 {
            return Ok(x);
        }
        // Maintain the bracket using the sign of v relative to the lo end.
        let step = if dv != 0.0 { v / dv } else { f64::INFINITY };
        let mut xn = x - step;
        if !(xn > lo && xn < hi) || !xn.is_finite() {
            // bisect using the current sign information
            let (flo, _) = f(lo);
            if flo.signum() == v.signum() {
                lo = x;
            } else {
                hi = x;
            }
            xn = 0.5 * (lo + hi);
        } else if step.abs() <= xtol {
            return Ok(xn);
        }
        if (xn - x).abs() <= xtol {
            return Ok(xn);
        }
        x = xn;
    }
    Err(RootError::NoConvergence(max_iter))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cosine_zero() {
        let r = brent(|x| x.cos(), 1.0, 2.0, 1e-15, 100).unwrap();
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn brent_rejects_unbracketed() {
        assert!(brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 100).is_err());
    }

    #[test]
    fn newton_with_bracket_guard() {
        // f(x) = x^3 - 2x - 5, classic root near 2.0945514815423265
        let r = newton_bracketed(
            |x| (x * x * x - 2.0 * x - 5.0, 3.0 * x * x - 2.0),
            2.0,
            1.0,
            3.0,
            1e-14,
            60,
        )
        .unwrap();
        assert!((r - 2.0945514815423265).abs() < 1e-12);
    }
}
