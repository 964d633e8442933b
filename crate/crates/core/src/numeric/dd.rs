//! Minimal double-double ("compensated") arithmetic.
//!
//! A `Dd` value represents an unevaluated sum `hi + lo` of two `f64`s with
//! `|lo| <= ulp(hi)/2`, giving roughly 32 significant decimal digits.  It is
//! used internally for alternating power series whose largest term greatly
//! exceeds the final sum (Bessel and confluent-hypergeometric series at
//! moderate argument).  In plain `f64` such a series loses
//! `log10(max_term / |sum|)` digits to cancellation; carrying the partial sums
//! in double-double pushes the noise floor far below `1e-16` relative.
//!
//! Only the operations needed for series evaluation are provided.

use std::ops::{Add, Div, Mul, Neg};

/// Double-double number: value is `hi + lo`.
#[derive(Clone, Copy, Debug)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// Error-free sum of two `f64`s: returns `(s, e)` with `s = fl(a+b)` and
/// `a + b = s + e` exactly (Knuth two-sum).
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Error-free product via fused multiply-add: `a*b = p + e` exactly.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl Dd {
    #[inline]
    pub fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn zero() -> Self {
        Dd { hi: 0.0, lo: 0.0 }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.hi + self.lo
    }

    /// Renormalize a raw (hi, lo) pair.
    #[inline]
    fn renorm(hi: f64, lo: f64) -> Self {
        let (s, e) = two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn add_f64(self, x: f64) -> Self {
        let (s, e) = two_sum(self.hi, x);
        Dd::renorm(s, e + self.lo)
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Self {
        let (p, e) = two_prod(self.hi, x);
        Dd::renorm(p, e + self.lo * x)
    }

    /// Division by an `f64` (one Newton correction on the quotient).
    #[inline]
    pub fn div_f64(self, x: f64) -> Self {
        let q1 = self.hi / x;
        let (p, e) = two_prod(q1, x);
        let r = ((self.hi - p) - e + self.lo) / x;
        Dd::renorm(q1, r)
    }

    #[inline]
    pub fn abs_value(self) -> f64 {
        self.value().abs()
    }
}

impl Add for Dd {
    type Output = Dd;

    #[inline]
    fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        Dd::renorm(s, e)
    }
}

impl Mul for Dd {
    type Output = Dd;

    #[inline]
    fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        Dd::renorm(p, e)
    }
}

/// Full double-double division (two Newton corrections).
impl Div for Dd {
    type Output = Dd;

    #[inline]
    fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self + -other.mul_f64(q1);
        let q2 = (r.hi + r.lo) / other.hi;
        let r2 = r + -other.mul_f64(q2);
        let q3 = (r2.hi + r2.lo) / other.hi;
        Dd::renorm(q1, q2).add_f64(q3)
    }
}

impl Neg for Dd {
    type Output = Dd;

    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_of_cancelling_terms_keeps_precision() {
        // sum_{n} (-1)^n x^n / n! = exp(-x); at x = 20 the largest term is
        // ~ 4e7 while the sum is ~ 2e-9, far beyond f64 reach.
        let x = 20.0_f64;
        let mut term = Dd::from(1.0);
        let mut sum = Dd::from(1.0);
        for n in 1..200 {
            term = term.mul_f64(-x).div_f64(n as f64);
            sum = sum + term;
        }
        let exact = (-x).exp();
        let rel = (sum.value() - exact).abs() / exact;
        assert!(rel < 1e-13, "rel error {rel:e}");
    }

    #[test]
    fn division_round_trip() {
        let third = Dd::from(1.0) / Dd::from(3.0);
        let back = third.mul_f64(3.0);
        assert!((back.hi - 1.0).abs() < 1e-31 && back.lo.abs() < 1e-30);
        let q = Dd::from(355.0) / Dd::from(113.0);
        let r = (q * Dd::from(113.0)).add_f64(-355.0);
        assert!(r.abs_value() < 1e-28);
    }

    #[test]
    fn exact_product_splitting() {
        let a = 1.0 + 2f64.powi(-30);
        let b = 1.0 - 2f64.powi(-31);
        let (p, e) = two_prod(a, b);
        // reconstruct in higher precision via integers on the mantissa scale
        let exact = a * b; // fl(a*b)
        assert_eq!(p, exact);
        assert!(e.abs() <= f64::EPSILON * p.abs());
    }
}
