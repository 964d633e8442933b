//! Classical orthogonal polynomials by three-term recurrence.

/// Legendre polynomial `P_n(x)`.
pub fn legendre_p(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x,
        _ => {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            p1
        }
    }
}

/// Laguerre polynomial `L_n(x)`.
pub fn laguerre_l(n: usize, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => 1.0 - x,
        _ => {
            let mut l0 = 1.0;
            let mut l1 = 1.0 - x;
            for k in 1..n {
                let kf = k as f64;
                let l2 = ((2.0 * kf + 1.0 - x) * l1 - kf * l0) / (kf + 1.0);
                l0 = l1;
                l1 = l2;
            }
            l1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_exact_values() {
        // P4(x) = (35 x^4 - 30 x^2 + 3)/8
        assert!((legendre_p(4, 0.5) + 0.2890625).abs() < 1e-15);
        assert!((legendre_p(0, -0.3) - 1.0).abs() < 1e-15);
        assert!((legendre_p(1, -0.3) + 0.3).abs() < 1e-15);
        // P_n(1) = 1 for all n
        for n in 0..30 {
            assert!((legendre_p(n, 1.0) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn legendre_orthogonality() {
        use crate::numeric::quad::integrate;
        let (ip, _) = integrate(
            |x| legendre_p(5, x) * legendre_p(7, x),
            -1.0,
            1.0,
            1e-12,
            1e-14,
        )
        .unwrap();
        assert!(ip.abs() < 1e-12);
        let (nn, _) = integrate(
            |x| legendre_p(6, x) * legendre_p(6, x),
            -1.0,
            1.0,
            1e-12,
            1e-14,
        )
        .unwrap();
        assert!((nn - 2.0 / 13.0).abs() < 1e-12);
    }

    #[test]
    fn laguerre_exact_values() {
        // L3(x) = (-x^3 + 9 x^2 - 18 x + 6)/6
        assert!((laguerre_l(3, 1.5) + 0.6875).abs() < 1e-15);
        assert!((laguerre_l(0, 2.0) - 1.0).abs() < 1e-15);
        assert!((laguerre_l(1, 2.0) + 1.0).abs() < 1e-15);
        // L_n(0) = 1
        for n in 0..20 {
            assert!((laguerre_l(n, 0.0) - 1.0).abs() < 1e-13);
        }
    }
}
