//! Richardson extrapolation to zero step size via Neville's tableau.

/// Polynomial extrapolation of the samples `(h_j, y_j)` to `h = 0`.
///
/// Returns `(value, error_estimate)` where the error estimate is the change
/// produced by the final tableau column.  The `h_j` must be distinct and
/// nonzero; convergence is best when they decrease geometrically.  For data
/// with an even error expansion, pass `h*h` as the abscissa.
pub fn richardson_extrapolate(h: &[f64], y: &[f64]) -> (f64, f64) {
    assert_eq!(h.len(), y.len());
    assert!(h.len() >= 2, "need at least two samples to extrapolate");
    let n = h.len();
    let mut tab = y.to_vec();
    let mut best = tab[n - 1];
    let mut err = f64::INFINITY;
    for level in 1..n {
        for j in (level..n).rev() {
            // Neville update: eliminate one power of h between rows j-1, j
            let denom = h[j - level] - h[j];
            tab[j] = tab[j] + (tab[j] - tab[j - 1]) * h[j] / denom;
        }
        let delta = (tab[n - 1] - best).abs();
        if delta < err {
            err = delta;
            best = tab[n - 1];
        } else {
            // noise floor reached: stop before divergence amplifies rounding
            break;
        }
    }
    (best, err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_limit_of_smooth_sequence() {
        // y(h) = exp(h) sampled at h = 2^-j; limit 1 at h = 0.
        let h: Vec<f64> = (0..8).map(|j| 0.5_f64.powi(j)).collect();
        let y: Vec<f64> = h.iter().map(|&t| t.exp()).collect();
        let (v, e) = richardson_extrapolate(&h, &y);
        assert!((v - 1.0).abs() < 1e-10, "v={v}, e={e}");
        assert!(e < 1e-8);
    }

    #[test]
    fn even_expansion_in_h_squared() {
        // central difference derivative of sin at 1: error expansion in h^2
        let f = |x: f64| x.sin();
        let hs: Vec<f64> = (0..5).map(|j| 0.4 * 0.5_f64.powi(j)).collect();
        let y: Vec<f64> = hs
            .iter()
            .map(|&h| (f(1.0 + h) - f(1.0 - h)) / (2.0 * h))
            .collect();
        let h2: Vec<f64> = hs.iter().map(|&h| h * h).collect();
        let (v, _) = richardson_extrapolate(&h2, &y);
        assert!((v - 1.0_f64.cos()).abs() < 1e-12);
    }
}
