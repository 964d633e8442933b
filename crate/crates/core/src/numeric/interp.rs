//! Monotone piecewise-cubic (Fritsch-Carlson) interpolation.
//!
//! Derivative estimates are weighted harmonic means of neighbouring secants
//! (zero across local extrema), with one-sided, monotonicity-clamped formulas
//! at the ends. The interpolant never overshoots the data, which makes it
//! safe for tabulated physical quantities. Only the slopes local to the
//! bracketing cell are formed, so an evaluation costs O(log n).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum InterpError {
    #[error("invalid table: {reason}")]
    BadTable { reason: String },
    #[error("x = {x} lies outside the table range")]
    OutOfRange { x: f64 },
}

/// Evaluate the monotone cubic interpolant of `(grid, values)` at `x`.
///
/// The grid must be strictly increasing (checked only locally here; callers
/// holding externally supplied tables should validate once up front) and `x`
/// must lie within its range.
pub fn pchip_eval(grid: &[f64], values: &[f64], x: f64) -> Result<f64, InterpError> {
    if grid.len() != values.len() {
        return Err(InterpError::BadTable {
            reason: format!(
                "grid length {} != values length {}",
                grid.len(),
                values.len()
            ),
        });
    }
    if grid.len() < 2 {
        return Err(InterpError::BadTable {
            reason: "table needs at least two points".to_string(),
        });
    }
    let m = grid.len() - 1;
    if !(x >= grid[0] && x <= grid[m]) {
        return Err(InterpError::OutOfRange { x });
    }
    // Bracketing cell [g_i, g_{i+1}].
    let i = grid
        .partition_point(|&g| g <= x)
        .saturating_sub(1)
        .min(m - 1);

    let h = |j: usize| grid[j + 1] - grid[j];
    let secant = |j: usize| (values[j + 1] - values[j]) / h(j);
    // Interior derivative at grid point j (0 < j < m).
    let interior = |j: usize| -> f64 {
        let (s0, s1) = (secant(j - 1), secant(j));
        if s0 * s1 <= 0.0 {
            0.0
        } else {
            let w1 = 2.0 * h(j) + h(j - 1);
            let w2 = h(j) + 2.0 * h(j - 1);
            (w1 + w2) / (w1 / s0 + w2 / s1)
        }
    };
    // One-sided derivative at an endpoint, from the two nearest secants.
    let edge = |h0: f64, h1: f64, s0: f64, s1: f64| -> f64 {
        let d = ((2.0 * h0 + h1) * s0 - h0 * s1) / (h0 + h1);
        if d * s0 <= 0.0 {
            0.0
        } else if s0 * s1 < 0.0 && d.abs() > 3.0 * s0.abs() {
            3.0 * s0
        } else {
            d
        }
    };
    let deriv = |j: usize| -> f64 {
        if j == 0 {
            edge(h(0), h(1), secant(0), secant(1))
        } else if j == m {
            edge(h(m - 1), h(m - 2), secant(m - 1), secant(m - 2))
        } else {
            interior(j)
        }
    };

    let (d0, d1) = (deriv(i), deriv(i + 1));
    let hc = h(i);
    let t = (x - grid[i]) / hc;
    let t2 = t * t;
    let t3 = t2 * t;
    Ok((2.0 * t3 - 3.0 * t2 + 1.0) * values[i]
        + (t3 - 2.0 * t2 + t) * hc * d0
        + (-2.0 * t3 + 3.0 * t2) * values[i + 1]
        + (t3 - t2) * hc * d1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_linear_data_exactly() {
        let grid = [0.0, 0.5, 1.25, 2.0];
        let values: Vec<f64> = grid.iter().map(|&x| 3.0 * x - 1.0).collect();
        for &x in &[0.0, 0.3, 0.9, 1.7, 2.0] {
            let y = pchip_eval(&grid, &values, x).unwrap();
            assert!((y - (3.0 * x - 1.0)).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            pchip_eval(&[0.0, 1.0], &[1.0], 0.5),
            Err(InterpError::BadTable { .. })
        ));
        assert!(matches!(
            pchip_eval(&[0.0, 1.0], &[1.0, 2.0], 1.5),
            Err(InterpError::OutOfRange { .. })
        ));
    }
}
