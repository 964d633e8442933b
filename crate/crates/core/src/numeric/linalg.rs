//! Small dense linear algebra: Gaussian elimination with partial pivoting and
//! linear least squares via normal equations.  Only intended for tiny systems
//! (fitting 2-4 coefficients, re-deriving 6x6 coefficient tables), where
//! partial pivoting in `f64` is ample.

#[derive(Debug, Clone, thiserror::Error)]
pub enum LinalgError {
    #[error("singular matrix (pivot {0:.3e} below threshold)")]
    Singular(f64),
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

/// Solve `A x = b` in place for a dense row-major `n x n` matrix.
pub fn solve(a: &mut [Vec<f64>], b: &mut [f64]) -> Result<Vec<f64>, LinalgError> {
    let n = b.len();
    if a.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(LinalgError::Shape(format!("matrix is not {n}x{n}")));
    }
    for col in 0..n {
        // partial pivot
        let mut piv = col;
        let mut best = a[col][col].abs();
        for (row, r) in a.iter().enumerate().skip(col + 1) {
            let v = r[col].abs();
            if v > best {
                best = v;
                piv = row;
            }
        }
        if best < 1e-300 {
            return Err(LinalgError::Singular(best));
        }
        if piv != col {
            a.swap(col, piv);
            b.swap(col, piv);
        }
        let (upper, lower) = a.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        let d = pivot_row[col];
        let b_col = b[col];
        for (row, b_row) in lower.iter_mut().zip(&mut b[col + 1..]) {
            let m = row[col] / d;
            if m != 0.0 {
                for (x, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= m * p;
                }
                *b_row -= m * b_col;
            }
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Ok(x)
}

/// Least-squares fit of coefficients `c` minimizing `|| B c - y ||_2`, where
/// `B[i][j] = basis[j](x_i)` is supplied column-wise as `cols`.
/// Returns `(c, rms_residual)`.
pub fn lsq_fit(cols: &[Vec<f64>], y: &[f64]) -> Result<(Vec<f64>, f64), LinalgError> {
    let m = y.len();
    let n = cols.len();
    if n == 0 || cols.iter().any(|c| c.len() != m) {
        return Err(LinalgError::Shape(
            "basis columns must match sample count".into(),
        ));
    }
    let mut ata = vec![vec![0.0; n]; n];
    let mut aty = vec![0.0; n];
    for i in 0..n {
        for j in i..n {
            let s: f64 = cols[i].iter().zip(&cols[j]).map(|(u, v)| u * v).sum();
            ata[i][j] = s;
            ata[j][i] = s;
        }
        aty[i] = cols[i].iter().zip(y).map(|(u, v)| u * v).sum();
    }
    let c = solve(&mut ata, &mut aty)?;
    let mut ss = 0.0;
    for r in 0..m {
        let mut fit = 0.0;
        for j in 0..n {
            fit += c[j] * cols[j][r];
        }
        ss += (y[r] - fit) * (y[r] - fit);
    }
    Ok((c, (ss / m as f64).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let mut a = vec![
            vec![2.0, 1.0, -1.0],
            vec![-3.0, -1.0, 2.0],
            vec![-2.0, 1.0, 2.0],
        ];
        let mut b = vec![8.0, -11.0, -3.0];
        let x = solve(&mut a, &mut b).unwrap();
        assert!((x[0] - 2.0).abs() < 1e-12);
        assert!((x[1] - 3.0).abs() < 1e-12);
        assert!((x[2] - -1.0).abs() < 1e-12);
    }

    #[test]
    fn lsq_recovers_exact_polynomial() {
        let xs: Vec<f64> = (0..40).map(|i| 0.1 * i as f64).collect();
        let y: Vec<f64> = xs.iter().map(|&x| 3.0 - 2.0 * x + 0.5 * x * x).collect();
        let cols = vec![
            xs.iter().map(|_| 1.0).collect::<Vec<_>>(),
            xs.clone(),
            xs.iter().map(|&x| x * x).collect::<Vec<_>>(),
        ];
        let (c, r) = lsq_fit(&cols, &y).unwrap();
        assert!(r < 1e-12);
        assert!((c[0] - 3.0).abs() < 1e-10);
        assert!((c[1] + 2.0).abs() < 1e-10);
        assert!((c[2] - 0.5).abs() < 1e-10);
    }
}
