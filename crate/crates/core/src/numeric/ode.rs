//! Adaptive explicit Runge-Kutta integration (Dormand-Prince 5(4) pair).
//!
//! The driver lands exactly on every requested output abscissa by capping the
//! step, so captured samples carry full integration accuracy rather than
//! interpolation error.

#[derive(Debug, Clone, thiserror::Error)]
pub enum OdeError {
    #[error("step size underflow at t = {0:.6e}")]
    StepUnderflow(f64),
    #[error("step budget exhausted after {0} steps")]
    TooManySteps(usize),
    #[error("non-finite state encountered at t = {0:.6e}")]
    NonFinite(f64),
}

#[derive(Debug, Clone)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Initial trial step; a conservative default is chosen when zero.
    pub h_init: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rel_tol: 1e-11,
            abs_tol: 1e-13,
            h_init: 0.0,
            max_steps: 2_000_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OdeSolution {
    /// Requested output abscissae (in integration order).
    pub t_samples: Vec<f64>,
    /// State at each output abscissa.
    pub y_samples: Vec<Vec<f64>>,
    /// State at the end of the range.
    pub y_end: Vec<f64>,
    pub steps: usize,
    pub rejected: usize,
}

// Dormand-Prince coefficients.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// Fifth-order solution weights (identical to the last A row: FSAL pair).
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
// Embedded fourth-order weights.
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrate `y' = f(t, y)` from `t0` to `t_end` (monotone direction either
/// way), capturing the state at each abscissa in `outputs`.
///
/// `outputs` must be sorted in the direction of integration and lie within
/// `[t0, t_end]`; values equal to `t0` or `t_end` are honored.
pub fn integrate_ode<F>(
    mut f: F,
    t0: f64,
    y0: &[f64],
    t_end: f64,
    outputs: &[f64],
    opts: &OdeOptions,
) -> Result<OdeSolution, OdeError>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let dim = y0.len();
    let dir = if t_end >= t0 { 1.0 } else { -1.0 };
    let span = (t_end - t0).abs();
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut k = vec![vec![0.0; dim]; 7];
    let mut y_stage = vec![0.0; dim];
    let mut y5 = vec![0.0; dim];

    let mut h = if opts.h_init > 0.0 {
        opts.h_init
    } else {
        (span * 1e-4).max(1e-10)
    };
    h = h.min(span);

    let mut sol = OdeSolution {
        t_samples: Vec::with_capacity(outputs.len()),
        y_samples: Vec::with_capacity(outputs.len()),
        y_end: Vec::new(),
        steps: 0,
        rejected: 0,
    };
    let mut next_out = 0usize;
    // emit any output coinciding with the start
    while next_out < outputs.len() && (outputs[next_out] - t) * dir <= span * 1e-16 {
        sol.t_samples.push(outputs[next_out]);
        sol.y_samples.push(y.clone());
        next_out += 1;
    }

    f(t, &y, &mut k[0]);
    let mut have_k0 = true;

    while (t_end - t) * dir > 0.0 {
        if sol.steps + sol.rejected > opts.max_steps {
            return Err(OdeError::TooManySteps(sol.steps + sol.rejected));
        }
        if !have_k0 {
            f(t, &y, &mut k[0]);
            have_k0 = true;
        }
        // cap the step to land on the next output point / the end
        let mut h_eff = h.min((t_end - t) * dir);
        if next_out < outputs.len() {
            let to_out = (outputs[next_out] - t) * dir;
            if to_out > 0.0 {
                h_eff = h_eff.min(to_out);
            }
        }
        let hs = h_eff * dir;
        if h_eff < 1e-14 * (1.0 + t.abs()) {
            return Err(OdeError::StepUnderflow(t));
        }

        for s in 1..7 {
            for i in 0..dim {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s) {
                    acc += A[s][j] * kj[i];
                }
                y_stage[i] = y[i] + hs * acc;
            }
            let ts = t + C[s] * hs;
            let (head, tail) = k.split_at_mut(s);
            let _ = head;
            f(ts, &y_stage, &mut tail[0]);
        }
        let mut err_norm = 0.0f64;
        for i in 0..dim {
            let mut acc5 = 0.0;
            let mut acce = 0.0;
            for (s, ks) in k.iter().enumerate() {
                acc5 += B5[s] * ks[i];
                acce += (B5[s] - B4[s]) * ks[i];
            }
            y5[i] = y[i] + hs * acc5;
            let scale = opts.abs_tol + opts.rel_tol * y[i].abs().max(y5[i].abs());
            let e = hs * acce / scale;
            err_norm += e * e;
        }
        err_norm = (err_norm / dim as f64).sqrt();
        if !err_norm.is_finite() {
            return Err(OdeError::NonFinite(t));
        }

        if err_norm <= 1.0 {
            t += hs;
            y.copy_from_slice(&y5);
            sol.steps += 1;
            // FSAL: stage 7 is f at the accepted point
            let (head, tail) = k.split_at_mut(6);
            head[0].copy_from_slice(&tail[0]);
            // capture outputs reached by this step
            while next_out < outputs.len() && (outputs[next_out] - t) * dir <= span * 1e-16 {
                sol.t_samples.push(outputs[next_out]);
                sol.y_samples.push(y.clone());
                next_out += 1;
            }
        } else {
            sol.rejected += 1;
            have_k0 = true; // k[0] still valid at unchanged (t, y)
        }
        let factor = if err_norm == 0.0 {
            5.0
        } else {
            (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
        };
        h = (h_eff * factor).max(1e-15);
    }
    sol.y_end = y;
    Ok(sol)
}
