//! Fixed-step 4th-order Runge–Kutta integration, segment-aligned to input
//! discontinuities.
//!
//! The right-hand sides integrated in this crate are non-stiff (all decay
//! rates are ~γ) but driven by pulses with jump discontinuities (square
//! edges, the exponential-rising cutoff). A fixed-step scheme keeps full
//! 4th order *only* if no step straddles a jump, so the integration window
//! is split into segments at the supplied breakpoints and the step size is
//! rounded down per segment to land each boundary exactly. The RHS receives
//! a `hint` time strictly inside the current segment; pulse evaluation with
//! [`crate::pulse::Pulse::piece_value`] then picks the correct one-sided
//! branch even when a Runge–Kutta stage lands exactly on a jump.

use crate::error::{Error, Result};
use crate::num::{Cplx, Real};

/// Right-hand side of dy/dt = f(t, y): writes the derivative into `out`.
/// `hint` is a time strictly inside the smooth segment being integrated.
pub trait Rhs<S: Real> {
    fn eval(&mut self, t: S, y: &[Cplx<S>], hint: S, out: &mut [Cplx<S>]);
}

impl<S: Real, F> Rhs<S> for F
where
    F: FnMut(S, &[Cplx<S>], S, &mut [Cplx<S>]),
{
    fn eval(&mut self, t: S, y: &[Cplx<S>], hint: S, out: &mut [Cplx<S>]) {
        self(t, y, hint, out)
    }
}

/// Integrate from `t_start` to `t_end` with nominal step `dt`, splitting at
/// `breakpoints`. `observe` is called with the accepted state at `t_start`
/// and after every step; returning an error aborts the run (used by callers
/// to reject a step size that lets the solution leave its physical bounds).
///
/// Returns the final state.
pub fn integrate_segmented<S: Real>(
    y0: &[Cplx<S>],
    t_start: S,
    t_end: S,
    dt: S,
    breakpoints: &[S],
    mut rhs: impl Rhs<S>,
    mut observe: impl FnMut(S, &[Cplx<S>]) -> Result<()>,
) -> Result<Vec<Cplx<S>>> {
    if !(dt > S::zero()) || !dt.is_finite() {
        return Err(Error::InvalidParameter(format!("step size must be positive, got {dt}")));
    }
    if !(t_end > t_start) {
        return Err(Error::InvalidParameter(format!(
            "empty integration window [{t_start}, {t_end}]"
        )));
    }
    // Segment boundaries: window ends plus interior breakpoints, deduplicated.
    let mut bounds: Vec<S> = vec![t_start];
    let mut cuts: Vec<S> = breakpoints
        .iter()
        .copied()
        .filter(|&b| b > t_start && b < t_end)
        .collect();
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    let min_seg = dt * S::lit(1e-9);
    for b in cuts {
        if b - *bounds.last().unwrap() > min_seg {
            bounds.push(b);
        }
    }
    if t_end - *bounds.last().unwrap() > min_seg {
        bounds.push(t_end);
    } else {
        *bounds.last_mut().unwrap() = t_end;
    }

    let dim = y0.len();
    let mut y = y0.to_vec();
    let mut k1 = vec![Cplx::new(S::zero(), S::zero()); dim];
    let mut k2 = k1.clone();
    let mut k3 = k1.clone();
    let mut k4 = k1.clone();
    let mut stage = k1.clone();

    observe(t_start, &y)?;
    let half = S::lit(0.5);
    let sixth = S::lit(1.0 / 6.0);
    let two = S::lit(2.0);

    for seg in bounds.windows(2) {
        let (a, b) = (seg[0], seg[1]);
        let span = b - a;
        let n_steps = (span / dt).ceil().to_f64().unwrap_or(1.0).max(1.0) as usize;
        let h = span / S::from_usize(n_steps).unwrap();
        let hint = (a + b) * half;
        for step in 0..n_steps {
            let t = a + h * S::from_usize(step).unwrap();
            // Land the segment end exactly regardless of rounding.
            let t_next = if step + 1 == n_steps { b } else { t + h };

            rhs.eval(t, &y, hint, &mut k1);
            for i in 0..dim {
                stage[i] = y[i] + k1[i] * (h * half);
            }
            rhs.eval(t + h * half, &stage, hint, &mut k2);
            for i in 0..dim {
                stage[i] = y[i] + k2[i] * (h * half);
            }
            rhs.eval(t + h * half, &stage, hint, &mut k3);
            for i in 0..dim {
                stage[i] = y[i] + k3[i] * h;
            }
            rhs.eval(t + h, &stage, hint, &mut k4);
            for i in 0..dim {
                y[i] = y[i] + (k1[i] + (k2[i] + k3[i]) * two + k4[i]) * (h * sixth);
            }
            observe(t_next, &y)?;
        }
    }
    Ok(y)
}
