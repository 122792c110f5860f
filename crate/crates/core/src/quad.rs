//! Quadrature rules.
//!
//! Two workhorses cover everything in this crate:
//!
//! * composite Simpson weights on uniform grids (with a 3/8 tail when the
//!   interval count is odd), used for norms, marginals, and 2D distribution
//!   integrals as a tensor product of 1D weight vectors;
//! * an 8-point Gauss–Legendre rule for short smooth panels, used when
//!   accumulating exponentially-weighted integrals of a pulse envelope one
//!   step at a time.

use crate::error::{Error, Result};
use crate::num::Real;
use num_traits::Zero;
use std::ops::{Add, Mul};

/// Values that can be accumulated by a real-weighted quadrature rule
/// (real samples and complex samples both qualify).
pub trait Integrand<S: Real>: Copy + Add<Output = Self> + Mul<S, Output = Self> + Zero {}

impl<S: Real, T> Integrand<S> for T where T: Copy + Add<Output = T> + Mul<S, Output = T> + Zero {}

/// Quadrature weights (including the spacing factor `h`) for a uniform grid
/// of `n` points.
///
/// * `n == 2`: trapezoid.
/// * even interval count: composite Simpson `h/3·[1,4,2,…,4,1]`.
/// * odd interval count `≥ 3`: Simpson on the leading even block, Newton's
///   3/8 rule on the trailing three intervals, so every panel keeps cubic
///   accuracy instead of degrading the whole rule to a trapezoid patch.
pub fn simpson_weights<S: Real>(n: usize, h: S) -> Result<Vec<S>> {
    if n < 2 {
        return Err(Error::InvalidGrid(format!("quadrature needs at least 2 points, got {n}")));
    }
    if !(h > S::zero()) {
        return Err(Error::InvalidGrid(format!("non-positive spacing {h}")));
    }
    let mut w = vec![S::zero(); n];
    let intervals = n - 1;
    if intervals == 1 {
        let half = h / S::lit(2.0);
        w[0] = half;
        w[1] = half;
        return Ok(w);
    }
    // Leading block handled by composite Simpson: all of it when the
    // interval count is even, everything but the last 3 intervals otherwise.
    let simpson_intervals = if intervals % 2 == 0 { intervals } else { intervals - 3 };
    let third = h / S::lit(3.0);
    if simpson_intervals > 0 {
        w[0] = w[0] + third;
        for i in 1..simpson_intervals {
            let c = if i % 2 == 1 { S::lit(4.0) } else { S::lit(2.0) };
            w[i] = w[i] + third * c;
        }
        w[simpson_intervals] = w[simpson_intervals] + third;
    }
    if intervals % 2 == 1 {
        let base = simpson_intervals;
        let eighth = h * S::lit(3.0 / 8.0);
        w[base] = w[base] + eighth;
        w[base + 1] = w[base + 1] + eighth * S::lit(3.0);
        w[base + 2] = w[base + 2] + eighth * S::lit(3.0);
        w[base + 3] = w[base + 3] + eighth;
    }
    Ok(w)
}

/// Integral of uniformly sampled values with spacing `h`.
pub fn simpson_uniform<S: Real, T: Integrand<S>>(values: &[T], h: S) -> Result<T> {
    let w = simpson_weights::<S>(values.len(), h)?;
    Ok(values
        .iter()
        .zip(w.iter())
        .fold(T::zero(), |acc, (&v, &wi)| acc + v * wi))
}

/// Abscissae of the 8-point Gauss–Legendre rule on [-1, 1] (positive half;
/// the rule is symmetric).
const GL8_NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329_0,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL8_WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362_0,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Nodes and weights of the 8-point Gauss–Legendre rule mapped to [a, b],
/// in ascending node order. All nodes are strictly interior, which makes the
/// rule safe on panels whose endpoints touch a discontinuity.
pub fn gauss_legendre_8_points<S: Real>(a: S, b: S) -> [(S, S); 8] {
    let half = (b - a) / S::lit(2.0);
    let mid = (a + b) / S::lit(2.0);
    let mut out = [(S::zero(), S::zero()); 8];
    for k in 0..4 {
        let x = S::lit(GL8_NODES[k]) * half;
        let w = S::lit(GL8_WEIGHTS[k]) * half;
        out[3 - k] = (mid - x, w);
        out[4 + k] = (mid + x, w);
    }
    out
}

/// 8-point Gauss–Legendre approximation of `∫_a^b f`.
///
/// Exact for polynomials of degree ≤ 15; on the short sub-step panels this
/// crate feeds it, the error is far below the time-stepper's own.
pub fn gauss_legendre_8<S: Real, T: Integrand<S>>(f: impl Fn(S) -> T, a: S, b: S) -> T {
    let half = (b - a) / S::lit(2.0);
    let mid = (a + b) / S::lit(2.0);
    let mut acc = T::zero();
    for k in 0..4 {
        let x = S::lit(GL8_NODES[k]) * half;
        let w = S::lit(GL8_WEIGHTS[k]);
        acc = acc + (f(mid + x) + f(mid - x)) * w;
    }
    acc * half
}
