//! Uniform evaluation grids for time and frequency axes.

use crate::error::{Error, Result};
use crate::num::Real;

/// Uniform 1D grid with inclusive endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D<S: Real> {
    lo: S,
    hi: S,
    n: usize,
}

impl<S: Real> Grid1D<S> {
    /// Build a grid of `n ≥ 2` points spanning `[lo, hi]`.
    pub fn new(lo: S, hi: S, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {n}")));
        }
        if !(hi > lo) {
            return Err(Error::InvalidGrid(format!("empty span [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi, n })
    }

    pub fn lo(&self) -> S {
        self.lo
    }

    pub fn hi(&self) -> S {
        self.hi
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid spacing `(hi − lo)/(n − 1)`.
    pub fn spacing(&self) -> S {
        (self.hi - self.lo) / S::from_usize(self.n - 1).unwrap()
    }

    /// `i`-th point; endpoints are reproduced exactly.
    pub fn at(&self, i: usize) -> S {
        debug_assert!(i < self.n);
        if i == 0 {
            self.lo
        } else if i == self.n - 1 {
            self.hi
        } else {
            self.lo + self.spacing() * S::from_usize(i).unwrap()
        }
    }

    pub fn points(&self) -> impl Iterator<Item = S> + '_ {
        (0..self.n).map(move |i| self.at(i))
    }

    /// Index of the grid point closest to `x`.
    pub fn nearest(&self, x: S) -> usize {
        let t = (x - self.lo) / self.spacing();
        let i = t.round().to_f64().unwrap_or(0.0).max(0.0) as usize;
        i.min(self.n - 1)
    }

    /// Symmetric grid `[-half_width, half_width]` about zero.
    pub fn symmetric(half_width: S, n: usize) -> Result<Self> {
        Self::new(-half_width, half_width, n)
    }
}

/// Cartesian product of two 1D grids; the first axis varies slowest in any
/// row-major value storage built on top of it.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D<S: Real> {
    pub x: Grid1D<S>,
    pub y: Grid1D<S>,
}

impl<S: Real> Grid2D<S> {
    pub fn new(x: Grid1D<S>, y: Grid1D<S>) -> Self {
        Self { x, y }
    }

    /// Same grid on both axes.
    pub fn square(axis: Grid1D<S>) -> Self {
        Self { x: axis.clone(), y: axis }
    }

    pub fn len(&self) -> usize {
        self.x.len() * self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True when both axes are identical, which several two-photon symmetry
    /// guarantees rely on.
    pub fn is_symmetric(&self) -> bool {
        self.x == self.y
    }

    /// Flat index of `(ix, iy)` in row-major storage.
    pub fn index(&self, ix: usize, iy: usize) -> usize {
        debug_assert!(ix < self.x.len() && iy < self.y.len());
        ix * self.y.len() + iy
    }
}
