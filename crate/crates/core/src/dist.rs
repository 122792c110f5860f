//! Discretized joint densities of the two outgoing photons.

use crate::error::{Error, Result};
use crate::grid::Grid2D;
use crate::num::Real;
use crate::quad::simpson_weights;

/// Which pair of conjugate variables a 2D density lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// Detection positions (τ₁, τ₂) measured from each pulse wavefront.
    Time,
    /// Detuned frequencies (ω₁ − ω₀, ω₂ − ω₀).
    Frequency,
}

impl std::fmt::Display for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Domain::Time => "time",
            Domain::Frequency => "frequency",
        })
    }
}

/// A nonnegative density over a 2D grid, together with its integral.
///
/// For coincidence-sector densities evaluated after the atom has fully
/// decayed, the integral equals the coincidence probability; it is stored as
/// `normalization` so post-selected (normalized) views don't need to
/// re-integrate.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution2D<S: Real> {
    grid: Grid2D<S>,
    /// Row-major values: index `ix * ny + iy`.
    values: Vec<S>,
    domain: Domain,
    normalization: S,
}

impl<S: Real> JointDistribution2D<S> {
    /// Wrap precomputed values; the integral is evaluated once by composite
    /// Simpson over both axes.
    pub fn new(grid: Grid2D<S>, values: Vec<S>, domain: Domain) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "value count {} does not match grid size {}",
                values.len(),
                grid.len()
            )));
        }
        let tiny = -S::lit(1e-12);
        if values.iter().any(|v| !v.is_finite() || *v < tiny) {
            return Err(Error::InvalidGrid("density values must be finite and nonnegative".into()));
        }
        let mut d = Self { grid, values, domain, normalization: S::zero() };
        d.normalization = d.integral()?;
        Ok(d)
    }

    /// Fill a density by evaluating `f` at every grid node.
    pub fn from_fn(grid: Grid2D<S>, domain: Domain, f: impl Fn(S, S) -> S) -> Result<Self> {
        let (nx, ny) = (grid.x.len(), grid.y.len());
        let mut values = vec![S::zero(); nx * ny];
        for ix in 0..nx {
            let x = grid.x.at(ix);
            for iy in 0..ny {
                values[ix * ny + iy] = f(x, grid.y.at(iy));
            }
        }
        Self::new(grid, values, domain)
    }

    pub fn grid(&self) -> &Grid2D<S> {
        &self.grid
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Integral of the density over the grid (cached at construction).
    pub fn normalization(&self) -> S {
        self.normalization
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn value_at(&self, ix: usize, iy: usize) -> S {
        self.values[self.grid.index(ix, iy)]
    }

    pub fn max_value(&self) -> S {
        self.values.iter().fold(S::zero(), |m, &v| m.max(v))
    }

    /// Composite-Simpson integral over both axes (tensor-product weights).
    pub fn integral(&self) -> Result<S> {
        let wx = simpson_weights::<S>(self.grid.x.len(), self.grid.x.spacing())?;
        let wy = simpson_weights::<S>(self.grid.y.len(), self.grid.y.spacing())?;
        let ny = self.grid.y.len();
        let mut total = S::zero();
        for (ix, &wxi) in wx.iter().enumerate() {
            let row = &self.values[ix * ny..(ix + 1) * ny];
            let mut acc = S::zero();
            for (v, &wyj) in row.iter().zip(wy.iter()) {
                acc += *v * wyj;
            }
            total += wxi * acc;
        }
        Ok(total)
    }

    /// Largest asymmetry |S(x,y) − S(y,x)| over the grid. Only meaningful on
    /// symmetric grids (both axes identical); exchange symmetry of the two
    /// photons makes this zero up to floating-point noise.
    pub fn max_exchange_asymmetry(&self) -> Result<S> {
        if !self.grid.is_symmetric() {
            return Err(Error::InvalidGrid(
                "exchange asymmetry needs identical x and y axes".into(),
            ));
        }
        let n = self.grid.x.len();
        let mut worst = S::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                let d = (self.values[i * n + j] - self.values[j * n + i]).abs();
                worst = worst.max(d);
            }
        }
        Ok(worst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid1D;

    #[test]
    fn integral_of_separable_density() {
        // ∫∫ x²y² over [0,1]² = 1/9.
        let axis = Grid1D::<f64>::new(0.0, 1.0, 41).unwrap();
        let d = JointDistribution2D::from_fn(Grid2D::square(axis), Domain::Time, |x, y| {
            x * x * y * y
        })
        .unwrap();
        assert!((d.normalization() - 1.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_negative_values() {
        let axis = Grid1D::new(0.0, 1.0, 3).unwrap();
        let grid = Grid2D::square(axis);
        let mut vals = vec![0.0; grid.len()];
        vals[4] = -0.5;
        assert!(JointDistribution2D::new(grid, vals, Domain::Time).is_err());
    }

    #[test]
    fn exchange_asymmetry_detects_bias() {
        let axis = Grid1D::<f64>::new(0.0, 1.0, 5).unwrap();
        let sym = JointDistribution2D::from_fn(Grid2D::square(axis.clone()), Domain::Time, |x, y| {
            (x + y).powi(2)
        })
        .unwrap();
        assert_eq!(sym.max_exchange_asymmetry().unwrap(), 0.0);
        let skew =
            JointDistribution2D::from_fn(Grid2D::square(axis), Domain::Time, |x, y| x + 2.0 * y)
                .unwrap();
        assert!(skew.max_exchange_asymmetry().unwrap() > 0.9);
    }
}
