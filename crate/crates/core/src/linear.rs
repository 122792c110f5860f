//! The linear frequency-dependent beamsplitter benchmark.
//!
//! A hypothetical device that applies the atom's *single-photon* scattering
//! matrix to each photon independently — what the atom would do if it could
//! absorb any number of photons at once. Comparing it with the full engines
//! isolates the effect of atomic saturation (the photon–photon
//! nonlinearity).
//!
//! In the detuned variable x = (ω − ω_A)/γ the single-photon amplitudes are
//!
//! ```text
//!     r(x) = −i/(x + i) ,      t(x) = x/(x + i) = 1 + r(x) ,
//! ```
//!
//! a Lorentzian reflection line of unit height and width γ. |r|² + |t|² = 1
//! (no loss), and t·r* is odd in x, which kills the interference cross term
//! for any spectrally symmetric resonant pulse.

use crate::dist::{Domain, JointDistribution2D};
use crate::error::{Error, Result};
use crate::grid::{Grid1D, Grid2D};
use crate::num::{im, Cplx, Real};
use crate::pulse::Pulse;
use crate::quad::simpson_weights;

/// Reflection/transmission pair at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinglePhotonResponse<S: Real> {
    pub reflection: Cplx<S>,
    pub transmission: Cplx<S>,
}

impl<S: Real> SinglePhotonResponse<S> {
    /// Evaluate at normalized detuned frequency x = (ω − ω_A)/γ.
    pub fn at(x: S) -> Self {
        let denom = Cplx::new(x, S::one()).inv();
        let reflection = -im::<S>() * denom;
        let transmission = denom * x;
        Self { reflection, transmission }
    }
}

/// Shorthand for the reflection amplitude r(x).
pub fn reflection_amplitude<S: Real>(x: S) -> Cplx<S> {
    SinglePhotonResponse::at(x).reflection
}

/// Default frequency grid for the 1D quadratures: wide enough that the
/// 1/ν⁴ tails of |f·r|² contribute < 10⁻⁶, fine enough to resolve both the
/// atomic line (width γ) and the pulse's spectral oscillations (period ~πΩ
/// for the square family).
fn default_axis<S: Real>(bandwidth: S, gamma: S) -> Grid1D<S> {
    let hw = S::lit(60.0) * bandwidth.max(gamma);
    let spacing = bandwidth.min(gamma) / S::lit(30.0);
    let half_n = (hw / spacing).ceil().to_f64().unwrap_or(0.0) as usize;
    let n = 2 * half_n.max(64) + 1;
    Grid1D::symmetric(hw, n).expect("positive half-width")
}

/// Weighted spectral moments ℛ = ∫|f r|²dν and J = ∫|f|² t r* dν on a grid
/// in ν = ω − ω₀ (so the atomic variable is x = (ν + Δ)/γ).
fn spectral_moments<S: Real>(
    pulse: &Pulse<S>,
    detuning: S,
    gamma: S,
) -> Result<(S, Cplx<S>)> {
    let axis = default_axis(pulse.bandwidth(), gamma);
    let weights = simpson_weights::<S>(axis.len(), axis.spacing())?;
    let mut refl = S::zero();
    let mut cross = Cplx::new(S::zero(), S::zero());
    for (i, w) in weights.iter().enumerate() {
        let nu = axis.at(i);
        let f2 = pulse.spectral_amplitude(nu).norm_sqr();
        let resp = SinglePhotonResponse::at((nu + detuning) / gamma);
        refl += *w * f2 * resp.reflection.norm_sqr();
        cross = cross + resp.transmission * resp.reflection.conj() * (*w * f2);
    }
    Ok((refl, cross))
}

/// Probability that a single photon of this pulse is reflected,
/// ℛ = ∫ dν |f(ν)|² |r((ν+Δ)/γ)|².
///
/// The transmission probability is 1 − ℛ by unitarity.
pub fn single_photon_reflection_coefficient<S: Real>(
    pulse: &Pulse<S>,
    detuning: S,
    gamma: S,
) -> Result<S> {
    Ok(spectral_moments(pulse, detuning, gamma)?.0)
}

/// Coincidence probability of the linear beamsplitter for two identical,
/// simultaneous photons:
///
/// ```text
///     𝒞 = 𝒯² + ℛ² + 2 Re[J²] ,    J = ∫ dν |f(ν)|² t r* .
/// ```
///
/// For any spectrally symmetric pulse on resonance J vanishes (odd
/// integrand) and 𝒞 = 𝒯² + ℛ² = 1 − 2ℛ𝒯 ≥ 1/2: a linear, frequency-dependent
/// beamsplitter can never bunch identical photons below one half.
pub fn linear_coincidence<S: Real>(pulse: &Pulse<S>, detuning: S, gamma: S) -> Result<S> {
    let (refl, cross) = spectral_moments(pulse, detuning, gamma)?;
    let trans = S::one() - refl;
    let j2 = cross * cross;
    Ok(trans * trans + refl * refl + S::lit(2.0) * j2.re)
}

/// The interference cross term J alone (diagnostic: vanishes at Δ = 0 for
/// symmetric spectra).
pub fn linear_cross_term<S: Real>(pulse: &Pulse<S>, detuning: S, gamma: S) -> Result<Cplx<S>> {
    Ok(spectral_moments(pulse, detuning, gamma)?.1)
}

/// Joint spectral density of the linear beamsplitter's coincidence sector,
///
/// ```text
///     𝒮(ν₁,ν₂) = |f(ν₁) f(ν₂) (t₁t₂ + r₁r₂)|² ,
/// ```
///
/// on a user grid in ν = ω − ω₀. Integrates to [`linear_coincidence`]; a
/// deviation beyond 1% logs a grid-coarseness warning.
pub fn linear_joint_spectrum<S: Real>(
    pulse: &Pulse<S>,
    detuning: S,
    gamma: S,
    grid: Grid2D<S>,
) -> Result<JointDistribution2D<S>> {
    let nx = grid.x.len();
    let ny = grid.y.len();
    // Precompute per-axis f(ν) and response values; the grid is a product.
    let fx: Vec<Cplx<S>> = grid.x.points().map(|nu| pulse.spectral_amplitude(nu)).collect();
    let rx: Vec<SinglePhotonResponse<S>> = grid
        .x
        .points()
        .map(|nu| SinglePhotonResponse::at((nu + detuning) / gamma))
        .collect();
    let fy: Vec<Cplx<S>> = grid.y.points().map(|nu| pulse.spectral_amplitude(nu)).collect();
    let ry: Vec<SinglePhotonResponse<S>> = grid
        .y
        .points()
        .map(|nu| SinglePhotonResponse::at((nu + detuning) / gamma))
        .collect();
    let mut values = vec![S::zero(); nx * ny];
    for ix in 0..nx {
        for iy in 0..ny {
            let both = rx[ix].transmission * ry[iy].transmission
                + rx[ix].reflection * ry[iy].reflection;
            values[ix * ny + iy] = (fx[ix] * fy[iy] * both).norm_sqr();
        }
    }
    let dist = JointDistribution2D::new(grid, values, Domain::Frequency)?;
    let reference = linear_coincidence(pulse, detuning, gamma)?;
    let err = (dist.normalization() - reference).abs();
    if err > S::lit(0.01) * reference.max(S::lit(1e-12)) {
        log::warn!(
            "joint-spectrum grid may be too coarse or too narrow: integrates to {} vs coincidence {}",
            dist.normalization(),
            reference
        );
    }
    Ok(dist)
}

/// Which two-photon interference branch of the frequency hyperbola to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocusKind {
    /// (ω₁−ω_A)(ω₂−ω_A) = +γ²: the tt + rr sum cancels (bunching).
    Destructive,
    /// (ω₁−ω_A)(ω₂−ω_A) = −γ²: the 1 + r₁ + r₂ combination cancels instead,
    /// enhancing the coincidence of the linear model.
    Constructive,
}

/// Partner frequency on the chosen interference hyperbola, in normalized
/// coordinates x = (ω − ω_A)/γ: returns x₂ with x₁x₂ = ±1.
pub fn interference_locus<S: Real>(kind: LocusKind, x1: S) -> Result<S> {
    if x1 == S::zero() || !x1.is_finite() {
        return Err(Error::InvalidParameter(
            "the interference hyperbola has no finite partner at ω₁ = ω_A".into(),
        ));
    }
    Ok(match kind {
        LocusKind::Destructive => x1.recip(),
        LocusKind::Constructive => -x1.recip(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::reflection_square_resonant;

    #[test]
    fn unitarity_and_linearity_identities() {
        let mut x = -25.0_f64;
        while x <= 25.0 {
            let s = SinglePhotonResponse::at(x);
            let sum = s.reflection.norm_sqr() + s.transmission.norm_sqr();
            assert!((sum - 1.0).abs() < 1e-14, "x={x}");
            let t_from_r = Cplx::new(1.0, 0.0) + s.reflection;
            assert!((s.transmission - t_from_r).norm() < 1e-14, "x={x}");
            x += 0.173;
        }
    }

    #[test]
    fn cross_product_is_odd() {
        for x in [0.3, 1.0, 2.7, 14.0] {
            let plus = SinglePhotonResponse::at(x);
            let minus = SinglePhotonResponse::at(-x);
            let a = plus.transmission * plus.reflection.conj();
            let b = minus.transmission * minus.reflection.conj();
            assert!((a + b).norm() < 1e-14, "x={x}");
        }
    }

    #[test]
    fn resonance_reflection_values() {
        // On resonance the atom reflects perfectly with a π phase:
        // r(0) = −i/(0+i) = −1, t(0) = 0.
        let s = SinglePhotonResponse::<f64>::at(0.0);
        assert!((s.reflection - Cplx::new(-1.0, 0.0)).norm() < 1e-15);
        assert!(s.transmission.norm() < 1e-15);
        // At |x| = 1 the line is half-reflecting.
        let s = SinglePhotonResponse::<f64>::at(1.0);
        assert!((s.reflection.norm_sqr() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn square_reflection_matches_closed_form() {
        for sigma in [0.02_f64, 0.1, 1.0, 1.25, 2.0, 10.0] {
            let pulse = Pulse::square(sigma).unwrap();
            let got = single_photon_reflection_coefficient(&pulse, 0.0, 1.0).unwrap();
            let expect = reflection_square_resonant(sigma).unwrap();
            assert!((got - expect).abs() < 1e-6, "σ={sigma}: {got} vs {expect}");
        }
    }

    #[test]
    fn balanced_point_near_sigma_1_25() {
        let pulse = Pulse::square(1.25_f64).unwrap();
        let r = single_photon_reflection_coefficient(&pulse, 0.0, 1.0).unwrap();
        assert!((r - 0.5).abs() < 0.01, "ℛ = {r}");
    }

    #[test]
    fn monochromatic_reflection_limit() {
        let pulse = Pulse::square(0.002).unwrap();
        let r = single_photon_reflection_coefficient(&pulse, 0.0, 1.0).unwrap();
        assert!(r > 0.995, "ℛ = {r}");
    }

    #[test]
    fn resonant_cross_term_vanishes() {
        for pulse in [
            Pulse::square(0.7).unwrap(),
            Pulse::gaussian(1.3).unwrap(),
            Pulse::exp_rising(2.0).unwrap(),
        ] {
            let j = linear_cross_term(&pulse, 0.0, 1.0).unwrap();
            assert!(j.norm() < 1e-10, "{:?}: |J| = {}", pulse.kind(), j.norm());
        }
        // Detuned: the integrand loses its parity and J turns on.
        let pulse = Pulse::square(1.0).unwrap();
        let j = linear_cross_term(&pulse, 0.8, 1.0).unwrap();
        assert!(j.norm() > 1e-3);
    }

    #[test]
    fn linear_coincidence_at_balance() {
        let pulse = Pulse::square(1.25_f64).unwrap();
        let c = linear_coincidence(&pulse, 0.0, 1.0).unwrap();
        assert!((c - 0.5).abs() < 0.01, "𝒞 = {c}");
        // Monochromatic limit: everything reflects, coincidence 1.
        let pulse = Pulse::square(0.002_f64).unwrap();
        let c = linear_coincidence(&pulse, 0.0, 1.0).unwrap();
        assert!((c - 1.0).abs() < 0.02, "𝒞 = {c}");
    }

    fn windowed_moments(pulse: &Pulse<f64>, axis: &Grid1D<f64>) -> (f64, f64, Cplx<f64>) {
        let w = crate::quad::simpson_weights::<f64>(axis.len(), axis.spacing()).unwrap();
        let mut t = 0.0;
        let mut r = 0.0;
        let mut j = Cplx::new(0.0, 0.0);
        for (i, wt) in w.iter().enumerate() {
            let x = axis.at(i);
            let f2 = pulse.spectral_amplitude(x).norm_sqr();
            let sp = SinglePhotonResponse::at(x);
            t += wt * f2 * sp.transmission.norm_sqr();
            r += wt * f2 * sp.reflection.norm_sqr();
            j += sp.transmission * sp.reflection.conj() * (wt * f2);
        }
        (t, r, j)
    }

    #[test]
    fn joint_spectrum_zeros_and_normalization() {
        let sigma = 2.0_f64;
        let pulse = Pulse::square(sigma).unwrap();

        // The assembled 2D mass equals the factorized spectral moments on
        // the same axis — exact at the discrete level, so this pins the
        // assembly, not the quadrature.
        let axis = Grid1D::new(-12.0 * sigma, 12.0 * sigma, 401).unwrap();
        let dist = linear_joint_spectrum(&pulse, 0.0, 1.0, Grid2D::square(axis.clone())).unwrap();
        let (t_w, r_w, j_w) = windowed_moments(&pulse, &axis);
        let factorized = t_w * t_w + r_w * r_w + 2.0 * (j_w * j_w).re;
        assert!(
            (dist.normalization() - factorized).abs() < 1e-10,
            "2D mass {} vs factorized {factorized}",
            dist.normalization()
        );

        // Widening the window converges that mass onto the closed-form
        // coincidence 𝒯² + ℛ²; the spectrum's 1/ν² transmission tails shed
        // mass like 1/W, so the wide window must land within 1% and carry
        // well under half the narrow window's deficit.
        let r = crate::oracles::reflection_square_resonant(sigma).unwrap();
        let exact = r * r + (1.0 - r) * (1.0 - r);
        let mass = |hw: f64| {
            let n = (hw * 30.0).ceil() as usize * 2 + 1;
            let ax = Grid1D::new(-hw, hw, n).unwrap();
            let (t_w, r_w, j_w) = windowed_moments(&pulse, &ax);
            t_w * t_w + r_w * r_w + 2.0 * (j_w * j_w).re
        };
        let narrow = mass(60.0);
        let wide = mass(300.0);
        assert!((wide - exact).abs() < 0.01 * exact, "{wide} vs {exact}");
        assert!((wide - exact).abs() < 0.5 * (narrow - exact).abs());

        // Destructive hyperbola x₁x₂ = 1: sample (1, 1).
        let peak = dist.max_value();
        let on_zero = {
            let t1 = SinglePhotonResponse::at(1.0);
            (pulse.spectral_amplitude(1.0).norm_sqr()
                * pulse.spectral_amplitude(1.0).norm_sqr())
                * (t1.transmission * t1.transmission + t1.reflection * t1.reflection).norm_sqr()
        };
        assert!(on_zero < 1e-20 * peak, "tt+rr should cancel at x₁=x₂=1");
    }

    #[test]
    fn locus_algebra() {
        assert!((interference_locus::<f64>(LocusKind::Destructive, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((interference_locus::<f64>(LocusKind::Constructive, 1.0).unwrap() + 1.0).abs() < 1e-15);
        assert!((interference_locus::<f64>(LocusKind::Destructive, 2.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(interference_locus::<f64>(LocusKind::Destructive, 0.0).is_err());
    }
}
