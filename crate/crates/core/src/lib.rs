//! Two indistinguishable photons meeting on a two-level atom that is
//! side-coupled to a one-dimensional waveguide.
//!
//! A lone two-level atom in a waveguide acts as a perfect mirror exactly on
//! resonance — for *one* photon. Send one photon from each side and the
//! atom doubles as a beamsplitter whose reflectivity saturates: it can only
//! absorb one excitation at a time, so photon pairs see a different,
//! nonlinear device. The observable of interest is the coincidence
//! probability 𝒞 that the photons leave in opposite directions. An ordinary
//! (linear) beamsplitter with the same frequency response can never push 𝒞
//! below ½ for identical photons; the saturable atom can — and in other
//! regimes pins 𝒞 near 1 by rejecting the second photon while it is busy
//! with the first.
//!
//! Everything is expressed in natural units of the atomic decay: rates
//! scale with γ (the total emission rate into the guide), times with 1/γ,
//! and the two control knobs are the pulse bandwidth σ = Ω/γ and carrier
//! detuning δ = Δ/γ.
//!
//! The crate deliberately computes the same physics along independent
//! routes so each can check the others:
//!
//! * [`moments`] — a closed hierarchy of Heisenberg-picture expectation
//!   values, integrated in time. Works at any detuning and pulse delay;
//!   yields 𝒞, the same-direction pair probabilities, and the atomic
//!   excitation 𝒫ₑ(t).
//! * [`amplitude`] — the explicit two-photon amplitude on resonance, in
//!   both the time domain (detection-time pairs, path-by-path) and the
//!   frequency domain (joint spectra), plus an ODE-only reference
//!   construction of the same amplitudes.
//! * [`linear`] — the linear-beamsplitter reference with the identical
//!   single-photon response, the baseline against which bunching or
//!   antibunching becomes meaningful.
//! * [`oracles`] — closed-form limits (monochromatic photons, resonant
//!   square pulses) used as the outermost layer of cross-validation.
//!
//! Supporting machinery: [`pulse`] (envelope families and their exact
//! spectra), [`params`] (validated run parameters), [`ode`] (segmented
//! fixed-step Runge–Kutta), [`quad`] (Simpson and Gauss–Legendre rules),
//! [`grid`]/[`dist`] (uniform grids and nonnegative joint densities), and
//! [`num`] (the scalar abstraction making every engine generic over f64 /
//! f32).
//!
//! The scalar type is generic via [`num::Real`]; the `*64` aliases below
//! fix the double-precision instantiations that the command-line front end
//! and most tests use.

pub mod amplitude;
pub mod dist;
pub mod error;
pub mod grid;
pub mod linear;
pub mod moments;
pub mod num;
pub mod ode;
pub mod oracles;
pub mod params;
pub mod pulse;
pub mod quad;

pub use error::{Error, Result};
pub use num::{Cplx, Real};

/// Library version, recorded in the metadata written next to data files.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Double-precision working types.
pub type Complex64 = num::Cplx<f64>;
pub type Pulse64 = pulse::Pulse<f64>;
pub type ScatterParams64 = params::ScatterParams<f64>;
pub type Grid1D64 = grid::Grid1D<f64>;
pub type Grid2D64 = grid::Grid2D<f64>;
pub type MomentTrace64 = moments::MomentTrace<f64>;
pub type JointDistribution64 = dist::JointDistribution2D<f64>;
pub type MarginalDistribution64 = amplitude::MarginalDistribution<f64>;
pub type AtomResponse64 = amplitude::AtomResponse<f64>;
