//! Physical configuration shared by every engine.
//!
//! Internally everything is expressed in units where the atomic bandwidth
//! sets the scale: rates in units of `gamma`, times in units of `1/gamma`.
//! The fields are stored as raw rates/times nevertheless, so that the scaling
//! invariance (doubling `gamma` together with `bandwidth`, `detuning` and
//! `1/delay` changes nothing dimensionless) stays testable.

use crate::error::{Error, Result};
use crate::num::Real;
use crate::pulse::{Pulse, PulseKind};

/// Configuration of a two-photon scattering run.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterParams<S: Real> {
    /// Atomic bandwidth (spontaneous-emission rate of the coherence); the
    /// excited-state population decays at twice this rate.
    pub gamma: S,
    /// Pulse carrier detuning from the atomic transition, `ω₀ − ω_A`.
    pub detuning: S,
    /// Pulse bandwidth Ω.
    pub bandwidth: S,
    /// Arrival delay of pulse `b` relative to pulse `a` (≥ 0).
    pub delay: S,
    /// Which pulse family drives the run.
    pub pulse_kind: PulseKind,
}

impl<S: Real> ScatterParams<S> {
    pub fn new(gamma: S, detuning: S, bandwidth: S, delay: S, pulse_kind: PulseKind) -> Result<Self> {
        let p = Self { gamma, detuning, bandwidth, delay, pulse_kind };
        p.validate()?;
        Ok(p)
    }

    /// Resonant, zero-delay configuration in `gamma = 1` units.
    pub fn resonant(bandwidth: S, pulse_kind: PulseKind) -> Result<Self> {
        Self::new(S::one(), S::zero(), bandwidth, S::zero(), pulse_kind)
    }

    pub fn validate(&self) -> Result<()> {
        let all_finite = self.gamma.is_finite()
            && self.detuning.is_finite()
            && self.bandwidth.is_finite()
            && self.delay.is_finite();
        if !all_finite {
            return Err(Error::InvalidParameter("non-finite parameter".into()));
        }
        if !(self.gamma > S::zero()) {
            return Err(Error::InvalidParameter(format!("gamma must be positive, got {}", self.gamma)));
        }
        if !(self.bandwidth > S::zero()) {
            return Err(Error::InvalidParameter(format!(
                "bandwidth must be positive, got {}",
                self.bandwidth
            )));
        }
        if self.delay < S::zero() {
            return Err(Error::InvalidParameter(format!("delay must be ≥ 0, got {}", self.delay)));
        }
        Ok(())
    }

    /// Normalized bandwidth σ = Ω/γ.
    pub fn sigma(&self) -> S {
        self.bandwidth / self.gamma
    }

    /// Normalized detuning δ = Δ/γ.
    pub fn delta(&self) -> S {
        self.detuning / self.gamma
    }

    /// Normalized delay γ·τ_d.
    pub fn normalized_delay(&self) -> S {
        self.delay * self.gamma
    }

    /// Construct the pulse for the three analytic families. Sampled pulses
    /// carry their own data and must be built with [`Pulse::from_samples`].
    pub fn pulse(&self) -> Result<Pulse<S>> {
        match self.pulse_kind {
            PulseKind::Square => Ok(Pulse::square(self.bandwidth)?),
            PulseKind::Gaussian => Ok(Pulse::gaussian(self.bandwidth)?),
            PulseKind::ExpRising => Ok(Pulse::exp_rising(self.bandwidth)?),
            PulseKind::Sampled => Err(Error::InvalidParameter(
                "sampled pulses need sample data; build them with Pulse::from_samples".into(),
            )),
        }
    }
}
