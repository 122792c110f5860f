//! Single-photon pulse families.
//!
//! A pulse is described by its time profile ξ(τ) — the photon amplitude at a
//! distance τ behind the wavefront — and its spectral amplitude f(ν) at
//! detuned frequency ν = ω − ω₀ relative to the carrier. The two are related
//! by the unitary Fourier pair
//!
//! ```text
//!     ξ(τ) = (2π)^(−1/2) ∫ f(ν) e^(−iντ) dν ,
//!     f(ν) = (2π)^(−1/2) ∫ ξ(τ) e^(+iντ) dτ ,
//! ```
//!
//! and both are unit-normalized: ∫|ξ|²dτ = ∫|f|²dν = 1 (one photon per
//! pulse). Three analytic families are built in:
//!
//! * `Square`: ξ = √(Ω/2) on [0, 2/Ω] — duration 2/Ω, bandwidth Ω;
//! * `Gaussian`: ξ = (4Ω²/π)^(1/4) e^(−2Ω²τ²), centered at τ = 0;
//! * `ExpRising`: ξ = √Ω e^(Ωτ/2) for τ < 0 — the time-reverse of the
//!   atom's own emitted wavepacket when Ω equals the atomic bandwidth.
//!
//! A fourth, `Sampled`, takes an arbitrary complex envelope on a uniform
//! grid (loaded from CSV) and renormalizes it.

use crate::error::{Error, Result};
use crate::num::{re, Cplx, Real};
use crate::quad::{simpson_uniform, simpson_weights};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// Pulse family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PulseKind {
    Square,
    Gaussian,
    ExpRising,
    Sampled,
}

impl fmt::Display for PulseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PulseKind::Square => "square",
            PulseKind::Gaussian => "gaussian",
            PulseKind::ExpRising => "exp-rising",
            PulseKind::Sampled => "sampled",
        };
        f.write_str(s)
    }
}

impl FromStr for PulseKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "square" => Ok(PulseKind::Square),
            "gaussian" => Ok(PulseKind::Gaussian),
            "exp-rising" | "exprising" | "exp_rising" => Ok(PulseKind::ExpRising),
            "sampled" => Ok(PulseKind::Sampled),
            other => Err(Error::InvalidParameter(format!("unknown pulse kind '{other}'"))),
        }
    }
}

/// Relative amplitude below which the Gaussian and exponentially rising
/// profiles are treated as zero when assigning a finite support window.
const SUPPORT_CUTOFF: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
struct SampledData<S: Real> {
    t0: S,
    dt: S,
    values: Vec<Cplx<S>>,
}

/// A unit-normalized single-photon pulse.
#[derive(Debug, Clone, PartialEq)]
pub struct Pulse<S: Real> {
    kind: PulseKind,
    bandwidth: S,
    start_time: S,
    duration: S,
    samples: Option<SampledData<S>>,
}

impl<S: Real> Pulse<S> {
    /// Square pulse of bandwidth Ω: constant amplitude √(Ω/2) on [0, 2/Ω].
    pub fn square(bandwidth: S) -> Result<Self> {
        Self::check_bandwidth(bandwidth)?;
        Ok(Self {
            kind: PulseKind::Square,
            bandwidth,
            start_time: S::zero(),
            duration: S::lit(2.0) / bandwidth,
            samples: None,
        })
    }

    /// Gaussian pulse of bandwidth Ω centered at τ = 0. The support window
    /// is truncated where |ξ| drops below 10⁻⁸ of the peak, i.e. at
    /// τ = ±2√(ln 10)/Ω ≈ ±3.035/Ω.
    pub fn gaussian(bandwidth: S) -> Result<Self> {
        Self::check_bandwidth(bandwidth)?;
        // e^(−2Ω²τ²) = cutoff  ⇒  τ = √(−ln cutoff / 2) / Ω.
        let half = S::lit((-SUPPORT_CUTOFF.ln() / 2.0).sqrt()) / bandwidth;
        Ok(Self {
            kind: PulseKind::Gaussian,
            bandwidth,
            start_time: -half,
            duration: half * S::lit(2.0),
            samples: None,
        })
    }

    /// Exponentially rising pulse of bandwidth Ω, ending sharply at τ = 0.
    /// The support window starts where |ξ| = 10⁻⁸ of the peak, i.e. at
    /// τ = −2 ln(10⁸)/Ω ≈ −36.84/Ω.
    pub fn exp_rising(bandwidth: S) -> Result<Self> {
        Self::check_bandwidth(bandwidth)?;
        // |ξ|/max = e^(Ωτ/2) = cutoff ⇒ τ = 2 ln(cutoff)/Ω.
        let start = S::lit(2.0 * SUPPORT_CUTOFF.ln()) / bandwidth;
        Ok(Self {
            kind: PulseKind::ExpRising,
            bandwidth,
            start_time: start,
            duration: -start,
            samples: None,
        })
    }

    /// Arbitrary complex envelope sampled on a uniform grid starting at `t0`
    /// with spacing `dt`. The samples are renormalized so ∫|ξ|²dτ = 1; the
    /// nominal bandwidth is taken as 2/duration (the square-pulse relation),
    /// which downstream code uses only for step-size and window heuristics.
    pub fn from_samples(t0: S, dt: S, mut values: Vec<Cplx<S>>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::PulseSamples(format!(
                "need at least 2 samples, got {}",
                values.len()
            )));
        }
        if !(dt > S::zero()) || !dt.is_finite() || !t0.is_finite() {
            return Err(Error::PulseSamples(format!("bad sample grid: t0={t0}, dt={dt}")));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::PulseSamples("non-finite sample amplitude".into()));
        }
        let norm2: S = simpson_uniform(
            &values.iter().map(|v| v.norm_sqr()).collect::<Vec<_>>(),
            dt,
        )?;
        if !(norm2 > S::zero()) {
            return Err(Error::PulseSamples("samples have zero norm".into()));
        }
        let scale = norm2.sqrt().recip();
        for v in values.iter_mut() {
            *v = *v * scale;
        }
        let duration = dt * S::from_usize(values.len() - 1).unwrap();
        Ok(Self {
            kind: PulseKind::Sampled,
            bandwidth: S::lit(2.0) / duration,
            start_time: t0,
            duration,
            samples: Some(SampledData { t0, dt, values }),
        })
    }

    /// Load a sampled pulse from CSV with mandatory header `tau,re,im` and a
    /// uniform time column.
    pub fn from_csv(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::PulseSamples("empty sample file".into()))?;
        let normalized: String = header.split(',').map(|c| c.trim().to_ascii_lowercase() + ",").collect();
        if normalized != "tau,re,im," {
            return Err(Error::PulseSamples(format!(
                "expected header 'tau,re,im', found '{header}'"
            )));
        }
        let mut taus: Vec<S> = Vec::new();
        let mut values: Vec<Cplx<S>> = Vec::new();
        for (i, line) in lines.enumerate() {
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            if cols.len() != 3 {
                return Err(Error::PulseSamples(format!(
                    "row {} has {} columns, expected 3",
                    i + 2,
                    cols.len()
                )));
            }
            let parse = |s: &str| -> Result<S> {
                let x: f64 = s
                    .parse()
                    .map_err(|_| Error::PulseSamples(format!("row {}: bad number '{s}'", i + 2)))?;
                Ok(S::lit(x))
            };
            taus.push(parse(cols[0])?);
            values.push(Cplx::new(parse(cols[1])?, parse(cols[2])?));
        }
        if taus.len() < 2 {
            return Err(Error::PulseSamples("need at least 2 sample rows".into()));
        }
        let dt = taus[1] - taus[0];
        if !(dt > S::zero()) {
            return Err(Error::PulseSamples("time column must be strictly increasing".into()));
        }
        let tol = dt * S::lit(1e-6);
        for k in 1..taus.len() {
            let expected = taus[0] + dt * S::from_usize(k).unwrap();
            if (taus[k] - expected).abs() > tol {
                return Err(Error::PulseSamples(format!(
                    "time column is not uniform at row {} (got {}, expected {})",
                    k + 2,
                    taus[k],
                    expected
                )));
            }
        }
        Self::from_samples(taus[0], dt, values)
    }

    fn check_bandwidth(bandwidth: S) -> Result<()> {
        if !(bandwidth > S::zero()) || !bandwidth.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "pulse bandwidth must be positive and finite, got {bandwidth}"
            )));
        }
        Ok(())
    }

    pub fn kind(&self) -> PulseKind {
        self.kind
    }

    pub fn bandwidth(&self) -> S {
        self.bandwidth
    }

    /// Earliest support point t₀.
    pub fn start_time(&self) -> S {
        self.start_time
    }

    /// Support length.
    pub fn duration(&self) -> S {
        self.duration
    }

    /// Latest support point t₀ + duration.
    pub fn end_time(&self) -> S {
        self.start_time + self.duration
    }

    /// Times where ξ is discontinuous or kinked; integrators align their
    /// panel boundaries with these so each panel sees a smooth integrand.
    pub fn breakpoints(&self) -> Vec<S> {
        vec![self.start_time, self.end_time()]
    }

    /// Time profile ξ(τ). Total function: zero outside the support window;
    /// on the window boundary the inside value is returned.
    pub fn time_profile(&self, tau: S) -> Cplx<S> {
        if tau < self.start_time || tau > self.end_time() {
            return re(S::zero());
        }
        self.inside_profile(tau)
    }

    /// Evaluate the analytic branch that is active at `hint`, at the point
    /// `tau`. This gives the one-sided limits integrators need when `tau`
    /// sits exactly on a discontinuity: pass the midpoint of the panel being
    /// integrated as `hint` and the branch is chosen consistently for the
    /// whole panel.
    pub fn piece_value(&self, tau: S, hint: S) -> Cplx<S> {
        if hint < self.start_time || hint > self.end_time() {
            return re(S::zero());
        }
        self.inside_profile(tau)
    }

    fn inside_profile(&self, tau: S) -> Cplx<S> {
        let w = self.bandwidth;
        match self.kind {
            PulseKind::Square => re((w / S::lit(2.0)).sqrt()),
            PulseKind::Gaussian => {
                let amp = (S::lit(4.0) * w * w / S::PI()).powf(S::lit(0.25));
                re(amp * (-S::lit(2.0) * w * w * tau * tau).exp())
            }
            PulseKind::ExpRising => re(w.sqrt() * (w * tau / S::lit(2.0)).exp()),
            PulseKind::Sampled => {
                let d = self.samples.as_ref().expect("sampled pulse has data");
                // Linear interpolation between samples, clamped to the grid.
                let pos = ((tau - d.t0) / d.dt).max(S::zero());
                let i = pos
                    .floor()
                    .to_f64()
                    .map(|x| x as usize)
                    .unwrap_or(0)
                    .min(d.values.len() - 2);
                let frac = pos - S::from_usize(i).unwrap();
                let frac = frac.min(S::one()).max(S::zero());
                d.values[i] * (S::one() - frac) + d.values[i + 1] * frac
            }
        }
    }

    /// Spectral amplitude f(ν) at detuned frequency ν = ω − ω₀.
    ///
    /// Analytic transforms for the built-in families; for sampled pulses a
    /// quadrature Fourier sum over the stored envelope.
    pub fn spectral_amplitude(&self, nu: S) -> Cplx<S> {
        let w = self.bandwidth;
        let two = S::lit(2.0);
        match self.kind {
            PulseKind::Square => {
                // (2π)^(−1/2) √(Ω/2) e^{iν t_c} · 2 sin(ν/Ω)/ν, centered at
                // t_c = t₀ + 1/Ω; peak value f(0) = 1/√(πΩ).
                let center = self.start_time + w.recip();
                let sinc = if nu.abs() < S::lit(1e-30) {
                    two / w
                } else {
                    two * (nu / w).sin() / nu
                };
                let mag = (two * S::PI()).sqrt().recip() * (w / two).sqrt() * sinc;
                Cplx::from_polar(mag, nu * center)
            }
            PulseKind::Gaussian => {
                // (4Ω²/π)^(1/4)/(2Ω) · e^{−ν²/(8Ω²)}; real and positive.
                let amp = (S::lit(4.0) * w * w / S::PI()).powf(S::lit(0.25)) / (two * w);
                re(amp * (-nu * nu / (S::lit(8.0) * w * w)).exp())
            }
            PulseKind::ExpRising => {
                // (2π)^(−1/2) √Ω / (Ω/2 + iν): a Lorentzian line of width Ω,
                // the mirror of an atomic emission line.
                let pref = (two * S::PI()).sqrt().recip() * w.sqrt();
                Cplx::new(w / two, nu).inv() * pref
            }
            PulseKind::Sampled => {
                let d = self.samples.as_ref().expect("sampled pulse has data");
                let weights = simpson_weights::<S>(d.values.len(), d.dt)
                    .expect("validated sample grid");
                let mut acc = re(S::zero());
                for (k, (&v, &wk)) in d.values.iter().zip(weights.iter()).enumerate() {
                    let t = d.t0 + d.dt * S::from_usize(k).unwrap();
                    acc = acc + v * Cplx::from_polar(wk, nu * t);
                }
                acc * (two * S::PI()).sqrt().recip()
            }
        }
    }
}
