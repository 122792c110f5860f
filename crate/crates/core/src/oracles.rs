//! Closed-form benchmark expressions.
//!
//! These are the exact solutions available for special configurations —
//! monochromatic driving, or a resonant/detuned square pulse — used as
//! ground truth by the test suites and as fast evaluation paths by the CLI.
//! Each formula carries an explicit validity domain and refuses to
//! extrapolate outside it.

use crate::error::{Error, Result};
use crate::num::Real;

/// Tags for the closed forms, with their validity domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// Coincidence in the monochromatic limit Ω ≪ γ, any detuning.
    CoincidenceMonochromatic,
    /// Single-photon reflection in the monochromatic limit, any detuning.
    ReflectionMonochromatic,
    /// Coincidence for a resonant square pulse, any bandwidth.
    CoincidenceSquareResonant,
    /// Single-photon reflection for a resonant square pulse, any bandwidth.
    ReflectionSquareResonant,
    /// Atomic excitation for a square pulse, any detuning, inside the pulse
    /// window 0 ≤ γ(t−t₀) ≤ 2γ/Ω.
    ExcitationSquare,
}

impl ClosedForm {
    /// Human-readable statement of where the formula applies.
    pub fn validity(&self) -> &'static str {
        match self {
            ClosedForm::CoincidenceMonochromatic | ClosedForm::ReflectionMonochromatic => {
                "monochromatic limit Ω/γ → 0; any detuning"
            }
            ClosedForm::CoincidenceSquareResonant | ClosedForm::ReflectionSquareResonant => {
                "square pulse at Δ = 0; any bandwidth Ω > 0"
            }
            ClosedForm::ExcitationSquare => {
                "square pulse; any detuning; within the pulse window 0 ≤ γ(t−t₀) ≤ 2γ/Ω"
            }
        }
    }
}

/// Coincidence of two monochromatic photons at normalized detuning δ = Δ/γ:
///
/// ```text
///     𝒞ᵒ = 1 − 4δ²/(1+δ²)² = 1 − 4ℛᵒ𝒯ᵒ .
/// ```
///
/// Equals 1 at δ = 0 (both photons reflect), dips to 0 at |δ| = 1 where the
/// atom is a balanced beamsplitter and the photons bunch, and returns to 1
/// in the far-detuned (full transmission) limit.
pub fn coincidence_monochromatic<S: Real>(delta: S) -> S {
    let d2 = delta * delta;
    let p = S::one() + d2;
    S::one() - S::lit(4.0) * d2 / (p * p)
}

/// Single-photon reflection probability of a monochromatic photon,
/// ℛᵒ = 1/(1+δ²) — the atomic Lorentzian line.
pub fn reflection_monochromatic<S: Real>(delta: S) -> S {
    (S::one() + delta * delta).recip()
}

fn check_sigma<S: Real>(sigma: S) -> Result<()> {
    if !(sigma > S::zero()) || !sigma.is_finite() {
        return Err(Error::OutsideValidity(format!(
            "square-pulse closed forms need Ω/γ > 0, got {sigma}"
        )));
    }
    Ok(())
}

/// Coincidence for a resonant square pulse of normalized bandwidth σ = Ω/γ:
///
/// ```text
///     𝒞⊓ = 1 − 3σ[1 − σ + e^(−2/σ)(1+σ)] .
/// ```
pub fn coincidence_square_resonant<S: Real>(sigma: S) -> Result<S> {
    check_sigma(sigma)?;
    // The bracket cancels to O(σ⁻²) for large σ; writing it as
    // 2 + (e^(−2/σ) − 1)(1+σ) keeps one extra digit there.
    let em1 = (-S::lit(2.0) / sigma).exp_m1();
    Ok(S::one() - S::lit(3.0) * sigma * (S::lit(2.0) + em1 * (S::one() + sigma)))
}

/// Single-photon reflection probability for a resonant square pulse:
///
/// ```text
///     ℛ⊓ = 1 + (−1 + e^(−2/σ))·σ/2 .
/// ```
pub fn reflection_square_resonant<S: Real>(sigma: S) -> Result<S> {
    check_sigma(sigma)?;
    Ok(S::one() + (-S::lit(2.0) / sigma).exp_m1() * sigma / S::lit(2.0))
}

fn check_window<S: Real>(sigma: S, t_prime: S) -> Result<()> {
    check_sigma(sigma)?;
    if !t_prime.is_finite() || t_prime < S::zero() || t_prime > S::lit(2.0) / sigma {
        return Err(Error::OutsideValidity(format!(
            "excitation formula holds only inside the pulse window 0 ≤ t′ ≤ 2/σ; got t′ = {t_prime} at σ = {sigma}"
        )));
    }
    Ok(())
}

/// Atomic excitation during a *resonant* square pulse, as an explicit
/// function of normalized time t′ = γ(t−t₀) and bandwidth σ = Ω/γ:
///
/// ```text
///     𝒫ₑ⊓(t′) = σ[(1−2σ) + 2e^(−t′)(−1 + 4σ(t′−1)) + e^(−2t′)(1 + 2σ(5+2t′))] .
/// ```
///
/// Valid inside the pulse window only.
pub fn excitation_square_resonant<S: Real>(sigma: S, t_prime: S) -> Result<S> {
    check_window(sigma, t_prime)?;
    let two = S::lit(2.0);
    let four = S::lit(4.0);
    let bracket = (S::one() - two * sigma)
        + two * (-t_prime).exp() * (-S::one() + four * sigma * (t_prime - S::one()))
        + (-two * t_prime).exp() * (S::one() + two * sigma * (S::lit(5.0) + two * t_prime));
    Ok(sigma * bracket)
}

/// Atomic excitation during a square pulse at arbitrary normalized detuning
/// δ = Δ/γ, inside the pulse window.
///
/// The expression is the two-photon-driven solution of the atomic Bloch
/// dynamics; it is evaluated in a numerically stable arrangement with the
/// overall decaying exponentials kept next to their (bounded) polynomial
/// cofactors, and the 1/δ pole removed analytically: every term carries an
/// explicit factor δ except the sin(t′δ) one, which becomes sin(t′δ)/δ and
/// is continued with its limit t′ at δ = 0. With that continuation the δ = 0
/// evaluation is *algebraically identical* to [`excitation_square_resonant`].
pub fn excitation_square<S: Real>(sigma: S, delta: S, t_prime: S) -> Result<S> {
    check_window(sigma, t_prime)?;
    if !delta.is_finite() {
        return Err(Error::OutsideValidity(format!("non-finite detuning {delta}")));
    }
    let two = S::lit(2.0);
    let d2 = delta * delta;
    let p = S::one() + d2;
    let sinc = if delta == S::zero() { t_prime } else { (t_prime * delta).sin() / delta };
    let em1 = (-t_prime).exp();
    let em2 = (-two * t_prime).exp();
    let bracket = em2
        * (two * sigma * ((two * t_prime - S::lit(3.0)) * d2 + two * t_prime + S::lit(5.0)) + p * p)
        + p * (p - two * sigma)
        - two * em1
            * (p * p - two * sigma * ((t_prime + two) * d2 + t_prime - two))
            * (t_prime * delta).cos()
        + S::lit(4.0) * sigma * em1 * (t_prime * d2 * d2 + (t_prime - S::lit(3.0)) * d2 + S::one()) * sinc;
    Ok(sigma * bracket / (p * p * p))
}
