//! Expectation-value hierarchy for the two-photon scattering event.
//!
//! Working in the Heisenberg picture with the atom's rotating frame, the
//! equations of motion for {pair counters, photon numbers, σ̂₊, σ̂_z and
//! their products} close after the free-pulse operators â₀, b̂₀ are
//! commuted to the right (annihilators) or left (creators): each
//! application removes one photon from the two-photon input, so every
//! matrix element that appears is taken between one of four fixed states —
//! the full input |1_a,1_b,g⟩, the one-photon remainders |1_a,0_b,g⟩ and
//! |0_a,1_b,g⟩, and the vacuum |∅⟩. The only explicit time dependence on
//! any right-hand side is the pair of drive envelopes
//!
//! ```text
//!     u(t) = e^(−iΔt) ξ_a(t) ,     v(t) = e^(−iΔt) ξ_b(t) = e^(−iΔt) ξ_a(t − τ_d) ,
//! ```
//!
//! making the system a finite set of linear, driven first-order ODEs. The
//! closure has 19 members when the two pulses are identical and
//! simultaneous (exchange symmetry then pins the mirror moments), and 11
//! mirror members more when a delay breaks that symmetry.
//!
//! The members are kept in a dependency-ordered list — vacuum-sector
//! coherences first, one-photon moments next, two-photon moments last — so
//! every right-hand side only reads slots at or below its own index. The
//! whole list is advanced together by one Runge–Kutta pass (the triangular
//! structure makes that identical to solving level by level), and the
//! per-level accessors let tests pin each tier against its own closed form
//! before the tiers above it are trusted.
//!
//! Physical outputs:
//!
//! * excitation probability 𝒫ₑ(t) = (Re⟨σ̂_z⟩ + 1)/2;
//! * same-mode pair probabilities P_aa(t), P_bb(t);
//! * coincidence 𝒞(t) = 1 − P_aa − P_bb, whose t → ∞ limit is the
//!   probability that the two photons leave in opposite directions.

use crate::error::{Error, Result};
use crate::num::{re, Cplx, Real};
use crate::ode::integrate_segmented;
use crate::params::ScatterParams;
use crate::pulse::Pulse;

/// Slot indices of the tracked matrix elements, dependency-ordered.
///
/// Notation in the slot docs: ⟨L|Ô|R⟩ with |2⟩ the two-photon input,
/// |a⟩, |b⟩ the one-photon remainders (photon left in mode a or b), and
/// |∅⟩ the vacuum. `N_a`, `N_b` are mode photon numbers; `P_aa`
/// abbreviates the same-mode pair counter (N_a² − N_a)/2.
pub mod slot {
    /// ⟨a|σ̂₊|∅⟩ — vacuum-sector coherence fed by pulse a.
    pub const COH_A0: usize = 0;
    /// ⟨b|σ̂₊|∅⟩ — vacuum-sector coherence fed by pulse b.
    pub const COH_B0: usize = 1;
    /// ⟨a|σ̂_z|a⟩ — atomic inversion under single-photon drive a.
    pub const SZ_AA: usize = 2;
    /// ⟨b|σ̂_z|b⟩ — atomic inversion under single-photon drive b.
    pub const SZ_BB: usize = 3;
    /// ⟨a|σ̂_z|b⟩ — inversion-weighted overlap of the two one-photon paths.
    pub const SZ_AB: usize = 4;
    /// ⟨a|N̂_a|a⟩ — forward photon number, single-photon sector a.
    pub const NA_AA: usize = 5;
    /// ⟨b|N̂_a|b⟩ — forward photon number fed only by atomic re-emission.
    pub const NA_BB: usize = 6;
    /// ⟨a|N̂_a|b⟩ — cross-path forward photon number.
    pub const NA_AB: usize = 7;
    /// ⟨a|N̂_a σ̂_z|a⟩.
    pub const NASZ_AA: usize = 8;
    /// ⟨b|N̂_a σ̂_z|b⟩.
    pub const NASZ_BB: usize = 9;
    /// ⟨a|N̂_a σ̂_z|b⟩.
    pub const NASZ_AB: usize = 10;
    /// ⟨2|σ̂₊|b⟩ — two-photon coherence, photon a absorbed.
    pub const COH2_B: usize = 11;
    /// ⟨2|σ̂₊|a⟩ — two-photon coherence, photon b absorbed.
    pub const COH2_A: usize = 12;
    /// ⟨2|N̂_a σ̂₊|b⟩.
    pub const NACOH2_B: usize = 13;
    /// ⟨2|N̂_a σ̂₊|a⟩.
    pub const NACOH2_A: usize = 14;
    /// ⟨2|σ̂_z|2⟩ — atomic inversion under the full two-photon drive.
    pub const SZ_22: usize = 15;
    /// ⟨2|N̂_a|2⟩ — forward photon number, two-photon sector.
    pub const NA_22: usize = 16;
    /// ⟨2|N̂_a σ̂_z|2⟩.
    pub const NASZ_22: usize = 17;
    /// ⟨2|P̂_aa|2⟩ — probability of both photons in mode a.
    pub const PAIR_AA: usize = 18;
    /// ⟨a|N̂_b|a⟩ (mirror block, integrated when the delay breaks a↔b).
    pub const NB_AA: usize = 19;
    /// ⟨b|N̂_b|b⟩.
    pub const NB_BB: usize = 20;
    /// ⟨a|N̂_b|b⟩.
    pub const NB_AB: usize = 21;
    /// ⟨a|N̂_b σ̂_z|a⟩.
    pub const NBSZ_AA: usize = 22;
    /// ⟨b|N̂_b σ̂_z|b⟩.
    pub const NBSZ_BB: usize = 23;
    /// ⟨a|N̂_b σ̂_z|b⟩.
    pub const NBSZ_AB: usize = 24;
    /// ⟨2|N̂_b σ̂₊|a⟩.
    pub const NBCOH2_A: usize = 25;
    /// ⟨2|N̂_b σ̂₊|b⟩.
    pub const NBCOH2_B: usize = 26;
    /// ⟨2|N̂_b|2⟩ — backward photon number, two-photon sector.
    pub const NB_22: usize = 27;
    /// ⟨2|N̂_b σ̂_z|2⟩.
    pub const NBSZ_22: usize = 28;
    /// ⟨2|P̂_bb|2⟩ — probability of both photons in mode b.
    pub const PAIR_BB: usize = 29;
}

/// Member count with exchange symmetry (identical simultaneous pulses).
pub const N_SYMMETRIC: usize = 19;
/// Member count with the mirror block (delayed pulse b).
pub const N_FULL: usize = 30;

/// Whether the mirror moments are pinned by symmetry or integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentMode {
    /// Zero delay, identical pulses: a↔b exchange symmetry makes the mirror
    /// block redundant; only the 19 independent members are integrated.
    Symmetric,
    /// The mirror block is integrated explicitly (required when delay > 0;
    /// usable at zero delay as a consistency check).
    Full,
}

impl MomentMode {
    pub fn len(&self) -> usize {
        match self {
            MomentMode::Symmetric => N_SYMMETRIC,
            MomentMode::Full => N_FULL,
        }
    }
}

/// The tracked expectation values at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentVector<S: Real> {
    values: Vec<Cplx<S>>,
}

impl<S: Real> MomentVector<S> {
    /// State before the pulses arrive: atom in the ground state, one photon
    /// in each input mode — stationary under the undriven equations.
    fn initial(mode: MomentMode) -> Self {
        let mut v = vec![re(S::zero()); mode.len()];
        let minus_one = re(-S::one());
        let one = re(S::one());
        v[slot::SZ_AA] = minus_one;
        v[slot::SZ_BB] = minus_one;
        v[slot::SZ_22] = minus_one;
        v[slot::NA_AA] = one;
        v[slot::NA_22] = one;
        v[slot::NASZ_AA] = minus_one;
        v[slot::NASZ_22] = minus_one;
        if mode == MomentMode::Full {
            v[slot::NB_BB] = one;
            v[slot::NB_22] = one;
            v[slot::NBSZ_BB] = minus_one;
            v[slot::NBSZ_22] = minus_one;
        }
        Self { values: v }
    }

    pub fn mode(&self) -> MomentMode {
        if self.values.len() == N_FULL { MomentMode::Full } else { MomentMode::Symmetric }
    }

    /// Raw access by [`slot`] index (mirror slots only in Full mode).
    pub fn get(&self, index: usize) -> Cplx<S> {
        self.values[index]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Atomic excitation probability 𝒫ₑ = (Re⟨2|σ̂_z|2⟩ + 1)/2.
    pub fn excitation(&self) -> S {
        (self.values[slot::SZ_22].re + S::one()) / S::lit(2.0)
    }

    /// Excitation probability of the atom if only photon a had been sent:
    /// (Re⟨a|σ̂_z|a⟩ + 1)/2 — the single-photon tier of the hierarchy.
    pub fn excitation_single_a(&self) -> S {
        (self.values[slot::SZ_AA].re + S::one()) / S::lit(2.0)
    }

    /// Probability of both photons in the forward mode.
    pub fn pair_aa(&self) -> S {
        self.values[slot::PAIR_AA].re
    }

    /// Probability of both photons in the backward mode (mirror of
    /// [`Self::pair_aa`] in symmetric mode).
    pub fn pair_bb(&self) -> S {
        match self.mode() {
            MomentMode::Symmetric => self.values[slot::PAIR_AA].re,
            MomentMode::Full => self.values[slot::PAIR_BB].re,
        }
    }

    /// Coincidence 𝒞 = 1 − P_aa − P_bb.
    pub fn coincidence(&self) -> S {
        S::one() - self.pair_aa() - self.pair_bb()
    }

    /// ⟨2|N̂_a|2⟩ + ⟨2|N̂_b|2⟩ + 2𝒫ₑ — conserved and equal to 2 photons.
    /// In symmetric mode ⟨N̂_b⟩ = ⟨N̂_a⟩ by exchange symmetry.
    pub fn total_quanta(&self) -> S {
        let na = self.values[slot::NA_22].re;
        let nb = match self.mode() {
            MomentMode::Symmetric => na,
            MomentMode::Full => self.values[slot::NB_22].re,
        };
        na + nb + self.excitation()
    }
}

/// Time-resolved integration output.
#[derive(Debug, Clone)]
pub struct MomentTrace<S: Real> {
    times: Vec<S>,
    vectors: Vec<MomentVector<S>>,
    excitation: Vec<S>,
    pair_aa: Vec<S>,
    pair_bb: Vec<S>,
    coincidence: Vec<S>,
}

impl<S: Real> MomentTrace<S> {
    pub fn times(&self) -> &[S] {
        &self.times
    }

    pub fn vectors(&self) -> &[MomentVector<S>] {
        &self.vectors
    }

    /// 𝒫ₑ(t) series.
    pub fn excitation(&self) -> &[S] {
        &self.excitation
    }

    pub fn pair_aa(&self) -> &[S] {
        &self.pair_aa
    }

    pub fn pair_bb(&self) -> &[S] {
        &self.pair_bb
    }

    /// 𝒞(t) series.
    pub fn coincidence(&self) -> &[S] {
        &self.coincidence
    }

    pub fn final_coincidence(&self) -> S {
        *self.coincidence.last().expect("non-empty trace")
    }

    pub fn final_vector(&self) -> &MomentVector<S> {
        self.vectors.last().expect("non-empty trace")
    }

    /// |d𝒞/dt| at the end of the window (backward difference) — the
    /// asymptotic-convergence diagnostic.
    pub fn final_slope(&self) -> S {
        let n = self.times.len();
        if n < 2 {
            return S::zero();
        }
        let dc = self.coincidence[n - 1] - self.coincidence[n - 2];
        let dt = self.times[n - 1] - self.times[n - 2];
        (dc / dt).abs()
    }

    /// Probability that a lone photon sent in mode a would have been
    /// reflected, read off the single-photon tier: 1 − ⟨a|N̂_a(∞)|a⟩.
    pub fn single_photon_reflection(&self) -> S {
        S::one() - self.final_vector().get(slot::NA_AA).re
    }

    /// 𝒫ₑ(t) interpolated at an arbitrary time (linear between steps).
    pub fn excitation_at(&self, t: S) -> S {
        let times = &self.times;
        if t <= times[0] {
            return self.excitation[0];
        }
        if t >= *times.last().unwrap() {
            return *self.excitation.last().unwrap();
        }
        // Binary search for the bracketing step pair.
        let mut lo = 0;
        let mut hi = times.len() - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if times[mid] <= t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let w = (t - times[lo]) / (times[hi] - times[lo]);
        self.excitation[lo] * (S::one() - w) + self.excitation[hi] * w
    }
}

/// Drive-dependent right-hand side of the hierarchy. `y` and `out` hold
/// either the 19 symmetric members or all 30; the first 19 lines never read
/// the mirror block.
fn hierarchy_rhs<S: Real>(gamma: S, u: Cplx<S>, v: Cplx<S>, y: &[Cplx<S>], out: &mut [Cplx<S>]) {
    use slot::*;
    let g = gamma;
    let sg = gamma.sqrt();
    let one = re(S::one());
    let two = S::lit(2.0);
    let half = S::lit(0.5);
    let quarter = S::lit(0.25);
    let uc = u.conj();
    let vc = v.conj();

    // --- vacuum-sector coherences -------------------------------------
    out[COH_A0] = -y[COH_A0] * g - uc * sg;
    out[COH_B0] = -y[COH_B0] * g - vc * sg;

    // --- one-photon tier ------------------------------------------------
    let drive_a = u * y[COH_A0]; // σ̂₊ drive in the a-path
    let drive_b = v * y[COH_B0];
    out[SZ_AA] = (one + y[SZ_AA]) * (-two * g) - (drive_a + drive_a.conj()) * (two * sg);
    out[SZ_BB] = (one + y[SZ_BB]) * (-two * g) - (drive_b + drive_b.conj()) * (two * sg);
    let cross = v * y[COH_A0] + uc * y[COH_B0].conj();
    out[SZ_AB] = y[SZ_AB] * (-two * g) - cross * (two * sg);

    out[NA_AA] = (one + y[SZ_AA]) * (g * half) + (drive_a + drive_a.conj()) * sg;
    out[NA_BB] = (one + y[SZ_BB]) * (g * half);
    out[NA_AB] = y[SZ_AB] * (g * half) + uc * y[COH_B0].conj() * sg;

    out[NASZ_AA] = (y[NASZ_AA] + y[NA_AA] + (one + y[SZ_AA]) * quarter) * (-two * g)
        - (drive_a + drive_a.conj()) * sg;
    out[NASZ_BB] = (y[NASZ_BB] + y[NA_BB] + (one + y[SZ_BB]) * quarter) * (-two * g);
    out[NASZ_AB] = (y[NASZ_AB] + y[NA_AB] + y[SZ_AB] * quarter) * (-two * g)
        - uc * y[COH_B0].conj() * sg;

    // --- two-photon tier (forward-mode moments) -------------------------
    out[COH2_B] = -y[COH2_B] * g + (uc * y[SZ_BB] + vc * y[SZ_AB]) * sg;
    out[COH2_A] = -y[COH2_A] * g + (uc * y[SZ_AB].conj() + vc * y[SZ_AA]) * sg;

    out[NACOH2_B] = -y[NACOH2_B] * g
        + (uc * (one + y[SZ_BB]) * half + uc * y[NASZ_BB] + vc * y[NASZ_AB]) * sg;
    out[NACOH2_A] = -y[NACOH2_A] * g
        + (uc * y[SZ_AB].conj() * half + uc * y[NASZ_AB].conj() + vc * y[NASZ_AA]) * sg;

    let drive2 = u * y[COH2_B] + v * y[COH2_A];
    out[SZ_22] = (one + y[SZ_22]) * (-two * g) - (drive2 + drive2.conj()) * (two * sg);
    let drive2a = u * y[COH2_B];
    out[NA_22] = (one + y[SZ_22]) * (g * half) + (drive2a + drive2a.conj()) * sg;

    let nadrive = (u * y[NACOH2_B] + v * y[NACOH2_A]) * two + u * y[COH2_B];
    out[NASZ_22] = (y[NASZ_22] + y[NA_22] + (one + y[SZ_22]) * quarter) * (-two * g)
        - (nadrive + nadrive.conj()) * sg;

    let pair_drive = u * y[NACOH2_B];
    out[PAIR_AA] = (y[NA_22] + y[NASZ_22]) * (g * half) + (pair_drive + pair_drive.conj()) * sg;

    if y.len() == N_SYMMETRIC {
        return;
    }

    // --- mirror block: backward-mode moments ----------------------------
    out[NB_AA] = (one + y[SZ_AA]) * (g * half);
    out[NB_BB] = (one + y[SZ_BB]) * (g * half) + (drive_b + drive_b.conj()) * sg;
    out[NB_AB] = y[SZ_AB] * (g * half) + v * y[COH_A0] * sg;

    out[NBSZ_AA] = (y[NBSZ_AA] + y[NB_AA] + (one + y[SZ_AA]) * quarter) * (-two * g);
    out[NBSZ_BB] = (y[NBSZ_BB] + y[NB_BB] + (one + y[SZ_BB]) * quarter) * (-two * g)
        - (drive_b + drive_b.conj()) * sg;
    out[NBSZ_AB] = (y[NBSZ_AB] + y[NB_AB] + y[SZ_AB] * quarter) * (-two * g)
        - v * y[COH_A0] * sg;

    out[NBCOH2_A] = -y[NBCOH2_A] * g
        + (vc * (one + y[SZ_AA]) * half + uc * y[NBSZ_AB].conj() + vc * y[NBSZ_AA]) * sg;
    out[NBCOH2_B] = -y[NBCOH2_B] * g
        + (vc * y[SZ_AB] * half + uc * y[NBSZ_BB] + vc * y[NBSZ_AB]) * sg;

    let drive2b = v * y[COH2_A];
    out[NB_22] = (one + y[SZ_22]) * (g * half) + (drive2b + drive2b.conj()) * sg;

    let nbdrive = (u * y[NBCOH2_B] + v * y[NBCOH2_A]) * two + v * y[COH2_A];
    out[NBSZ_22] = (y[NBSZ_22] + y[NB_22] + (one + y[SZ_22]) * quarter) * (-two * g)
        - (nbdrive + nbdrive.conj()) * sg;

    let pair_drive_b = v * y[NBCOH2_A];
    out[PAIR_BB] = (y[NB_22] + y[NBSZ_22]) * (g * half) + (pair_drive_b + pair_drive_b.conj()) * sg;
}

fn check_setup<S: Real>(params: &ScatterParams<S>, pulse: &Pulse<S>, t_end: S, dt: S) -> Result<()> {
    params.validate()?;
    let rel = (pulse.bandwidth() - params.bandwidth).abs() / params.bandwidth;
    if rel > S::lit(1e-9) {
        return Err(Error::InvalidParameter(format!(
            "pulse bandwidth {} does not match configured bandwidth {}",
            pulse.bandwidth(),
            params.bandwidth
        )));
    }
    let dt_max = (params.gamma.recip()).min(params.bandwidth.recip()) / S::lit(50.0);
    if dt > dt_max * S::lit(1.0 + 1e-9) {
        return Err(Error::InvalidParameter(format!(
            "step {dt} too coarse: need dt ≤ min(1/γ, 1/Ω)/50 = {dt_max}"
        )));
    }
    let needed = pulse.end_time() + params.delay + S::lit(10.0) / params.gamma;
    if t_end < needed {
        return Err(Error::InvalidParameter(format!(
            "window ends at {t_end} but asymptotics need t_end ≥ pulse end + 10/γ = {needed}"
        )));
    }
    Ok(())
}

/// Largest admissible (and default) time step, min(1/γ, 1/Ω)/50.
pub fn default_step<S: Real>(params: &ScatterParams<S>) -> S {
    (params.gamma.recip()).min(params.bandwidth.recip()) / S::lit(50.0)
}

/// Default integration horizon: last pulse end + 15/γ, by which time the
/// leftover atomic population e^(−2γ·15) ≈ 10⁻¹³ cannot move 𝒞 anymore.
pub fn default_t_end<S: Real>(params: &ScatterParams<S>, pulse: &Pulse<S>) -> S {
    pulse.end_time() + params.delay + S::lit(15.0) / params.gamma
}

/// Integrate the hierarchy over [pulse start, t_end], choosing the mode
/// from the delay (symmetric at τ_d = 0, full otherwise).
pub fn integrate_moments<S: Real>(
    params: &ScatterParams<S>,
    pulse: &Pulse<S>,
    t_end: S,
    dt: S,
) -> Result<MomentTrace<S>> {
    let mode = if params.delay == S::zero() { MomentMode::Symmetric } else { MomentMode::Full };
    integrate_moments_with_mode(params, pulse, t_end, dt, mode)
}

/// Integrate with an explicit [`MomentMode`]. Running Full at zero delay is
/// redundant but legal; it cross-checks the symmetry reduction. Symmetric
/// mode with a nonzero delay is rejected.
pub fn integrate_moments_with_mode<S: Real>(
    params: &ScatterParams<S>,
    pulse: &Pulse<S>,
    t_end: S,
    dt: S,
    mode: MomentMode,
) -> Result<MomentTrace<S>> {
    check_setup(params, pulse, t_end, dt)?;
    if mode == MomentMode::Symmetric && params.delay != S::zero() {
        return Err(Error::InvalidParameter(
            "a nonzero delay breaks exchange symmetry; use Full mode".into(),
        ));
    }

    let gamma = params.gamma;
    let delta = params.detuning;
    let delay = params.delay;
    let t_start = pulse.start_time();

    let mut breakpoints = pulse.breakpoints();
    if delay > S::zero() {
        for b in pulse.breakpoints() {
            breakpoints.push(b + delay);
        }
    }

    let y0 = MomentVector::<S>::initial(mode);
    let mut times: Vec<S> = Vec::new();
    let mut vectors: Vec<MomentVector<S>> = Vec::new();
    let mut excitation: Vec<S> = Vec::new();
    let mut pair_aa: Vec<S> = Vec::new();
    let mut pair_bb: Vec<S> = Vec::new();
    let mut coincidence: Vec<S> = Vec::new();

    let bound_lo = -S::lit(1e-6);
    let bound_hi = S::one() + S::lit(1e-6);

    let rhs = |t: S, y: &[Cplx<S>], hint: S, out: &mut [Cplx<S>]| {
        // Rotating-frame drives: the detuning enters only through the
        // carrier phase on the envelopes.
        let phase = Cplx::from_polar(S::one(), -delta * t);
        let u = phase * pulse.piece_value(t, hint);
        let v = phase * pulse.piece_value(t - delay, hint - delay);
        hierarchy_rhs(gamma, u, v, y, out);
    };

    let observe = |t: S, y: &[Cplx<S>]| -> Result<()> {
        let vector = MomentVector { values: y.to_vec() };
        let pe = vector.excitation();
        let paa = vector.pair_aa();
        let pbb = vector.pair_bb();
        let c = S::one() - paa - pbb;
        for (name, value) in [("excitation", pe), ("coincidence", c)] {
            if value < bound_lo || value > bound_hi {
                return Err(Error::StepSizeRejected(format!(
                    "{name} left [0, 1] at t = {t} (value {value}); refine dt"
                )));
            }
        }
        if paa < bound_lo || pbb < bound_lo {
            return Err(Error::StepSizeRejected(format!(
                "pair probability went negative at t = {t} ({paa}, {pbb}); refine dt"
            )));
        }
        times.push(t);
        excitation.push(pe);
        pair_aa.push(paa);
        pair_bb.push(pbb);
        coincidence.push(c);
        vectors.push(vector);
        Ok(())
    };

    integrate_segmented(&y0.values, t_start, t_end, dt, &breakpoints, rhs, observe)?;

    Ok(MomentTrace { times, vectors, excitation, pair_aa, pair_bb, coincidence })
}

/// Asymptotic coincidence with default step and horizon, guarded by the
/// convergence check |d𝒞/dt| < 10⁻⁸γ at the end of the window.
pub fn coincidence_asymptotic<S: Real>(params: &ScatterParams<S>, pulse: &Pulse<S>) -> Result<S> {
    let trace = integrate_moments(params, pulse, default_t_end(params, pulse), default_step(params))?;
    let slope = trace.final_slope();
    if slope > S::lit(1e-8) * params.gamma {
        return Err(Error::StepSizeRejected(format!(
            "coincidence still drifting at window end (|d𝒞/dt| = {slope}); extend t_end"
        )));
    }
    Ok(trace.final_coincidence())
}

/// 𝒫ₑ(t) series of a trace (freestanding spelling of
/// [`MomentTrace::excitation`]).
pub fn excitation_probability<S: Real>(trace: &MomentTrace<S>) -> &[S] {
    trace.excitation()
}

/// Sweep the arrival delay of pulse b and report (delay, asymptotic 𝒞).
pub fn delay_scan<S: Real>(
    params: &ScatterParams<S>,
    pulse: &Pulse<S>,
    delays: &[S],
) -> Result<Vec<(S, S)>> {
    let mut out = Vec::with_capacity(delays.len());
    for &d in delays {
        if d < S::zero() {
            return Err(Error::InvalidParameter(format!("delay must be ≥ 0, got {d}")));
        }
        let p = ScatterParams { delay: d, ..params.clone() };
        out.push((d, coincidence_asymptotic(&p, pulse)?));
    }
    Ok(out)
}
