//! Release acceptance gate: eleven numbered end-to-end checks with pinned
//! tolerances, one per headline claim of the simulator. Each test prints a
//! single verdict line (run with `--nocapture` to see them all); a failed
//! assertion carries the measured numbers.
//!
//! Run: `cargo test -p atombs --test acceptance -- --nocapture`

use atombs::amplitude::{
    atom_response, default_time_grid, joint_spectrum, joint_time_distribution,
    ode_reference_amplitudes, path_decomposition, ScatterModel,
};
use atombs::grid::{Grid1D, Grid2D};
use atombs::linear::{linear_coincidence, linear_cross_term, SinglePhotonResponse};
use atombs::moments::{
    coincidence_asymptotic, default_step, default_t_end, delay_scan, integrate_moments,
};
use atombs::oracles::{
    coincidence_monochromatic, coincidence_square_resonant, excitation_square,
    excitation_square_resonant, reflection_square_resonant,
};
use atombs::params::ScatterParams;
use atombs::pulse::{Pulse, PulseKind};
use atombs::quad::simpson_weights;
use atombs::Cplx;

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn square(sigma: f64, delta: f64) -> (ScatterParams<f64>, Pulse<f64>) {
    let params = ScatterParams::new(1.0, delta, sigma, 0.0, PulseKind::Square).unwrap();
    let pulse = params.pulse().unwrap();
    (params, pulse)
}

fn hierarchy_coincidence(sigma: f64, delta: f64) -> f64 {
    let (params, pulse) = square(sigma, delta);
    coincidence_asymptotic(&params, &pulse).unwrap()
}

/// 1. Narrowband sweep over detuning against the monochromatic closed curve,
///    tolerance ±0.02 per point; the resonant point must sit at ≥ 0.98 and
///    the |Δ| = γ point at ≤ 0.05.
///
/// Known shortfall, on record: at Ω/γ = 0.02 the exact finite-bandwidth
/// coincidence on resonance is 0.9412 — the square pulse's sinc wings keep
/// it visibly below the monochromatic limit 1 — so the ≥ 0.98 clause (and
/// the ±0.02 clause at δ = 0) cannot be met by a correct engine at this
/// bandwidth. The check is kept as written and fails honestly.
#[test]
fn acceptance_01_monochromatic_detuning_sweep() {
    let mut rows = Vec::new();
    for &delta in &[0.0, 0.5, 1.0, 2.0, 4.0] {
        let engine = hierarchy_coincidence(0.02, delta);
        rows.push((delta, engine, coincidence_monochromatic(delta)));
    }
    let worst = rows.iter().map(|(_, e, o)| (e - o).abs()).fold(0.0f64, f64::max);
    let at_resonance = rows[0].1;
    let at_gamma = rows[2].1;
    let ok = worst <= 0.02 && at_gamma <= 0.05 && at_resonance >= 0.98;
    println!(
        "[ 1/11] monochromatic detuning sweep: {} (worst |Δ𝒞| = {worst:.4}, 𝒞(δ=0) = {at_resonance:.4}, 𝒞(δ=1) = {at_gamma:.4})",
        verdict(ok)
    );
    assert!(
        ok,
        "sweep (δ, engine, closed form): {rows:?}; worst gap {worst:.4}, resonant point {at_resonance:.4} (required ≥ 0.98, true finite-bandwidth value 0.9412)"
    );
}

/// 2. Square-pulse resonant coincidence against the closed form, |error| ≤
///    1e-3 across two decades of bandwidth; the balanced point is 0.23 ± 0.01.
#[test]
fn acceptance_02_square_coincidence_curve() {
    let mut worst = 0.0f64;
    for &sigma in &[0.1, 0.5, 1.0, 1.25, 2.0, 5.0, 10.0] {
        let gap = (hierarchy_coincidence(sigma, 0.0) - coincidence_square_resonant(sigma).unwrap()).abs();
        worst = worst.max(gap);
    }
    let balanced = hierarchy_coincidence(1.25, 0.0);
    let ok = worst <= 1e-3 && (balanced - 0.23).abs() <= 0.01;
    println!(
        "[ 2/11] square coincidence vs closed form: {} (worst |Δ𝒞| = {worst:.2e}, 𝒞(σ=1.25) = {balanced:.4})",
        verdict(ok)
    );
    assert!(ok, "worst gap {worst:.2e}, balanced-point value {balanced:.4}");
}

/// 3. The saturation signature: at the balanced bandwidth the atomic
///    coincidence sits far below the linear-splitter floor of 1/2.
#[test]
fn acceptance_03_nonlinear_bunching_gap() {
    let atomic = hierarchy_coincidence(1.25, 0.0);
    let pulse = Pulse::<f64>::square(1.25).unwrap();
    let linear = linear_coincidence(&pulse, 0.0, 1.0).unwrap();
    let ok = (linear - 0.50).abs() <= 0.01 && atomic < linear;
    println!(
        "[ 3/11] saturation beats the linear floor: {} (atomic {atomic:.4} < linear {linear:.4})",
        verdict(ok)
    );
    assert!(ok, "atomic {atomic:.4}, linear {linear:.4}");
}

/// 4. Excitation traces against the closed forms (resonant and δ = 1),
///    pointwise to 1e-4 across the pulse window, and the peak-height
///    ordering across bandwidths: σ = 1.25 excites the atom the most.
#[test]
fn acceptance_04_excitation_formulas_and_peak_ordering() {
    let mut worst = 0.0f64;
    let mut peaks = Vec::new();
    for &sigma in &[0.1, 1.25, 10.0] {
        for &delta in &[0.0, 1.0] {
            let params = ScatterParams::new(1.0, delta, sigma, 0.0, PulseKind::Square).unwrap();
            let pulse = params.pulse().unwrap();
            let trace =
                integrate_moments(&params, &pulse, default_t_end(&params, &pulse), default_step(&params))
                    .unwrap();
            for k in 1..=40 {
                let tp = (2.0 / sigma) * (k as f64 / 41.0);
                let formula = if delta == 0.0 {
                    excitation_square_resonant(sigma, tp).unwrap()
                } else {
                    excitation_square(sigma, delta, tp).unwrap()
                };
                worst = worst.max((trace.excitation_at(tp) - formula).abs());
            }
            if delta == 0.0 {
                let peak = trace.excitation().iter().cloned().fold(0.0f64, f64::max);
                peaks.push((sigma, peak));
            }
        }
    }
    let balanced_peak = peaks.iter().find(|(s, _)| *s == 1.25).unwrap().1;
    let ordering = peaks.iter().all(|(s, p)| *s == 1.25 || *p < balanced_peak);
    let ok = worst <= 1e-4 && ordering;
    println!(
        "[ 4/11] excitation closed forms + peak ordering: {} (worst |Δ𝒫ₑ| = {worst:.2e}, peaks {peaks:?})",
        verdict(ok)
    );
    assert!(ok, "worst pointwise gap {worst:.2e}, peaks {peaks:?}");
}

/// 5. The linear reference never beats the 1/2 floor on resonance, for all
///    three pulse families across two decades, and its interference cross
///    term vanishes there.
#[test]
fn acceptance_05_linear_floor_and_cross_term() {
    let sigmas: Vec<f64> = (0..13).map(|k| 0.1 * 10f64.powf(k as f64 / 6.0)).collect();
    let mut min_c = f64::INFINITY;
    let mut max_cross = 0.0f64;
    for kind in [PulseKind::Square, PulseKind::Gaussian, PulseKind::ExpRising] {
        for &sigma in &sigmas {
            let pulse = match kind {
                PulseKind::Square => Pulse::square(sigma),
                PulseKind::Gaussian => Pulse::gaussian(sigma),
                PulseKind::ExpRising => Pulse::exp_rising(sigma),
                PulseKind::Sampled => unreachable!(),
            }
            .unwrap();
            min_c = min_c.min(linear_coincidence(&pulse, 0.0, 1.0).unwrap());
            max_cross = max_cross.max(linear_cross_term(&pulse, 0.0, 1.0).unwrap().norm());
        }
    }
    let ok = min_c >= 0.5 - 1e-6 && max_cross < 1e-10;
    println!(
        "[ 5/11] linear-splitter floor: {} (min 𝒞 = {min_c:.8}, max |cross| = {max_cross:.1e})",
        verdict(ok)
    );
    assert!(ok, "min 𝒞 {min_c}, max cross term {max_cross:.2e}");
}

/// Windowed spectral moments of the linear model on a given axis — the
/// discrete factorization of the linear 2D mass on that axis.
fn windowed_linear_mass(pulse: &Pulse<f64>, axis: &Grid1D<f64>) -> f64 {
    let w = simpson_weights::<f64>(axis.len(), axis.spacing()).unwrap();
    let (mut t, mut r) = (0.0, 0.0);
    let mut j = Cplx::new(0.0, 0.0);
    for (i, wi) in w.iter().enumerate() {
        let nu = axis.at(i);
        let f2 = pulse.spectral_amplitude(nu).norm_sqr();
        let s = SinglePhotonResponse::at(nu);
        t += wi * f2 * s.transmission.norm_sqr();
        r += wi * f2 * s.reflection.norm_sqr();
        j += s.transmission * s.reflection.conj() * (wi * f2);
    }
    t * t + r * r + 2.0 * (j * j).re
}

/// 6. Mass bookkeeping across engines and domains: the sampled detection-time
///    density integrates to the hierarchy's 𝒞 within 1%, and the frequency
///    density carries the same mass (Parseval) within 1%. The spectral
///    window sheds elastic-transmission mass like 1/W; that wing is restored
///    from the linear model's closed form so the 1% compares content, not
///    window truncation.
#[test]
fn acceptance_06_mass_consistency_and_parseval() {
    let mut lines = Vec::new();
    let mut ok = true;
    for &(sigma, half_width, n) in &[(0.1, 12.0, 1201usize), (1.0, 60.0, 1201), (10.0, 120.0, 961)] {
        let (params, pulse) = square(sigma, 0.0);
        let from_moments = coincidence_asymptotic(&params, &pulse).unwrap();

        let tgrid = Grid2D::square(default_time_grid(&pulse, 1.0, 481).unwrap());
        let time_mass = joint_time_distribution(&params, &pulse, None, &tgrid, ScatterModel::Atom)
            .unwrap()
            .normalization();

        let axis = Grid1D::symmetric(half_width, n).unwrap();
        let fgrid = Grid2D::square(axis.clone());
        let raw = joint_spectrum(&params, &pulse, &fgrid, ScatterModel::Atom)
            .unwrap()
            .normalization();
        let r = reflection_square_resonant(sigma).unwrap();
        let linear_exact = r * r + (1.0 - r) * (1.0 - r);
        let freq_mass = raw + (linear_exact - windowed_linear_mass(&pulse, &axis));

        let mass_ok = (time_mass - from_moments).abs() <= 0.01 * from_moments;
        let parseval_ok = (freq_mass - time_mass).abs() <= 0.01 * time_mass;
        ok &= mass_ok && parseval_ok;
        lines.push(format!(
            "σ={sigma}: hierarchy {from_moments:.5}, time {time_mass:.5}, frequency {freq_mass:.5}"
        ));
    }
    println!("[ 6/11] mass consistency + Parseval: {} ({})", verdict(ok), lines.join("; "));
    assert!(ok, "{}", lines.join("\n"));
}

/// 7. Valley geometry of the narrowband detection-time density: zeros on the
///    diagonal at τ = ln2/γ and along the off-diagonal stripe |τ₂−τ₁| =
///    ln2/γ, each within one grid cell, below 1e-4 of the peak.
#[test]
fn acceptance_07_two_time_valleys() {
    let (params, pulse) = square(0.1, 0.0);
    let ln2 = std::f64::consts::LN_2;

    let near = Grid1D::new(0.0, 4.0, 801).unwrap();
    let h = near.spacing();
    let near_dist =
        joint_time_distribution(&params, &pulse, None, &Grid2D::square(near.clone()), ScatterModel::Atom)
            .unwrap();
    let far = Grid1D::new(6.0, 10.0, 801).unwrap();
    let far_dist =
        joint_time_distribution(&params, &pulse, None, &Grid2D::square(far.clone()), ScatterModel::Atom)
            .unwrap();
    let peak = near_dist.max_value().max(far_dist.max_value());

    // Diagonal dip: take the minimum over diagonal nodes within one cell.
    let mut diag_min = f64::INFINITY;
    for (i, t) in near.points().enumerate() {
        if (t - ln2).abs() <= h {
            diag_min = diag_min.min(near_dist.value_at(i, i));
        }
    }

    // Off-diagonal stripe: every row deep in the pulse interior must dip
    // within one cell of the predicted separation.
    let mut stripe_max = 0.0f64;
    for (i, t1) in far.points().enumerate() {
        let want = t1 + ln2;
        if want > far.hi() {
            break;
        }
        let mut row_min = f64::INFINITY;
        for (j, t2) in far.points().enumerate() {
            if (t2 - want).abs() <= h {
                row_min = row_min.min(far_dist.value_at(i, j));
            }
        }
        stripe_max = stripe_max.max(row_min);
    }

    let ok = diag_min < 1e-4 * peak && stripe_max < 1e-4 * peak;
    println!(
        "[ 7/11] detection-time valleys at ln2/γ: {} (diagonal {:.1e}, stripe {:.1e} of peak)",
        verdict(ok),
        diag_min / peak,
        stripe_max / peak
    );
    assert!(ok, "diagonal dip {diag_min:.3e}, stripe max {stripe_max:.3e}, peak {peak:.3e}");
}

/// 8. Reversed interference: on the hyperbola x₁x₂ = −1 the linear model
///    piles up density above its local background while the atomic spectrum
///    is suppressed to ≤ 10% of the linear value at the same points.
///
/// The interference-free background is read off the density itself: the
/// linear cross term is odd under ν₂ → −ν₂ (it flips the sign of x₁x₂)
/// while the envelope and the single-photon magnitudes are even, so the
/// mean of the density at (ν₁, ν₂) and at (ν₁, −ν₂) is exactly the
/// no-interference value at that point. Fully constructive interference on
/// the hyperbola doubles the density over that background.
#[test]
fn acceptance_08_reversed_interference_on_the_anti_locus() {
    let (params, pulse) = square(10.0, 0.0);
    let axis = Grid1D::symmetric(2.5, 201).unwrap();
    let grid = Grid2D::square(axis.clone());
    let atomic = joint_spectrum(&params, &pulse, &grid, ScatterModel::Atom).unwrap();
    let linear = joint_spectrum(&params, &pulse, &grid, ScatterModel::LinearBeamsplitter).unwrap();

    let mut ok = true;
    let mut rows = Vec::new();
    for &x1 in &[0.5, 0.8, 1.0, 1.5, 2.0] {
        let x2 = -1.0 / x1;
        let (i, j) = (axis.nearest(x1), axis.nearest(x2));
        let a = atomic.value_at(i, j);
        let l = linear.value_at(i, j);
        let background = 0.5 * (l + linear.value_at(i, axis.nearest(-x2)));
        let point_ok = a <= 0.10 * l && l >= 1.4 * background;
        ok &= point_ok;
        rows.push(format!(
            "x₁={x1}: atomic/linear = {:.3}, linear/background = {:.2}",
            a / l,
            l / background
        ));
    }
    println!("[ 8/11] reversed interference on x₁x₂ = −1: {} ({})", verdict(ok), rows.join(", "));
    assert!(ok, "{}", rows.join("\n"));
}

/// 9. Delay scan at the balanced narrowband point: deep dip at zero delay,
///    a 0.5 ± 0.05 plateau once the pulses no longer overlap.
#[test]
fn acceptance_09_delay_scan_dip_and_plateau() {
    let params = ScatterParams::<f64>::new(1.0, 1.0, 0.02, 0.0, PulseKind::Square).unwrap();
    let pulse = params.pulse().unwrap();
    let d = pulse.duration();
    let scan = delay_scan(&params, &pulse, &[0.0, d, 1.25 * d]).unwrap();
    let dip = scan[0].1;
    let plateau_ok = scan[1..].iter().all(|(_, c)| (c - 0.5).abs() <= 0.05);
    let ok = dip <= 0.05 && plateau_ok;
    println!(
        "[ 9/11] delay scan: {} (dip {dip:.4}, plateau {:?})",
        verdict(ok),
        scan[1..].iter().map(|(_, c)| (c * 1e4).round() / 1e4).collect::<Vec<_>>()
    );
    assert!(ok, "dip {dip}, scan {scan:?}");
}

/// 10. The pure-ODE reconstruction of the detection-time density agrees with
///     the quadrature construction pointwise to 1e-3 of the peak on a
///     128×128 grid.
#[test]
fn acceptance_10_ode_route_matches_quadrature_route() {
    let (_, pulse) = square(1.0, 0.0);
    let axis = Grid1D::new(-2.0, 14.0, 128).unwrap();
    let n = axis.len();
    let ode = ode_reference_amplitudes(&pulse, 1.0, &axis, 0.004).unwrap();
    let resp = atom_response(&pulse, 1.0, &axis).unwrap();

    let mut peak = 0.0f64;
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let quad = path_decomposition(&resp, i, &resp, j, None, ScatterModel::Atom)
                .total()
                .norm_sqr();
            let alt = ode[i * n + j].norm_sqr();
            peak = peak.max(quad);
            worst = worst.max((quad - alt).abs());
        }
    }
    let ok = worst <= 1e-3 * peak;
    println!(
        "[10/11] ODE route vs quadrature route: {} (worst gap {:.2e} of peak)",
        verdict(ok),
        worst / peak
    );
    assert!(ok, "worst |Δ𝒮| = {worst:.3e}, peak {peak:.3e}");
}

/// 11. Bandwidth curves for the Gaussian and rising-exponential families:
///     single-valley shape, a dip below the linear 1/2 floor near σ ≈ 1, and
///     recovery of unit coincidence in the narrowband limit within 0.03.
///
/// Known shortfall, on record: at σ = 0.02 both families still sit ≈ 0.94
/// (the same finite-bandwidth physics as the square pulse, which reaches
/// 0.9412 there), so the ≤ 0.03 convergence clause fails honestly for both.
#[test]
fn acceptance_11_smooth_family_bandwidth_curves() {
    let sigmas = [
        0.02, 0.05, 0.1, 0.2, 0.35, 0.5, 0.7, 1.0, 1.25, 1.6, 2.0, 3.0, 5.0, 7.0, 10.0,
    ];
    let mut ok = true;
    let mut summary = Vec::new();
    for kind in [PulseKind::Gaussian, PulseKind::ExpRising] {
        let curve: Vec<f64> = sigmas
            .iter()
            .map(|&s| {
                let params = ScatterParams::<f64>::resonant(s, kind).unwrap();
                let pulse = params.pulse().unwrap();
                coincidence_asymptotic(&params, &pulse).unwrap()
            })
            .collect();

        // Single valley: strictly descending, then strictly ascending,
        // with 1e-4 slack for solver noise.
        let mut rising = false;
        let mut unimodal = true;
        for w in curve.windows(2) {
            if w[1] > w[0] + 1e-4 {
                rising = true;
            } else if w[1] < w[0] - 1e-4 && rising {
                unimodal = false;
            }
        }
        let dip = sigmas
            .iter()
            .zip(&curve)
            .filter(|(s, _)| (0.5..=2.0).contains(*s))
            .map(|(_, c)| *c)
            .fold(f64::INFINITY, f64::min);
        let narrowband_gap = (curve[0] - 1.0).abs();
        ok &= unimodal && dip < 0.5 && narrowband_gap <= 0.03;
        summary.push(format!(
            "{kind}: dip {dip:.3}, 𝒞(σ=0.02) = {:.4}, unimodal {unimodal}",
            curve[0]
        ));
    }
    println!("[11/11] family bandwidth curves: {} ({})", verdict(ok), summary.join("; "));
    assert!(
        ok,
        "{} — the narrowband clause asks ≤ 0.03 from unit coincidence; the true value at σ = 0.02 is ≈ 0.94 for every family",
        summary.join("\n")
    );
}
