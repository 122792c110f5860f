//! The five computations behind the subcommands. Each returns a [`Table`]
//! plus grid metadata and, where the data is a density, the normalization
//! it integrates to. Sweeps fan out over a rayon pool; everything else is
//! serial.

use crate::config::{CommandKind, DomainKind, PulseFamily, ReferenceKind, RunConfig, SweepVar};
use crate::output::Table;
use atombs::amplitude::{
    default_time_grid, joint_spectrum, joint_time_distribution, marginal_time_distribution,
    ScatterModel,
};
use atombs::grid::{Grid1D, Grid2D};
use atombs::linear::linear_coincidence;
use atombs::moments::{coincidence_asymptotic, default_step, default_t_end, integrate_moments};
use atombs::oracles::{coincidence_monochromatic, coincidence_square_resonant};
use atombs::params::ScatterParams;
use atombs::pulse::Pulse;
use atombs::{Error, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

pub struct CommandOutput {
    pub table: Table,
    pub grid: Value,
    pub normalization: Option<f64>,
}

pub fn run(cfg: &RunConfig) -> Result<CommandOutput> {
    match cfg.command {
        CommandKind::Coincidence => coincidence(cfg),
        CommandKind::Excitation => excitation(cfg),
        CommandKind::Joint => joint(cfg),
        CommandKind::DelayScan => delay_scan(cfg),
        CommandKind::Marginal => marginal(cfg),
    }
}

fn params(cfg: &RunConfig, detuning: f64, bandwidth: f64, delay: f64) -> Result<ScatterParams<f64>> {
    ScatterParams::new(cfg.gamma, detuning, bandwidth, delay, cfg.pulse.kind())
}

fn pulse_for(cfg: &RunConfig, p: &ScatterParams<f64>) -> Result<Pulse<f64>> {
    match cfg.pulse {
        PulseFamily::Sampled => {
            let path = cfg.pulse_file.as_deref().ok_or_else(|| {
                Error::InvalidParameter("pulse = sampled needs pulse_file (--pulse-file)".into())
            })?;
            Pulse::from_csv(path)
        }
        _ => p.pulse(),
    }
}

fn model_for(reference: ReferenceKind) -> ScatterModel {
    match reference {
        ReferenceKind::Atom => ScatterModel::Atom,
        ReferenceKind::Linear => ScatterModel::LinearBeamsplitter,
    }
}

/// Sweep values, linear or geometric.
fn sweep_values(lo: f64, hi: f64, n: usize, log: bool) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidParameter("sweep_points must be at least 1".into()));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    if log && (lo <= 0.0 || hi <= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "a logarithmic sweep needs positive endpoints, got [{lo}, {hi}]"
        )));
    }
    let m = (n - 1) as f64;
    Ok((0..n)
        .map(|k| {
            let s = k as f64 / m;
            if log {
                lo * (hi / lo).powf(s)
            } else {
                lo + (hi - lo) * s
            }
        })
        .collect())
}

fn sweep_grid_meta(var: &str, lo: f64, hi: f64, n: usize, log: bool) -> Value {
    json!({ "sweep": var, "lo": lo, "hi": hi, "points": n, "log": log })
}

/// Closed form covering the current coincidence configuration, if any.
enum CoincidenceOracle {
    /// Monochromatic-limit curve in the detuning; valid for narrowband
    /// square pulses.
    Monochromatic,
    /// Resonant square-pulse curve in the bandwidth.
    SquareResonant,
}

fn coincidence_oracle(cfg: &RunConfig) -> Option<CoincidenceOracle> {
    if cfg.pulse != PulseFamily::Square || cfg.delay != 0.0 {
        return None;
    }
    match cfg.sweep {
        SweepVar::Bandwidth if cfg.detuning == 0.0 => Some(CoincidenceOracle::SquareResonant),
        SweepVar::Detuning if cfg.bandwidth / cfg.gamma <= 0.05 => {
            Some(CoincidenceOracle::Monochromatic)
        }
        _ => None,
    }
}

fn coincidence(cfg: &RunConfig) -> Result<CommandOutput> {
    let xs = sweep_values(cfg.sweep_lo, cfg.sweep_hi, cfg.sweep_points, cfg.sweep_log)?;
    let oracle = coincidence_oracle(cfg);

    let rows: Vec<Vec<f64>> = xs
        .par_iter()
        .map(|&x| -> Result<Vec<f64>> {
            let (detuning, bandwidth) = match cfg.sweep {
                SweepVar::Detuning => (x, cfg.bandwidth),
                SweepVar::Bandwidth => (cfg.detuning, x),
            };
            let p = params(cfg, detuning, bandwidth, cfg.delay)?;
            let pulse = pulse_for(cfg, &p)?;
            let atomic = coincidence_asymptotic(&p, &pulse)?;
            let lin = linear_coincidence(&pulse, detuning, cfg.gamma)?;
            let mut row = vec![x, atomic, lin];
            match oracle {
                Some(CoincidenceOracle::Monochromatic) => {
                    row.push(coincidence_monochromatic(detuning / cfg.gamma));
                }
                Some(CoincidenceOracle::SquareResonant) => {
                    row.push(coincidence_square_resonant(bandwidth / cfg.gamma)?);
                }
                None => {}
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;

    let mut columns = vec!["x".to_string(), "c_atomic".into(), "c_linear".into()];
    if oracle.is_some() {
        columns.push("c_oracle".into());
    }
    Ok(CommandOutput {
        table: Table::new(columns, rows),
        grid: sweep_grid_meta(
            cfg.sweep.as_str(),
            cfg.sweep_lo,
            cfg.sweep_hi,
            cfg.sweep_points,
            cfg.sweep_log,
        ),
        normalization: None,
    })
}

fn excitation(cfg: &RunConfig) -> Result<CommandOutput> {
    if cfg.bandwidths.is_empty() {
        return Err(Error::InvalidParameter("bandwidths must name at least one value".into()));
    }
    let traces = cfg
        .bandwidths
        .par_iter()
        .map(|&bw| -> Result<_> {
            let p = params(cfg, cfg.detuning, bw, cfg.delay)?;
            let pulse = pulse_for(cfg, &p)?;
            let trace = integrate_moments(&p, &pulse, default_t_end(&p, &pulse), default_step(&p))?;
            Ok(trace)
        })
        .collect::<Result<Vec<_>>>()?;

    let t_hi = traces
        .iter()
        .map(|tr| *tr.times().last().unwrap())
        .fold(0.0f64, f64::max);
    let n = 1001usize;
    let step = t_hi / (n - 1) as f64;
    let mut ts: Vec<f64> = (0..n).map(|k| step * k as f64).collect();
    // A broadband pulse peaks sharply early on the shared axis; snap the
    // nearest interior sample onto each trace's own maximum node so the
    // resampled column cannot clip its peak.
    for tr in &traces {
        let (mut t_peak, mut best) = (0.0, f64::MIN);
        for (&t, &pe) in tr.times().iter().zip(tr.excitation()) {
            if pe > best {
                (t_peak, best) = (t, pe);
            }
        }
        let k = (t_peak / step).round() as usize;
        if (1..n - 1).contains(&k) {
            ts[k] = t_peak;
        }
    }
    let rows: Vec<Vec<f64>> = ts
        .into_iter()
        .map(|t| {
            let mut row = Vec::with_capacity(traces.len() + 1);
            row.push(t);
            row.extend(traces.iter().map(|tr| tr.excitation_at(t)));
            row
        })
        .collect();

    let mut columns = vec!["t".to_string()];
    columns.extend(cfg.bandwidths.iter().map(|bw| format!("pe_{bw}")));
    Ok(CommandOutput {
        table: Table::new(columns, rows),
        grid: json!({ "lo": 0.0, "hi": t_hi, "points": n }),
        normalization: None,
    })
}

/// Square 2D grid axis for the joint density. With no explicit edges the
/// time axis is auto-fitted to the pulse (edges chosen so the sharp pulse
/// breakpoints land on interior even-index nodes, which keeps Simpson
/// integrals of the output second-order accurate); explicit edges are taken
/// as given. The frequency default covers the band where the atomic
/// response lives.
fn density_axis(cfg: &RunConfig, pulse: &Pulse<f64>) -> Result<Grid1D<f64>> {
    let n = cfg.grid_points.unwrap_or(201);
    match cfg.domain {
        DomainKind::Time => {
            if cfg.grid_lo.is_none() && cfg.grid_hi.is_none() {
                return default_time_grid(pulse, cfg.gamma, n);
            }
            let lo = cfg.grid_lo.unwrap_or(0.0);
            let hi = cfg.grid_hi.unwrap_or(pulse.end_time() + 5.0 / cfg.gamma);
            Grid1D::new(lo, hi, n)
        }
        DomainKind::Frequency => {
            let half = (2.5 * cfg.gamma).max(0.25 * cfg.bandwidth);
            let lo = cfg.grid_lo.unwrap_or(-half);
            let hi = cfg.grid_hi.unwrap_or(half);
            Grid1D::new(lo, hi, n)
        }
    }
}

fn joint(cfg: &RunConfig) -> Result<CommandOutput> {
    if cfg.domain == DomainKind::Frequency && cfg.time.is_some() {
        return Err(Error::Unsupported(
            "the frequency-domain joint density is defined only after scattering completes; \
             drop --time or switch to --domain time"
                .into(),
        ));
    }
    let p = params(cfg, cfg.detuning, cfg.bandwidth, cfg.delay)?;
    let pulse = pulse_for(cfg, &p)?;
    let axis = density_axis(cfg, &pulse)?;
    let grid = Grid2D::square(axis.clone());
    let model = model_for(cfg.reference);
    let dist = match cfg.domain {
        DomainKind::Time => joint_time_distribution(&p, &pulse, cfg.time, &grid, model)?,
        DomainKind::Frequency => joint_spectrum(&p, &pulse, &grid, model)?,
    };

    let mut rows = Vec::with_capacity(grid.len());
    for (i, x) in axis.points().enumerate() {
        for (j, y) in axis.points().enumerate() {
            rows.push(vec![x, y, dist.value_at(i, j)]);
        }
    }
    let axis_meta = json!({ "lo": axis.lo(), "hi": axis.hi(), "points": axis.len() });
    Ok(CommandOutput {
        table: Table::new(vec!["x".into(), "y".into(), "value".into()], rows),
        grid: json!({ "domain": cfg.domain.as_str(), "x": axis_meta, "y": axis_meta }),
        normalization: Some(dist.normalization()),
    })
}

fn delay_scan(cfg: &RunConfig) -> Result<CommandOutput> {
    let delays = sweep_values(cfg.sweep_lo, cfg.sweep_hi, cfg.sweep_points, cfg.sweep_log)?;
    let rows: Vec<Vec<f64>> = delays
        .par_iter()
        .map(|&d| -> Result<Vec<f64>> {
            let p = params(cfg, cfg.detuning, cfg.bandwidth, d)?;
            let pulse = pulse_for(cfg, &p)?;
            Ok(vec![d, coincidence_asymptotic(&p, &pulse)?])
        })
        .collect::<Result<_>>()?;
    Ok(CommandOutput {
        table: Table::new(vec!["delay".into(), "c".into()], rows),
        grid: sweep_grid_meta("delay", cfg.sweep_lo, cfg.sweep_hi, cfg.sweep_points, cfg.sweep_log),
        normalization: None,
    })
}

fn marginal(cfg: &RunConfig) -> Result<CommandOutput> {
    let p = params(cfg, cfg.detuning, cfg.bandwidth, cfg.delay)?;
    let pulse = pulse_for(cfg, &p)?;
    let axis = density_axis(cfg, &pulse)?;
    let grid = Grid2D::square(axis.clone());
    let dist = joint_time_distribution(&p, &pulse, None, &grid, model_for(cfg.reference))?;
    let window = cfg
        .postselect
        .map(|c| (c - 0.5 * cfg.postselect_width, c + 0.5 * cfg.postselect_width));
    let m = marginal_time_distribution(&dist, window)?;

    let rows: Vec<Vec<f64>> =
        m.grid().points().zip(m.values()).map(|(t, &v)| vec![t, v]).collect();
    Ok(CommandOutput {
        table: Table::new(vec!["tau".into(), "density".into()], rows),
        grid: json!({
            "lo": axis.lo(), "hi": axis.hi(), "points": axis.len(),
            "postselect_window": window.map(|(a, b)| json!([a, b])),
        }),
        normalization: Some(m.weight()),
    })
}
