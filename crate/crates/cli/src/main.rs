//! atombs — two photons on a saturable waveguide beamsplitter.
//!
//! One subcommand per figure family: coincidence sweeps, atomic excitation
//! traces, joint two-photon densities in time or frequency, delay scans,
//! and single-photon marginals. Settings resolve in three layers — the
//! subcommand's defaults, then `--recipe`/`--config`, then explicit flags.
//!
//! Environment: `ATOMBS_OUT_DIR` prefixes relative output paths;
//! `ATOMBS_WORKERS` caps the sweep thread pool; `RUST_LOG` controls log
//! verbosity.

mod commands;
mod config;
mod output;
mod recipes;

use clap::{Args, Parser, Subcommand};
use config::{
    CommandKind, DomainKind, OutputFormat, PulseFamily, ReferenceKind, RunConfig, SweepVar,
};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "atombs",
    version,
    about = "Two photons scattering on a saturable waveguide beamsplitter",
    long_about = "Two photons scattering on a saturable waveguide beamsplitter: coincidence \
                  sweeps, atomic excitation traces, joint two-photon densities, delay scans, \
                  and single-photon marginals.\n\nSettings resolve in three layers: the \
                  subcommand's defaults, then --recipe/--config, then explicit flags.\n\n\
                  Environment: ATOMBS_OUT_DIR prefixes relative output paths; ATOMBS_WORKERS \
                  caps the sweep thread pool; RUST_LOG controls logging."
)]
struct Cli {
    /// Built-in recipe to start from (fig2 … fig10); flags override its values
    #[arg(long, global = true, value_name = "NAME")]
    recipe: Option<String>,

    /// key=value config file to start from; flags override its values
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "recipe")]
    config: Option<PathBuf>,

    /// Output path; default <command>.<format> under ATOMBS_OUT_DIR
    #[arg(long, global = true)]
    output: Option<String>,

    /// csv (table + .meta.json sidecar) or json (one document)
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Reserved for future stochastic extensions; all computations are deterministic
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Write the resolved key=value config to FILE and exit without computing
    #[arg(long, global = true, value_name = "FILE")]
    dump_config: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

/// Flags shared by every subcommand.
#[derive(Args)]
struct CommonArgs {
    /// Pulse envelope family
    #[arg(long, value_enum)]
    pulse: Option<PulseFamily>,

    /// CSV of (time, amplitude) samples for --pulse sampled
    #[arg(long, value_name = "FILE")]
    pulse_file: Option<String>,

    /// Atomic emission rate γ into the guide (the unit of rate)
    #[arg(long)]
    gamma: Option<f64>,

    /// Carrier detuning Δ = ω₀ − ω_A
    #[arg(long, allow_negative_numbers = true)]
    detuning: Option<f64>,

    /// Pulse bandwidth Ω
    #[arg(long)]
    bandwidth: Option<f64>,

    /// Arrival delay of the second photon
    #[arg(long, allow_negative_numbers = true)]
    delay: Option<f64>,
}

impl CommonArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(v) = self.pulse {
            cfg.pulse = v;
        }
        if let Some(v) = &self.pulse_file {
            cfg.pulse_file = Some(v.clone());
        }
        if let Some(v) = self.gamma {
            cfg.gamma = v;
        }
        if let Some(v) = self.detuning {
            cfg.detuning = v;
        }
        if let Some(v) = self.bandwidth {
            cfg.bandwidth = v;
        }
        if let Some(v) = self.delay {
            cfg.delay = v;
        }
    }
}

/// Sweep range flags (coincidence and delay-scan).
#[derive(Args)]
struct RangeArgs {
    /// Lower end of the sweep
    #[arg(long, allow_negative_numbers = true)]
    sweep_lo: Option<f64>,

    /// Upper end of the sweep
    #[arg(long, allow_negative_numbers = true)]
    sweep_hi: Option<f64>,

    /// Number of sweep points
    #[arg(long)]
    sweep_points: Option<usize>,

    /// Geometric (true) or linear (false) spacing
    #[arg(long)]
    sweep_log: Option<bool>,
}

impl RangeArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(v) = self.sweep_lo {
            cfg.sweep_lo = v;
        }
        if let Some(v) = self.sweep_hi {
            cfg.sweep_hi = v;
        }
        if let Some(v) = self.sweep_points {
            cfg.sweep_points = v;
        }
        if let Some(v) = self.sweep_log {
            cfg.sweep_log = v;
        }
    }
}

/// 2D / marginal grid flags.
#[derive(Args)]
struct GridArgs {
    /// Lower grid edge (both axes)
    #[arg(long, allow_negative_numbers = true)]
    grid_lo: Option<f64>,

    /// Upper grid edge (both axes)
    #[arg(long, allow_negative_numbers = true)]
    grid_hi: Option<f64>,

    /// Nodes per axis
    #[arg(long)]
    grid_points: Option<usize>,
}

impl GridArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        if let Some(v) = self.grid_lo {
            cfg.grid_lo = Some(v);
        }
        if let Some(v) = self.grid_hi {
            cfg.grid_hi = Some(v);
        }
        if let Some(v) = self.grid_points {
            cfg.grid_points = Some(v);
        }
    }
}

#[derive(Args)]
struct CoincidenceArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Variable to sweep
    #[arg(long, value_enum)]
    sweep: Option<SweepVar>,

    #[command(flatten)]
    range: RangeArgs,
}

#[derive(Args)]
struct ExcitationArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Comma-separated pulse bandwidths, one excitation column each
    #[arg(long, value_delimiter = ',', value_name = "Ω,Ω,…")]
    bandwidths: Option<Vec<f64>>,
}

#[derive(Args)]
struct JointArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Density domain
    #[arg(long, value_enum)]
    domain: Option<DomainKind>,

    /// Freeze at this interaction time (time domain only; `inf` = asymptotic)
    #[arg(long, allow_negative_numbers = true)]
    time: Option<f64>,

    /// Scattering model: the saturable atom or the linear splitter
    #[arg(long, value_enum)]
    reference: Option<ReferenceKind>,

    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Args)]
struct DelayScanArgs {
    #[command(flatten)]
    common: CommonArgs,

    #[command(flatten)]
    range: RangeArgs,
}

#[derive(Args)]
struct MarginalArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Partner detection time to condition on (default: unconditioned)
    #[arg(long, allow_negative_numbers = true)]
    postselect: Option<f64>,

    /// Width of the postselection window around --postselect
    #[arg(long)]
    postselect_width: Option<f64>,

    /// Scattering model: the saturable atom or the linear splitter
    #[arg(long, value_enum)]
    reference: Option<ReferenceKind>,

    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Coincidence probability swept over detuning or bandwidth
    Coincidence(CoincidenceArgs),
    /// Atomic excitation probability versus time
    Excitation(ExcitationArgs),
    /// Joint two-photon density on a square 2D grid
    Joint(JointArgs),
    /// Coincidence versus the delay between the photons
    DelayScan(DelayScanArgs),
    /// Arrival-time distribution of one photon, partner traced out
    Marginal(MarginalArgs),
}

impl Command {
    fn kind(&self) -> CommandKind {
        match self {
            Command::Coincidence(_) => CommandKind::Coincidence,
            Command::Excitation(_) => CommandKind::Excitation,
            Command::Joint(_) => CommandKind::Joint,
            Command::DelayScan(_) => CommandKind::DelayScan,
            Command::Marginal(_) => CommandKind::Marginal,
        }
    }

    fn apply(&self, cfg: &mut RunConfig) {
        match self {
            Command::Coincidence(a) => {
                a.common.apply(cfg);
                if let Some(v) = a.sweep {
                    cfg.sweep = v;
                }
                a.range.apply(cfg);
            }
            Command::Excitation(a) => {
                a.common.apply(cfg);
                if let Some(v) = &a.bandwidths {
                    cfg.bandwidths = v.clone();
                } else if let Some(bw) = a.common.bandwidth {
                    cfg.bandwidths = vec![bw];
                }
            }
            Command::Joint(a) => {
                a.common.apply(cfg);
                if let Some(v) = a.domain {
                    cfg.domain = v;
                }
                if let Some(t) = a.time {
                    // `--time inf` clears a recipe's finite time back to the
                    // asymptotic density.
                    cfg.time = t.is_finite().then_some(t);
                }
                if let Some(v) = a.reference {
                    cfg.reference = v;
                }
                a.grid.apply(cfg);
            }
            Command::DelayScan(a) => {
                a.common.apply(cfg);
                a.range.apply(cfg);
            }
            Command::Marginal(a) => {
                a.common.apply(cfg);
                if let Some(v) = a.postselect {
                    cfg.postselect = Some(v);
                }
                if let Some(v) = a.postselect_width {
                    cfg.postselect_width = v;
                }
                if let Some(v) = a.reference {
                    cfg.reference = v;
                }
                a.grid.apply(cfg);
            }
        }
    }
}

fn resolve(cli: &Cli) -> Result<RunConfig, String> {
    let text = if let Some(name) = &cli.recipe {
        Some(
            recipes::builtin(name)
                .ok_or_else(|| {
                    format!("unknown recipe `{name}`; available: {}", recipes::NAMES.join(", "))
                })?
                .to_string(),
        )
    } else if let Some(path) = &cli.config {
        Some(
            std::fs::read_to_string(path)
                .map_err(|e| format!("config {}: {e}", path.display()))?,
        )
    } else {
        None
    };

    let mut cfg = match (&text, &cli.command) {
        (Some(t), cmd) => {
            let cfg = RunConfig::from_kv(t).map_err(|e| format!("config: {e}"))?;
            if let Some(cmd) = cmd {
                if cmd.kind() != cfg.command {
                    return Err(format!(
                        "the loaded config is a `{}` run but the command line says `{}`",
                        cfg.command,
                        cmd.kind()
                    ));
                }
            }
            cfg
        }
        (None, Some(cmd)) => RunConfig::defaults(cmd.kind()),
        (None, None) => {
            return Err("pass a subcommand, --recipe, or --config; see --help".to_string())
        }
    };

    if let Some(cmd) = &cli.command {
        cmd.apply(&mut cfg);
    }
    if let Some(o) = &cli.output {
        cfg.output = Some(o.clone());
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

fn run() -> Result<(), Box<dyn std::error::Error>> {
    if let Ok(workers) = std::env::var("ATOMBS_WORKERS") {
        let n: usize = workers
            .parse()
            .map_err(|_| format!("ATOMBS_WORKERS must be a positive integer, got `{workers}`"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }

    let cli = Cli::parse();
    let cfg = resolve(&cli)?;
    if let Some(path) = &cli.dump_config {
        std::fs::write(path, cfg.to_kv())?;
        println!("wrote {}", path.display());
        return Ok(());
    }
    log::info!(
        "running {} (pulse {}, gamma {}, detuning {}, bandwidth {})",
        cfg.command,
        cfg.pulse,
        cfg.gamma,
        cfg.detuning,
        cfg.bandwidth
    );

    let t0 = Instant::now();
    let result = commands::run(&cfg)?;
    let runtime = t0.elapsed().as_secs_f64();

    let written = output::write_run(&cfg, &result.table, result.grid, result.normalization, runtime)?;
    match &written.sidecar {
        Some(meta) => println!(
            "wrote {} and {} ({} rows, {:.2} s)",
            written.data.display(),
            meta.display(),
            result.table.rows.len(),
            runtime
        ),
        None => println!(
            "wrote {} ({} rows, {:.2} s)",
            written.data.display(),
            result.table.rows.len(),
            runtime
        ),
    }
    Ok(())
}
