//! Resolved run configuration.
//!
//! Every subcommand reads its settings from one flat [`RunConfig`]. Three
//! layers feed it, later layers winning: per-command defaults (chosen so a
//! bare subcommand reproduces the matching shipped recipe), an optional
//! key=value config file or built-in recipe, and explicit command-line
//! flags. The resolved struct round-trips losslessly through both the
//! key=value text format and JSON.
//!
//! The key=value format is line based: `key = value`, `#` starts a comment,
//! blank lines are ignored, list values are comma separated. Keys use the
//! same names as the struct fields.

use atombs::pulse::PulseKind;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Defines a copyable keyword enum with fixed spellings shared by clap,
/// serde, the key=value codec, and error messages.
macro_rules! keyword_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
        pub enum $name {
            $(#[serde(rename = $text)] #[value(name = $text)] $variant),+
        }

        impl $name {
            pub fn as_str(self) -> &'static str {
                match self { $(Self::$variant => $text),+ }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                match s {
                    $($text => Ok(Self::$variant),)+
                    other => Err(format!(
                        "`{other}` is not one of: {}",
                        [$($text),+].join(", ")
                    )),
                }
            }
        }
    };
}

keyword_enum! {
    /// Which computation to run.
    CommandKind {
        Coincidence => "coincidence",
        Excitation => "excitation",
        Joint => "joint",
        DelayScan => "delay-scan",
        Marginal => "marginal",
    }
}

keyword_enum! {
    /// Pulse envelope family.
    PulseFamily {
        Square => "square",
        Gaussian => "gaussian",
        ExpRising => "exp-rising",
        Sampled => "sampled",
    }
}

keyword_enum! {
    /// Variable swept by the coincidence command.
    SweepVar {
        Detuning => "detuning",
        Bandwidth => "bandwidth",
    }
}

keyword_enum! {
    /// Domain of the joint two-photon density.
    DomainKind {
        Time => "time",
        Frequency => "frequency",
    }
}

keyword_enum! {
    /// Which scattering model evaluates the density.
    ReferenceKind {
        Atom => "atom",
        Linear => "linear",
    }
}

keyword_enum! {
    /// Data file format.
    OutputFormat {
        Csv => "csv",
        Json => "json",
    }
}

impl PulseFamily {
    pub fn kind(self) -> PulseKind {
        match self {
            PulseFamily::Square => PulseKind::Square,
            PulseFamily::Gaussian => PulseKind::Gaussian,
            PulseFamily::ExpRising => PulseKind::ExpRising,
            PulseFamily::Sampled => PulseKind::Sampled,
        }
    }
}

/// Fully resolved settings of one run. Field meanings by command:
///
/// * `coincidence` — sweeps `sweep` over `[sweep_lo, sweep_hi]`
///   (`sweep_points` values, geometric when `sweep_log`); the non-swept one
///   of detuning/bandwidth is held at its field value.
/// * `excitation` — one column per entry of `bandwidths`.
/// * `joint` — 2D density in `domain`, frozen at `time` (asymptotic when
///   absent), on a square grid `grid_lo..grid_hi` × `grid_points` (defaults
///   chosen from the pulse when absent); `reference` picks the model.
/// * `delay-scan` — delays from the sweep range (linear).
/// * `marginal` — like `joint` in the time domain, reduced to one axis,
///   optionally conditioned on the partner arriving within
///   `postselect_width` around `postselect`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub pulse: PulseFamily,
    /// CSV of (time, amplitude) samples; required by `pulse = sampled`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pulse_file: Option<String>,
    /// Atomic emission rate γ into the guide; the unit of rate.
    pub gamma: f64,
    /// Carrier detuning Δ = ω₀ − ω_A.
    pub detuning: f64,
    /// Pulse bandwidth Ω.
    pub bandwidth: f64,
    /// Bandwidths for the excitation curves, one output column each.
    pub bandwidths: Vec<f64>,
    /// Arrival delay of the second photon.
    pub delay: f64,
    pub sweep: SweepVar,
    pub sweep_lo: f64,
    pub sweep_hi: f64,
    pub sweep_points: usize,
    pub sweep_log: bool,
    pub domain: DomainKind,
    /// Freeze the joint density at this interaction time; absent = t → ∞.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time: Option<f64>,
    pub reference: ReferenceKind,
    /// Partner detection time to condition the marginal on.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub postselect: Option<f64>,
    pub postselect_width: f64,
    /// Explicit grid edges. When both are absent the time axis is
    /// auto-fitted to the pulse, placing sharp pulse edges on interior
    /// even-index nodes so Simpson integrals of the output stay
    /// second-order accurate; an explicit window is taken as given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_lo: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_hi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
    /// Reserved for future stochastic extensions; every computation the
    /// binary currently performs is deterministic.
    pub seed: u64,
    /// Output path; the default is `<command>.<format>` under the output
    /// directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub format: OutputFormat,
}

impl RunConfig {
    /// Per-command defaults. A bare subcommand reproduces the settings of
    /// the matching shipped recipe.
    pub fn defaults(command: CommandKind) -> Self {
        let mut cfg = RunConfig {
            command,
            pulse: PulseFamily::Square,
            pulse_file: None,
            gamma: 1.0,
            detuning: 0.0,
            bandwidth: 1.25,
            bandwidths: vec![0.1, 1.25, 10.0],
            delay: 0.0,
            sweep: SweepVar::Bandwidth,
            sweep_lo: 0.1,
            sweep_hi: 10.0,
            sweep_points: 61,
            sweep_log: true,
            domain: DomainKind::Time,
            time: None,
            reference: ReferenceKind::Atom,
            postselect: None,
            postselect_width: 0.5,
            grid_lo: None,
            grid_hi: None,
            grid_points: None,
            seed: 0,
            output: None,
            format: OutputFormat::Csv,
        };
        match command {
            CommandKind::Coincidence | CommandKind::Excitation => {}
            CommandKind::Joint | CommandKind::Marginal => {
                cfg.bandwidth = 0.1;
            }
            CommandKind::DelayScan => {
                cfg.detuning = 1.0;
                cfg.bandwidth = 0.02;
                cfg.sweep_lo = 0.0;
                cfg.sweep_hi = 250.0;
                cfg.sweep_points = 26;
                cfg.sweep_log = false;
            }
        }
        cfg
    }

    /// Serialize to the key=value text format. `from_kv` of the result
    /// reproduces the config exactly.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        let mut put = |k: &str, v: String| {
            s.push_str(k);
            s.push_str(" = ");
            s.push_str(&v);
            s.push('\n');
        };
        put("command", self.command.to_string());
        put("pulse", self.pulse.to_string());
        if let Some(f) = &self.pulse_file {
            put("pulse_file", f.clone());
        }
        put("gamma", self.gamma.to_string());
        put("detuning", self.detuning.to_string());
        put("bandwidth", self.bandwidth.to_string());
        put(
            "bandwidths",
            self.bandwidths.iter().map(f64::to_string).collect::<Vec<_>>().join(", "),
        );
        put("delay", self.delay.to_string());
        put("sweep", self.sweep.to_string());
        put("sweep_lo", self.sweep_lo.to_string());
        put("sweep_hi", self.sweep_hi.to_string());
        put("sweep_points", self.sweep_points.to_string());
        put("sweep_log", self.sweep_log.to_string());
        put("domain", self.domain.to_string());
        if let Some(t) = self.time {
            put("time", t.to_string());
        }
        put("reference", self.reference.to_string());
        if let Some(p) = self.postselect {
            put("postselect", p.to_string());
        }
        put("postselect_width", self.postselect_width.to_string());
        if let Some(v) = self.grid_lo {
            put("grid_lo", v.to_string());
        }
        if let Some(v) = self.grid_hi {
            put("grid_hi", v.to_string());
        }
        if let Some(v) = self.grid_points {
            put("grid_points", v.to_string());
        }
        put("seed", self.seed.to_string());
        if let Some(o) = &self.output {
            put("output", o.clone());
        }
        put("format", self.format.to_string());
        s
    }

    /// Parse the key=value text format. A `command` key must be present;
    /// all other keys override that command's defaults.
    pub fn from_kv(text: &str) -> Result<Self, String> {
        let mut pairs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected `key = value`, got `{raw}`", lineno + 1))?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        let command = pairs
            .iter()
            .find(|(k, _)| k == "command")
            .ok_or("missing `command` key")?
            .1
            .parse::<CommandKind>()?;
        let mut cfg = RunConfig::defaults(command);
        for (k, v) in &pairs {
            cfg.apply_kv(k, v)?;
        }
        Ok(cfg)
    }

    fn apply_kv(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num<T: FromStr>(key: &str, value: &str) -> Result<T, String>
        where
            T::Err: fmt::Display,
        {
            value.parse().map_err(|e| format!("key `{key}`: {e}"))
        }
        match key {
            "command" => self.command = value.parse()?,
            "pulse" => self.pulse = value.parse()?,
            "pulse_file" => self.pulse_file = Some(value.to_string()),
            "gamma" => self.gamma = num(key, value)?,
            "detuning" => self.detuning = num(key, value)?,
            "bandwidth" => self.bandwidth = num(key, value)?,
            "bandwidths" => {
                self.bandwidths = value
                    .split(',')
                    .map(|p| num::<f64>(key, p.trim()))
                    .collect::<Result<_, _>>()?;
            }
            "delay" => self.delay = num(key, value)?,
            "sweep" => self.sweep = value.parse()?,
            "sweep_lo" => self.sweep_lo = num(key, value)?,
            "sweep_hi" => self.sweep_hi = num(key, value)?,
            "sweep_points" => self.sweep_points = num(key, value)?,
            "sweep_log" => self.sweep_log = num(key, value)?,
            "domain" => self.domain = value.parse()?,
            "time" => self.time = Some(num(key, value)?),
            "reference" => self.reference = value.parse()?,
            "postselect" => self.postselect = Some(num(key, value)?),
            "postselect_width" => self.postselect_width = num(key, value)?,
            "grid_lo" => self.grid_lo = Some(num(key, value)?),
            "grid_hi" => self.grid_hi = Some(num(key, value)?),
            "grid_points" => self.grid_points = Some(num(key, value)?),
            "seed" => self.seed = num(key, value)?,
            "output" => self.output = Some(value.to_string()),
            "format" => self.format = value.parse()?,
            other => return Err(format!("unknown config key `{other}`")),
        }
        Ok(())
    }
}
