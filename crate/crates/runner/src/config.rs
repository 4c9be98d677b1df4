//! Run configuration shared by command-line flags, config files and table metadata.

use std::fmt;
use std::str::FromStr;

use polariton_core::{ProfileKind, SimulationParams};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown configuration key `{0}`")]
    UnknownKey(String),
    #[error("invalid value `{value}` for `{key}`: {reason}")]
    BadValue { key: String, value: String, reason: String },
    #[error("malformed configuration line {line}: `{text}`")]
    Malformed { line: usize, text: String },
    #[error(transparent)]
    Model(#[from] polariton_core::Error),
}

/// How spectra are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Polariton,
    Maxwell,
    MaxwellForwardOnly,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Polariton => "polariton",
            Method::Maxwell => "maxwell",
            Method::MaxwellForwardOnly => "maxwell-forward-only",
        }
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "polariton" => Ok(Method::Polariton),
            "maxwell" => Ok(Method::Maxwell),
            "maxwell-forward-only" => Ok(Method::MaxwellForwardOnly),
            _ => Err("expected polariton, maxwell or maxwell-forward-only".into()),
        }
    }
}

/// Cutoff policy of the polariton solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cutoff {
    /// Grow from the default grid until converged.
    Auto,
    /// Solve once at this `s_max`.
    Fixed(usize),
}

impl fmt::Display for Cutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cutoff::Auto => f.write_str("auto"),
            Cutoff::Fixed(n) => write!(f, "{n}"),
        }
    }
}

impl FromStr for Cutoff {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(Cutoff::Auto);
        }
        match s.parse::<usize>() {
            Ok(n) if n > 0 => Ok(Cutoff::Fixed(n)),
            _ => Err("expected `auto` or a positive integer".into()),
        }
    }
}

/// Reference frequency of Bragg scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resonance {
    /// `ω = ω0 − μ_c`.
    Displaced,
    /// `ω = ω0`.
    Bare,
}

impl Resonance {
    pub fn as_str(self) -> &'static str {
        match self {
            Resonance::Displaced => "displaced",
            Resonance::Bare => "bare",
        }
    }
}

impl FromStr for Resonance {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "displaced" => Ok(Resonance::Displaced),
            "bare" => Ok(Resonance::Bare),
            _ => Err("expected displaced or bare".into()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn as_str(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err("expected csv or json".into()),
        }
    }
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: SimulationParams,
    pub profile: ProfileKind,
    pub dmin: f64,
    pub dmax: f64,
    pub points: usize,
    pub cutoff: Cutoff,
    pub tol: f64,
    pub max_doublings: u32,
    pub margin: f64,
    pub method: Method,
    pub forward_order: u32,
    pub dq_min: f64,
    pub dq_max: f64,
    pub resonance: Resonance,
    pub momentum: f64,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: SimulationParams::default(),
            profile: ProfileKind::Uniform,
            dmin: -4.0,
            dmax: 4.0,
            points: 401,
            cutoff: Cutoff::Auto,
            tol: 1e-6,
            max_doublings: 10,
            margin: 4.0,
            method: Method::Polariton,
            forward_order: 1,
            dq_min: 0.2,
            dq_max: 1.2,
            resonance: Resonance::Displaced,
            momentum: 1.2,
            format: Format::Csv,
        }
    }
}

/// Keys accepted in config files, as flags and in table metadata.
pub const KEYS: &[&str] = &[
    "profile",
    "density",
    "length",
    "mu-c",
    "recoil",
    "resonance-ratio",
    "delta-q",
    "dmin",
    "dmax",
    "points",
    "cutoff",
    "tol",
    "max-doublings",
    "margin",
    "method",
    "forward-order",
    "dq-min",
    "dq-max",
    "resonance",
    "momentum",
    "format",
];

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    value.parse::<T>().map_err(|e| ConfigError::BadValue {
        key: key.to_string(),
        value: value.to_string(),
        reason: e.to_string(),
    })
}

impl RunConfig {
    /// Sets one key; `_` and `-` are interchangeable in key names.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        let k = key.as_str();
        match k {
            "profile" => self.profile = parse(k, value)?,
            "density" => self.params.density = parse(k, value)?,
            "length" => self.params.slab_depth = parse(k, value)?,
            "mu-c" => self.params.mu_c = parse(k, value)?,
            "recoil" => self.params.recoil = parse(k, value)?,
            "resonance-ratio" => self.params.resonance_ratio = parse(k, value)?,
            "delta-q" => self.params.delta_q = parse(k, value)?,
            "dmin" => self.dmin = parse(k, value)?,
            "dmax" => self.dmax = parse(k, value)?,
            "points" => self.points = parse(k, value)?,
            "cutoff" => self.cutoff = parse(k, value)?,
            "tol" => self.tol = parse(k, value)?,
            "max-doublings" => self.max_doublings = parse(k, value)?,
            "margin" => self.margin = parse(k, value)?,
            "method" => self.method = parse(k, value)?,
            "forward-order" => self.forward_order = parse(k, value)?,
            "dq-min" => self.dq_min = parse(k, value)?,
            "dq-max" => self.dq_max = parse(k, value)?,
            "resonance" => self.resonance = parse(k, value)?,
            "momentum" => self.momentum = parse(k, value)?,
            "format" => self.format = parse(k, value)?,
            _ => return Err(ConfigError::UnknownKey(key)),
        }
        Ok(())
    }

    /// Applies a `key=value` file; blank lines and `#` comments are ignored.
    pub fn apply_file(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| ConfigError::Malformed {
                line: i + 1,
                text: line.to_string(),
            })?;
            self.set(k, v)?;
        }
        Ok(())
    }

    /// Rebuilds a configuration from table metadata, ignoring non-configuration keys.
    pub fn from_metadata<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Self, ConfigError> {
        let mut cfg = RunConfig::default();
        for (k, v) in pairs {
            if KEYS.contains(&k) {
                cfg.set(k, v)?;
            }
        }
        Ok(cfg)
    }

    /// All keys with values that parse back to the same configuration.
    pub fn to_pairs(&self) -> Vec<(String, String)> {
        let p = &self.params;
        let f = |x: f64| format!("{x:?}");
        let values = [
            self.profile.to_string(),
            f(p.density),
            f(p.slab_depth),
            f(p.mu_c),
            f(p.recoil),
            f(p.resonance_ratio),
            f(p.delta_q),
            f(self.dmin),
            f(self.dmax),
            self.points.to_string(),
            self.cutoff.to_string(),
            f(self.tol),
            self.max_doublings.to_string(),
            f(self.margin),
            self.method.as_str().to_string(),
            self.forward_order.to_string(),
            f(self.dq_min),
            f(self.dq_max),
            self.resonance.as_str().to_string(),
            f(self.momentum),
            self.format.as_str().to_string(),
        ];
        KEYS.iter().map(|k| k.to_string()).zip(values).collect()
    }

    /// Checks the physical parameters and the sweep settings.
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.params.validate()?;
        let bad = |key: &str, value: String, reason: &str| ConfigError::BadValue {
            key: key.to_string(),
            value,
            reason: reason.to_string(),
        };
        if !(self.dmin.is_finite() && self.dmax.is_finite() && self.dmax > self.dmin) {
            return Err(bad("dmax", self.dmax.to_string(), "must exceed dmin"));
        }
        if self.points < 2 {
            return Err(bad("points", self.points.to_string(), "must be at least 2"));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(bad("tol", self.tol.to_string(), "must be positive"));
        }
        if !(self.margin >= 1.0 && self.margin.is_finite()) {
            return Err(bad("margin", self.margin.to_string(), "must be at least 1"));
        }
        if self.forward_order == 0 {
            return Err(bad("forward-order", "0".into(), "must be at least 1"));
        }
        if !(self.dq_min >= 0.0 && self.dq_max > self.dq_min && self.dq_max.is_finite()) {
            return Err(bad("dq-max", self.dq_max.to_string(), "must exceed dq-min >= 0"));
        }
        if !self.momentum.is_finite() {
            return Err(bad("momentum", self.momentum.to_string(), "must be finite"));
        }
        Ok(())
    }
}
