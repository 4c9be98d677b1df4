//! Sweeps over detuning, modulation wavenumber and momentum.

use polariton_core::dispersion::{bulk_propagator, light_line_detuning, transverse_maxima};
use polariton_core::maxwell::{forward_only, maxwell_slab};
use polariton_core::{
    converge, make_profile, scatter, solve_epsilon, ConvergenceOptions, Error, FourierGrid, OrderParameterProfile,
    ProfileKind, SimulationParams,
};
use rayon::prelude::*;

use crate::config::{ConfigError, Cutoff, Method, Resonance, RunConfig};
use crate::table::{Cell, Table};

/// How a row was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowStatus {
    /// Cutoff doubling settled within the tolerance.
    Converged,
    /// Solved once at a user-fixed cutoff.
    Fixed,
    /// Closed-form reference without a cutoff.
    Exact,
    /// Doubling limit reached; values are from the finest grid.
    Unconverged,
    /// The solver rejected the system; values are NaN.
    Failed,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Converged => "converged",
            RowStatus::Fixed => "fixed",
            RowStatus::Exact => "exact",
            RowStatus::Unconverged => "unconverged",
            RowStatus::Failed => "failed",
        }
    }

    pub fn is_failure(self) -> bool {
        matches!(self, RowStatus::Unconverged | RowStatus::Failed)
    }
}

/// One spectral point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub x: f64,
    pub transmission: f64,
    pub reflection: f64,
    pub loss: f64,
    pub cutoff: usize,
    pub status: RowStatus,
}

impl Row {
    fn failed(x: f64, cutoff: usize) -> Self {
        Row { x, transmission: f64::NAN, reflection: f64::NAN, loss: f64::NAN, cutoff, status: RowStatus::Failed }
    }
}

/// Rows of `(detuning, T, R, L)` with the configuration that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub config: RunConfig,
    pub rows: Vec<Row>,
}

/// Rows of `(Δq, R)` at the resonance.
#[derive(Debug, Clone, PartialEq)]
pub struct BraggScanTable {
    pub config: RunConfig,
    pub detuning: f64,
    pub rows: Vec<Row>,
}

/// Polariton rows next to the matching Maxwell reference rows.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareTable {
    pub polariton: SpectrumTable,
    pub reference: SpectrumTable,
}

/// `n` equally spaced values from `a` to `b`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 })
        .collect()
}

fn options(cfg: &RunConfig) -> ConvergenceOptions {
    ConvergenceOptions { tol: cfg.tol, max_doublings: cfg.max_doublings, margin: cfg.margin }
}

/// Polariton coefficients at one detuning under the configured cutoff policy.
pub fn polariton_point(profile: &OrderParameterProfile, detuning: f64, params: &SimulationParams, cfg: &RunConfig) -> Row {
    let row = |c: &polariton_core::ScatterCoefficients, cutoff, status| Row {
        x: detuning,
        transmission: c.transmission,
        reflection: c.reflection,
        loss: c.loss,
        cutoff,
        status,
    };
    match cfg.cutoff {
        Cutoff::Fixed(n) => match scatter(profile, &FourierGrid::new(n, profile.length), detuning, params) {
            Ok(c) => row(&c, n, RowStatus::Fixed),
            Err(e) => {
                log::warn!("{e}");
                Row::failed(detuning, n)
            }
        },
        Cutoff::Auto => match converge(profile, detuning, params, &options(cfg)) {
            Ok(c) => {
                log::debug!("detuning {detuning}: cutoff {}", c.cutoff);
                row(&c.coefficients, c.cutoff, RowStatus::Converged)
            }
            Err(Error::NotConverged { cutoff, last, change, .. }) => {
                log::warn!("detuning {detuning}: not converged at cutoff {cutoff} (change {change:e})");
                row(&last, cutoff, RowStatus::Unconverged)
            }
            Err(e) => {
                log::warn!("{e}");
                Row::failed(detuning, 0)
            }
        },
    }
}

fn reference_point(
    method: Method,
    profile: &OrderParameterProfile,
    detuning: f64,
    params: &SimulationParams,
    order: u32,
) -> Result<Row, Error> {
    let response = match method {
        Method::Maxwell => {
            let eps = solve_epsilon(detuning - params.mu_c, params.density, params.mu_c)?;
            maxwell_slab(detuning, params, &eps)?
        }
        _ => forward_only(profile, detuning, params, order)?,
    };
    Ok(Row {
        x: detuning,
        transmission: response.transmission,
        reflection: response.reflection,
        loss: response.loss(),
        cutoff: 0,
        status: RowStatus::Exact,
    })
}

/// Spectrum over `[dmin, dmax]` with the configured method.
pub fn run_spectrum(cfg: &RunConfig) -> Result<SpectrumTable, ConfigError> {
    cfg.validate()?;
    if cfg.method == Method::Maxwell && cfg.profile != ProfileKind::Uniform {
        return Err(ConfigError::BadValue {
            key: "method".into(),
            value: "maxwell".into(),
            reason: "the closed-form slab reference needs the uniform profile".into(),
        });
    }
    let profile = make_profile(cfg.profile, &cfg.params)?;
    let detunings = linspace(cfg.dmin, cfg.dmax, cfg.points);
    let rows = match cfg.method {
        Method::Polariton => detunings
            .par_iter()
            .map(|&d| polariton_point(&profile, d, &cfg.params, cfg))
            .collect(),
        method => detunings
            .par_iter()
            .map(|&d| reference_point(method, &profile, d, &cfg.params, cfg.forward_order))
            .collect::<Result<Vec<_>, _>>()?,
    };
    Ok(SpectrumTable { config: cfg.clone(), rows })
}

/// Split-profile reflection at the resonance over `[dq_min, dq_max]`.
pub fn run_bragg_scan(cfg: &RunConfig) -> Result<BraggScanTable, ConfigError> {
    cfg.validate()?;
    let detuning = match cfg.resonance {
        Resonance::Displaced => 0.0,
        Resonance::Bare => cfg.params.mu_c,
    };
    let rows = linspace(cfg.dq_min, cfg.dq_max, cfg.points)
        .par_iter()
        .map(|&dq| {
            let params = SimulationParams { delta_q: dq, ..cfg.params };
            let profile = make_profile(ProfileKind::Split, &params)?;
            Ok(Row { x: dq, ..polariton_point(&profile, detuning, &params, cfg) })
        })
        .collect::<Result<Vec<_>, ConfigError>>()?;
    Ok(BraggScanTable { config: cfg.clone(), detuning, rows })
}

/// Polariton spectrum with the matching reference: the closed-form slab for a
/// uniform profile, the forward-wave approximation otherwise.
pub fn run_compare(cfg: &RunConfig) -> Result<CompareTable, ConfigError> {
    let polariton = run_spectrum(&RunConfig { method: Method::Polariton, ..cfg.clone() })?;
    let method = if cfg.profile == ProfileKind::Uniform { Method::Maxwell } else { Method::MaxwellForwardOnly };
    let reference = run_spectrum(&RunConfig { method, ..cfg.clone() })?;
    Ok(CompareTable { polariton, reference })
}

impl SpectrumTable {
    pub fn has_failures(&self) -> bool {
        self.rows.iter().any(|r| r.status.is_failure())
    }

    pub fn to_table(&self) -> Table {
        spectrum_table("spectrum", &self.config, "delta", &self.rows, Vec::new())
    }
}

impl BraggScanTable {
    pub fn has_failures(&self) -> bool {
        self.rows.iter().any(|r| r.status.is_failure())
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table {
            metadata: metadata("bragg", &self.config),
            columns: ["delta_q", "R", "T", "cutoff", "status"].map(String::from).to_vec(),
            rows: Vec::new(),
        };
        t.metadata.push(("detuning".into(), format!("{:?}", self.detuning)));
        t.rows = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    Cell::Float(r.x),
                    Cell::Float(r.reflection),
                    Cell::Float(r.transmission),
                    Cell::Int(r.cutoff as u64),
                    Cell::Text(r.status.as_str().into()),
                ]
            })
            .collect();
        t
    }
}

impl CompareTable {
    pub fn has_failures(&self) -> bool {
        self.polariton.has_failures()
    }

    /// `(max |ΔT|, max |ΔR|)` over all rows.
    pub fn max_deviation(&self) -> (f64, f64) {
        self.polariton.rows.iter().zip(&self.reference.rows).fold((0.0f64, 0.0f64), |(dt, dr), (a, b)| {
            (dt.max((a.transmission - b.transmission).abs()), dr.max((a.reflection - b.reflection).abs()))
        })
    }

    pub fn to_table(&self) -> Table {
        let (dt, dr) = self.max_deviation();
        let reference = self.reference.config.method.as_str();
        let mut t = spectrum_table(
            "compare",
            &self.polariton.config,
            "delta",
            &self.polariton.rows,
            vec![("reference".into(), reference.into()), ("max_abs_dT".into(), format!("{dt:?}")), ("max_abs_dR".into(), format!("{dr:?}"))],
        );
        t.columns.extend(["T_reference", "R_reference", "L_reference"].map(String::from));
        for (row, r) in t.rows.iter_mut().zip(&self.reference.rows) {
            row.extend([Cell::Float(r.transmission), Cell::Float(r.reflection), Cell::Float(r.loss)]);
        }
        t
    }
}

fn metadata(command: &str, cfg: &RunConfig) -> Vec<(String, String)> {
    let mut m = vec![("command".to_string(), command.to_string()), ("version".to_string(), env!("CARGO_PKG_VERSION").to_string())];
    m.extend(cfg.to_pairs());
    m
}

fn spectrum_table(command: &str, cfg: &RunConfig, x: &str, rows: &[Row], extra: Vec<(String, String)>) -> Table {
    let mut metadata = metadata(command, cfg);
    metadata.extend(extra);
    Table {
        metadata,
        columns: [x, "T", "R", "L", "cutoff", "status"].map(String::from).to_vec(),
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    Cell::Float(r.x),
                    Cell::Float(r.transmission),
                    Cell::Float(r.reflection),
                    Cell::Float(r.loss),
                    Cell::Int(r.cutoff as u64),
                    Cell::Text(r.status.as_str().into()),
                ]
            })
            .collect(),
    }
}

/// `ε(Δ)` at the configured density; the detuning axis is measured from the bare resonance.
pub fn run_epsilon(cfg: &RunConfig) -> Result<Table, ConfigError> {
    cfg.validate()?;
    let rows = linspace(cfg.dmin, cfg.dmax, cfg.points)
        .par_iter()
        .map(|&d| {
            let e = solve_epsilon(d, cfg.params.density, cfg.params.mu_c)?;
            Ok(vec![
                Cell::Float(d),
                Cell::Float(e.epsilon.re),
                Cell::Float(e.epsilon.im),
                Cell::Float(e.sqrt_epsilon.re),
                Cell::Float(e.sqrt_epsilon.im),
            ])
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(Table {
        metadata: metadata("epsilon", cfg),
        columns: ["delta", "eps_re", "eps_im", "sqrt_re", "sqrt_im"].map(String::from).to_vec(),
        rows,
    })
}

/// Bulk propagator components along a detuning scan at fixed momentum.
pub fn run_dispersion(cfg: &RunConfig) -> Result<Table, ConfigError> {
    cfg.validate()?;
    let p = cfg.momentum;
    let density = cfg.params.density;
    let rows = linspace(cfg.dmin, cfg.dmax, cfg.points)
        .par_iter()
        .map(|&d| {
            let g = bulk_propagator(p, d, density, &cfg.params)?;
            Ok(vec![
                Cell::Float(d),
                Cell::Float(g.g_parallel.re),
                Cell::Float(g.g_parallel.im),
                Cell::Float(g.g_perp.re),
                Cell::Float(g.g_perp.im),
            ])
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let maxima = transverse_maxima(p, density, &cfg.params, (cfg.dmin, cfg.dmax), cfg.points)?;
    let light = light_line_detuning(p, &cfg.params);
    if (light - cfg.dmin).abs().min((light - cfg.dmax).abs()) < 1.0 || (cfg.dmin..=cfg.dmax).contains(&light) {
        log::info!("light line at detuning {light:e} lies in or near the scan; branches may merge");
    }
    let mut metadata = metadata("dispersion", cfg);
    metadata.push(("light_line_detuning".into(), format!("{light:?}")));
    metadata.push((
        "transverse_maxima".into(),
        maxima.iter().map(|m| format!("{m:?}")).collect::<Vec<_>>().join(";"),
    ));
    Ok(Table {
        metadata,
        columns: ["delta", "g_par_re", "g_par_im", "g_perp_re", "g_perp_im"].map(String::from).to_vec(),
        rows,
    })
}
