//! Dimensionless physical configuration.

use core::f64::consts::PI;

use crate::{Error, Result};

/// Physical configuration in units of the natural linewidth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimulationParams {
    /// Atomic density `n0` in units of `1/k0^3`.
    pub density: f64,
    /// Slab depth in resonance wavelengths `λ0`.
    pub slab_depth: f64,
    /// Natural linewidth; fixed to 1 because it is the frequency unit.
    pub gamma: f64,
    /// Chemical potential in units of the linewidth.
    pub mu_c: f64,
    /// Recoil frequency `ħk0²/2m` in units of the linewidth.
    pub recoil: f64,
    /// Ratio of the bare resonance frequency to the linewidth.
    pub resonance_ratio: f64,
    /// Momentum modulation of the split profile in units of `k0`.
    pub delta_q: f64,
}

impl Default for SimulationParams {
    fn default() -> Self {
        Self {
            density: 0.05,
            slab_depth: 10.0,
            gamma: 1.0,
            mu_c: 0.0,
            recoil: 1e-3,
            resonance_ratio: 1e8,
            delta_q: 0.5,
        }
    }
}

/// Largest recoil frequency accepted as "small compared to the linewidth".
pub const MAX_RECOIL: f64 = 0.1;

/// Smallest accepted ratio between the resonance frequency and the linewidth.
pub const MIN_RESONANCE_RATIO: f64 = 1e3;

fn invalid(name: &'static str, reason: &'static str) -> Error {
    Error::InvalidParameter { name, reason }
}

impl SimulationParams {
    /// Checks the parameter regime the model is valid in.
    pub fn validate(&self) -> Result<()> {
        if !(self.density.is_finite() && self.density >= 0.0) {
            return Err(invalid("density", "must be finite and non-negative"));
        }
        if !(self.slab_depth.is_finite() && self.slab_depth > 0.0) {
            return Err(invalid("slab_depth", "must be finite and positive"));
        }
        if self.gamma != 1.0 {
            return Err(invalid("gamma", "the linewidth is the frequency unit and must be 1"));
        }
        if !(self.recoil.is_finite() && (0.0..=MAX_RECOIL).contains(&self.recoil)) {
            return Err(invalid("recoil", "must lie in [0, 0.1] linewidths"));
        }
        if !(self.mu_c.is_finite() && self.mu_c >= 0.0 && self.mu_c <= self.recoil) {
            return Err(invalid("mu_c", "must lie in [0, recoil]"));
        }
        if !(self.resonance_ratio.is_finite() && self.resonance_ratio >= MIN_RESONANCE_RATIO) {
            return Err(invalid("resonance_ratio", "must be at least 1e3"));
        }
        if !(self.delta_q.is_finite() && self.delta_q >= 0.0) {
            return Err(invalid("delta_q", "must be finite and non-negative"));
        }
        Ok(())
    }

    /// Slab length in internal units of `1/k0`.
    pub fn length(&self) -> f64 {
        2.0 * PI * self.slab_depth
    }

    /// Optical wavenumber `ω/c` in units of `k0` at detuning `detuning`
    /// measured from the displaced resonance `ω0 − μ_c`.
    pub fn optical_wavenumber(&self, detuning: f64) -> f64 {
        1.0 + (detuning - self.mu_c) / self.resonance_ratio
    }

    /// Lorentz-Lorenz shift of the configured density.
    pub fn lorentz_shift(&self) -> f64 {
        PI * self.density
    }
}
