//! Bulk polariton propagator of an infinite homogeneous condensate.
//!
//! ```text
//! G∥(p, Δ) = 1 / (Δ − r p² − 2b + (i/2)√ε)
//! G⊥(p, Δ) = 1 / (Δ − r p² + b + (i/2)√ε − 3b q²/(q² − p²))
//! ```
//!
//! with `r` the recoil frequency, `b` the Lorentz-Lorenz shift and `q = ω/c`.
//! The chemical potential is ignored here.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::{lorentz_shift, solve_epsilon, Result, SimulationParams};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Longitudinal and transverse bulk propagators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BulkPropagator {
    /// Momentum in units of `ħk0`.
    pub p: f64,
    /// Energy detuning from the bare resonance.
    pub detuning: f64,
    pub g_parallel: Complex64,
    pub g_perp: Complex64,
}

/// Value returned for a component whose denominator vanishes exactly.
pub const POLE: Complex64 = Complex64 { re: f64::INFINITY, im: 0.0 };

/// True if `g` is the [`POLE`] marker.
pub fn is_pole(g: Complex64) -> bool {
    g.re.is_infinite()
}

fn resolvent(den: Complex64) -> Complex64 {
    if den == Complex64::new(0.0, 0.0) {
        POLE
    } else {
        Complex64::new(1.0, 0.0) / den
    }
}

pub fn bulk_propagator(p: f64, detuning: f64, density: f64, params: &SimulationParams) -> Result<BulkPropagator> {
    let b = lorentz_shift(density)?;
    let eps = solve_epsilon(detuning, density, 0.0)?;
    let q = 1.0 + detuning / params.resonance_ratio;
    let common = detuning - params.recoil * p * p + 0.5 * I * eps.sqrt_epsilon;
    let g_parallel = resolvent(common - 2.0 * b);
    let light = q * q - p * p;
    let coupling = if density == 0.0 {
        0.0
    } else if light == 0.0 {
        // On the light line the coupling diverges and G⊥ vanishes.
        return Ok(BulkPropagator { p, detuning, g_parallel, g_perp: Complex64::new(0.0, 0.0) });
    } else {
        3.0 * b * q * q / light
    };
    let g_perp = resolvent(common + b - coupling);
    Ok(BulkPropagator { p, detuning, g_parallel, g_perp })
}

/// Free-atom propagator `1/(Δ − r p² + i/2)`.
pub fn free_atom(p: f64, detuning: f64, params: &SimulationParams) -> Complex64 {
    resolvent(Complex64::new(detuning - params.recoil * p * p, 0.5))
}

/// Detuning of the vacuum light line `ω = cp` for momentum `p`.
pub fn light_line_detuning(p: f64, params: &SimulationParams) -> f64 {
    (p - 1.0) * params.resonance_ratio
}

/// Detunings of the local maxima of `|G⊥|` on a uniform scan.
pub fn transverse_maxima(
    p: f64,
    density: f64,
    params: &SimulationParams,
    range: (f64, f64),
    points: usize,
) -> Result<Vec<f64>> {
    let points = points.max(3);
    let step = (range.1 - range.0) / (points - 1) as f64;
    let mut values = Vec::with_capacity(points);
    for i in 0..points {
        let d = range.0 + step * i as f64;
        values.push((d, bulk_propagator(p, d, density, params)?.g_perp.norm()));
    }
    Ok(values
        .windows(3)
        .filter(|w| w[1].1 > w[0].1 && w[1].1 > w[2].1)
        .map(|w| w[1].0)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_momentum_branches_coincide() {
        let params = SimulationParams::default();
        for d in [-2.0, 0.1, 1.7] {
            let g = bulk_propagator(0.0, d, 0.05, &params).unwrap();
            assert!((g.g_parallel - g.g_perp).norm() <= 1e-10 * g.g_parallel.norm());
        }
    }

    #[test]
    fn vacuum_reduces_to_free_atom() {
        let params = SimulationParams::default();
        let g = bulk_propagator(0.7, 0.3, 0.0, &params).unwrap();
        let f = free_atom(0.7, 0.3, &params);
        assert_eq!(g.g_parallel, f);
        assert_eq!(g.g_perp, f);
    }
}
