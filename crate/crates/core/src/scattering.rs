//! Elastic S-matrix elements and transmission, reflection and loss.
//!
//! For an incident wave `e^{iqz}` the outgoing amplitude in direction `k'` is
//!
//! ```text
//! S(k', q) = δ − i(3π/2)(q/L) Σ_s's U_s'(k') G_s's V_s(q)
//! V_s(k)   = ∫ Ξ(z) e^{i(k − k_s)z} dz   = Σ_a c_a P(k − k_s + κ_a)
//! U_s'(k') = ∫ Ξ*(z) e^{−i(k' − k_s')z} dz = Σ_b c̄_b P(k' − k_s' + κ_b)
//! ```
//!
//! which for a uniform slab reduces to `√n0` times the window sinc factors.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::linalg::CMatrix;
use crate::window::grid_slab_transform;
use crate::{Error, FourierGrid, OrderParameterProfile, Result, SimulationParams};

/// Transmission, reflection and loss of one scattering event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatterCoefficients {
    pub transmission: f64,
    pub reflection: f64,
    pub loss: f64,
    pub s_forward: Complex64,
    pub s_backward: Complex64,
}

impl ScatterCoefficients {
    pub fn from_amplitudes(s_forward: Complex64, s_backward: Complex64) -> Self {
        let transmission = s_forward.norm_sqr();
        let reflection = s_backward.norm_sqr();
        Self {
            transmission,
            reflection,
            loss: 1.0 - transmission - reflection,
            s_forward,
            s_backward,
        }
    }

    /// No scatterer.
    pub fn identity() -> Self {
        Self::from_amplitudes(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }
}

/// Source vector `V_s(q)` of the incident wave.
pub fn incident_projection(profile: &OrderParameterProfile, grid: &FourierGrid, q: f64) -> Vec<Complex64> {
    projection(profile, grid, q, false)
}

/// Detection vector `U_s'(k')` of the outgoing direction `k'`.
pub fn outgoing_projection(profile: &OrderParameterProfile, grid: &FourierGrid, k_out: f64) -> Vec<Complex64> {
    projection(profile, grid, k_out, true)
}

fn projection(profile: &OrderParameterProfile, grid: &FourierGrid, k: f64, conjugate: bool) -> Vec<Complex64> {
    (0..grid.len())
        .map(|i| {
            let s = grid.index(i);
            profile
                .components
                .iter()
                .map(|c| {
                    let amp = if conjugate { c.amplitude.conj() } else { c.amplitude };
                    amp * grid_slab_transform(k + c.wavenumber, s, grid.length)
                })
                .sum()
        })
        .collect()
}

/// Coefficients from the response `g = G V` to the incident source.
pub fn coefficients_from_response(
    profile: &OrderParameterProfile,
    grid: &FourierGrid,
    q: f64,
    response: &[Complex64],
) -> ScatterCoefficients {
    let pref = Complex64::new(0.0, 1.5 * PI * q / grid.length);
    let amp = |k_out: f64| -> Complex64 {
        let u = outgoing_projection(profile, grid, k_out);
        u.iter().zip(response).map(|(a, b)| a * b).sum()
    };
    let forward = Complex64::new(1.0, 0.0) - pref * amp(q);
    let backward = -pref * amp(-q);
    ScatterCoefficients::from_amplitudes(forward, backward)
}

/// S-matrix elements at `k' = ±q` from a solved propagator.
pub fn s_matrix(
    g: &CMatrix,
    grid: &FourierGrid,
    detuning: f64,
    params: &SimulationParams,
    profile: &OrderParameterProfile,
) -> Result<ScatterCoefficients> {
    if g.rows() != grid.len() || g.cols() != grid.len() {
        return Err(Error::GridMismatch("propagator dimension differs from the grid"));
    }
    let q = params.optical_wavenumber(detuning);
    let v = incident_projection(profile, grid, q);
    let response = g.matvec(&v);
    Ok(coefficients_from_response(profile, grid, q, &response))
}
