//! Self-consistent dielectric permittivity of the condensate.
//!
//! With `x = √ε` and `b` the Lorentz-Lorenz shift the self-consistency
//! condition is the cubic
//!
//! ```text
//! (i/2)x³ + (Δ+b)x² − (i/2)x − (Δ−2b) = 0
//! ```
//!
//! whose roots come in pairs `x, −x̄` plus one root on the imaginary axis.
//! Outside the stop band the physical root is the member of the off-axis pair
//! with `Re x > 0`. Inside the stop band all three roots are imaginary; the
//! physical one is selected by the causality rule `dε/dΔ` continued from
//! `Δ + i0`, and the permittivity is then real and negative.

use core::f64::consts::PI;

use num_complex::Complex64;

use crate::real;
use crate::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Which rule picked the root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// No medium: `ε = 1` exactly.
    Vacuum,
    /// Propagating branch with `Re √ε > 0`.
    Propagating,
    /// Stop band: `√ε` purely imaginary and `ε < 0`.
    StopBand,
}

/// Permittivity at one detuning and density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Permittivity {
    pub epsilon: Complex64,
    pub sqrt_epsilon: Complex64,
    /// Detuning `ω − ω0` from the bare resonance.
    pub detuning: f64,
    pub density: f64,
    pub branch: Branch,
}

impl Permittivity {
    pub fn vacuum(detuning: f64) -> Self {
        let one = Complex64::new(1.0, 0.0);
        Self {
            epsilon: one,
            sqrt_epsilon: one,
            detuning,
            density: 0.0,
            branch: Branch::Vacuum,
        }
    }

    /// Relative mismatch of the two sides of the self-consistency equation.
    pub fn residual(&self, mu_c: f64) -> f64 {
        let d = self.detuning + mu_c;
        let b = lorentz_shift(self.density).unwrap_or(0.0);
        let half = I * self.sqrt_epsilon * 0.5;
        let lhs = self.epsilon * (d + b + half);
        let rhs = d - 2.0 * b + half;
        (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(f64::MIN_POSITIVE)
    }
}

/// Lorentz-Lorenz shift `b = π n0` in units of the linewidth.
pub fn lorentz_shift(density: f64) -> Result<f64> {
    if !(density >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "density",
            reason: "must be non-negative",
        });
    }
    Ok(PI * density)
}

/// Permittivity at bare detuning `detuning = ω − ω0`.
///
/// The chemical potential displaces the frequency argument only:
/// `solve_epsilon(Δ, n, μ) == solve_epsilon(Δ + μ, n, 0)`. The returned
/// `detuning` field keeps the caller's value.
pub fn solve_epsilon(detuning: f64, density: f64, mu_c: f64) -> Result<Permittivity> {
    let b = lorentz_shift(density)?;
    if !detuning.is_finite() || !mu_c.is_finite() {
        return Err(Error::InvalidParameter {
            name: "detuning",
            reason: "must be finite",
        });
    }
    if density == 0.0 {
        return Ok(Permittivity::vacuum(detuning));
    }
    let d = detuning + mu_c;
    let (x, branch) = select_root(d, b).ok_or(Error::NoPhysicalRoot { detuning, density })?;
    Ok(Permittivity {
        epsilon: x * x,
        sqrt_epsilon: x,
        detuning,
        density,
        branch,
    })
}

fn cubic(x: Complex64, d: f64, b: f64) -> Complex64 {
    ((I * 0.5 * x + (d + b)) * x - I * 0.5) * x - (d - 2.0 * b)
}

fn cubic_derivative(x: Complex64, d: f64, b: f64) -> Complex64 {
    (I * 1.5 * x + 2.0 * (d + b)) * x - I * 0.5
}

fn polish(mut x: Complex64, d: f64, b: f64) -> Complex64 {
    for _ in 0..50 {
        let f = cubic(x, d, b);
        let fp = cubic_derivative(x, d, b);
        if fp.norm() == 0.0 {
            break;
        }
        let step = f / fp;
        let next = x - step;
        if !(cubic(next, d, b).norm() < f.norm()) {
            break;
        }
        x = next;
        if step.norm() <= 1e-16 * x.norm() {
            break;
        }
    }
    x
}

/// All three roots of the cubic, Newton-polished.
pub fn cubic_roots(detuning: f64, shift: f64) -> [Complex64; 3] {
    // Monic form x³ + a2 x² + a1 x + a0.
    let a2 = -2.0 * I * (detuning + shift);
    let a1 = Complex64::new(-1.0, 0.0);
    let a0 = 2.0 * I * (detuning - 2.0 * shift);
    let p = a1 - a2 * a2 / 3.0;
    let q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let plus = -q / 2.0 + disc;
    let minus = -q / 2.0 - disc;
    let big = if plus.norm() >= minus.norm() { plus } else { minus };
    let u = if big.norm() == 0.0 { Complex64::new(0.0, 0.0) } else { big.cbrt() };
    let omega = Complex64::new(-0.5, real::sqrt(0.75));
    let mut roots = [Complex64::new(0.0, 0.0); 3];
    let mut uk = u;
    for root in roots.iter_mut() {
        let vk = if uk.norm() == 0.0 { Complex64::new(0.0, 0.0) } else { -p / (3.0 * uk) };
        *root = polish(uk + vk - a2 / 3.0, detuning, shift);
        uk *= omega;
    }
    roots
}

/// `dε/dΔ` weight whose positive real part marks the causal root.
fn causal_weight(x: Complex64, d: f64, b: f64) -> f64 {
    (-2.0 * x * (x * x - 1.0) / cubic_derivative(x, d, b)).re
}

fn select_root(d: f64, b: f64) -> Option<(Complex64, Branch)> {
    let roots = cubic_roots(d, b);
    let scale = roots.iter().map(|r| r.norm()).fold(1.0, f64::max);
    let axis_tol = 1e-7 * scale;
    let propagating = roots
        .iter()
        .filter(|r| r.re > axis_tol && r.im >= -axis_tol)
        .max_by(|a, b| a.re.total_cmp(&b.re));
    if let Some(&x) = propagating {
        let x = if x.im < 0.0 { Complex64::new(x.re, 0.0) } else { x };
        return Some((x, Branch::Propagating));
    }
    roots
        .iter()
        .filter(|r| r.im > 0.0 && real::abs(r.re) <= axis_tol)
        .map(|r| (*r, causal_weight(*r, d, b)))
        .filter(|(_, w)| *w > 0.0)
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(r, _)| (Complex64::new(0.0, r.im), Branch::StopBand))
}
