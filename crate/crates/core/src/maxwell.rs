//! Macroscopic Maxwell reference for a homogeneous slab in vacuum.

use num_complex::Complex64;

use crate::quadrature::GaussLegendre;
use crate::{real, solve_epsilon, Error, OrderParameterProfile, Permittivity, Result, SimulationParams};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Beyond this attenuation the compact formulas are replaced by their
/// decaying-exponential form to avoid overflow of `sin ψ`.
const MAX_COMPACT_ATTENUATION: f64 = 300.0;

/// Transmission and reflection of a slab at one detuning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlabResponse {
    pub detuning: f64,
    pub transmission: f64,
    pub reflection: f64,
    /// Optical phase `ψ = L √ε ω/c` across the slab.
    pub psi: Complex64,
}

impl SlabResponse {
    pub fn loss(&self) -> f64 {
        1.0 - self.transmission - self.reflection
    }
}

/// Closed-form slab response.
///
/// `T = |2√ε / (2√ε cos ψ − i(1+ε) sin ψ)|²` and
/// `R = |sin ψ / sin(ψ − i ln((1−√ε)/(1+√ε)))|²`.
/// `detuning` is measured from the displaced resonance; `eps` must have been
/// solved at `detuning − μ_c` for the configured density.
pub fn maxwell_slab(detuning: f64, params: &SimulationParams, eps: &Permittivity) -> Result<SlabResponse> {
    let expected = detuning - params.mu_c;
    if real::abs(eps.detuning - expected) > 1e-12 * (1.0 + real::abs(expected)) || eps.density != params.density {
        return Err(Error::InvalidParameter {
            name: "eps",
            reason: "solved at a different detuning or density",
        });
    }
    Ok(slab_response(detuning, params, eps.sqrt_epsilon))
}

/// Closed-form response for a given `√ε`, without consistency checks.
pub fn slab_response(detuning: f64, params: &SimulationParams, x: Complex64) -> SlabResponse {
    let q = params.optical_wavenumber(detuning);
    let psi = x * (params.length() * q);
    if x == ONE {
        return SlabResponse { detuning, transmission: 1.0, reflection: 0.0, psi };
    }
    if x == Complex64::new(0.0, 0.0) {
        // Limit √ε → 0 of both expressions.
        let lq = params.length() * q;
        let d = 4.0 + lq * lq;
        return SlabResponse { detuning, transmission: 4.0 / d, reflection: lq * lq / d, psi };
    }
    let (transmission, reflection) = if real::abs(psi.im) <= MAX_COMPACT_ATTENUATION {
        let eps = x * x;
        let t = 2.0 * x / (2.0 * x * psi.cos() - I * (ONE + eps) * psi.sin());
        let log_rho = ((ONE - x) / (ONE + x)).ln();
        let r = psi.sin() / (psi - I * log_rho).sin();
        (t.norm_sqr(), r.norm_sqr())
    } else {
        let (t, r) = decaying_form(x, psi);
        (t.norm_sqr(), r.norm_sqr())
    };
    SlabResponse { detuning, transmission, reflection, psi }
}

/// Amplitudes written with `e^{iψ}`, `Im ψ ≥ 0`, which never overflow.
fn decaying_form(x: Complex64, psi: Complex64) -> (Complex64, Complex64) {
    let (x, psi) = if psi.im < 0.0 { (-x, -psi) } else { (x, psi) };
    let rho = (ONE - x) / (ONE + x);
    let e1 = (I * psi).exp();
    let e2 = e1 * e1;
    let den = ONE - rho * rho * e2;
    ((ONE - rho * rho) * e1 / den, rho * (ONE - e2) / den)
}

/// Independent route: Fresnel interfaces and propagation matrices.
pub fn transfer_matrix_slab(detuning: f64, params: &SimulationParams, x: Complex64) -> SlabResponse {
    let q = params.optical_wavenumber(detuning);
    let psi = x * (params.length() * q);
    // Interface from index a to index b as a 2×2 matrix acting on (forward, backward).
    let interface = |a: Complex64, b: Complex64| -> [[Complex64; 2]; 2] {
        let r = (a - b) / (a + b);
        let t = 2.0 * a / (a + b);
        [[ONE / t, r / t], [r / t, ONE / t]]
    };
    let mul = |a: [[Complex64; 2]; 2], b: [[Complex64; 2]; 2]| -> [[Complex64; 2]; 2] {
        [
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ]
    };
    let zero = Complex64::new(0.0, 0.0);
    let prop = [[(-I * psi).exp(), zero], [zero, (I * psi).exp()]];
    let m = mul(mul(interface(ONE, x), prop), interface(x, ONE));
    let t = ONE / m[0][0];
    let r = m[1][0] / m[0][0];
    SlabResponse { detuning, transmission: t.norm_sqr(), reflection: r.norm_sqr(), psi }
}

/// Forward-wave transmission `|exp(i q ∫ (√ε(z) − 1) dz)|²` with `√ε`
/// expanded to `order` in `ε − 1`; reflection is neglected.
pub fn forward_only(
    profile: &OrderParameterProfile,
    detuning: f64,
    params: &SimulationParams,
    order: u32,
) -> Result<SlabResponse> {
    if order == 0 {
        return Err(Error::InvalidParameter { name: "order", reason: "must be at least 1" });
    }
    let q = params.optical_wavenumber(detuning);
    let series = |z: f64| -> Result<Complex64> {
        let eps = solve_epsilon(detuning - params.mu_c, profile.density(z), params.mu_c)?;
        let u = eps.epsilon - ONE;
        let mut coeff = 1.0;
        let mut power = ONE;
        let mut sum = Complex64::new(0.0, 0.0);
        for j in 1..=order {
            coeff *= (1.5 - j as f64) / j as f64;
            power *= u;
            sum += coeff * power;
        }
        Ok(sum)
    };
    let h = profile.half_length();
    let integral = if profile.kind == crate::ProfileKind::Uniform || profile.is_vacuum() {
        series(0.0)? * profile.length
    } else {
        let k = 4.0 * profile.max_wavenumber() + 1.0;
        let panels = real::ceil(k * profile.length / (2.0 * core::f64::consts::PI)) as usize + 2;
        let (xs, ws) = GaussLegendre::new(16).composite(-h, h, panels);
        let mut acc = Complex64::new(0.0, 0.0);
        for (z, w) in xs.iter().zip(&ws) {
            acc += series(*z)? * *w;
        }
        acc
    };
    let phase = integral * q;
    Ok(SlabResponse {
        detuning,
        transmission: (I * phase).exp().norm_sqr(),
        reflection: 0.0,
        psi: phase + q * profile.length,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_is_transparent() {
        let p = SimulationParams::default();
        let r = slab_response(0.3, &p, ONE);
        assert_eq!((r.transmission, r.reflection), (1.0, 0.0));
    }

    #[test]
    fn half_wave_plate_does_not_reflect() {
        let p = SimulationParams { slab_depth: 1.0, ..Default::default() };
        let q = p.optical_wavenumber(0.0);
        // ψ = 3π with √ε real.
        let x = Complex64::new(3.0 * core::f64::consts::PI / (p.length() * q), 0.0);
        let r = slab_response(0.0, &p, x);
        assert!(r.reflection < 1e-25);
        assert!((r.transmission - 1.0).abs() < 1e-12);
    }

    #[test]
    fn compact_and_transfer_forms_agree() {
        let p = SimulationParams::default();
        for d in [-3.0, -0.5, 0.0, 0.45, 2.0] {
            let eps = solve_epsilon(d, 0.05, 0.0).unwrap();
            let a = slab_response(d, &p, eps.sqrt_epsilon);
            let b = transfer_matrix_slab(d, &p, eps.sqrt_epsilon);
            assert!((a.transmission - b.transmission).abs() < 1e-10);
            assert!((a.reflection - b.reflection).abs() < 1e-10);
        }
    }

    #[test]
    fn decaying_form_matches_compact_form() {
        let p = SimulationParams { slab_depth: 3.0, ..Default::default() };
        let x = Complex64::new(1.1, 0.4);
        let psi = x * (p.length() * p.optical_wavenumber(0.0));
        let (t, r) = decaying_form(x, psi);
        let c = slab_response(0.0, &p, x);
        assert!((t.norm_sqr() - c.transmission).abs() < 1e-12);
        assert!((r.norm_sqr() - c.reflection).abs() < 1e-12);
    }
}
