//! Self-energy of the condensate slab in the Fourier basis.
//!
//! The real-space kernel is `K(z,z') = A0 Ξ(z) Ξ*(z') e^{iq|z−z'|}` with
//! `A0 = −(3π/2) i q`, and
//! `Σ_ss' = (1/L) ∫∫ e^{−ik_s z + ik_s' z'} K(z,z') dz dz'`.
//! For plane-wave components each double integral splits as
//!
//! ```text
//! J(α, β) = 2iq P(α+β)/(q²−β²) + P(α+q) g₊(β) + P(α−q) g₋(β)
//! ```
//!
//! with `P(x) = 2 sin(xL/2)/x`, so Σ is a column-scaled Toeplitz matrix plus a
//! rank-two term. Columns whose `β` lies close to `±q` use the exact form
//! based on divided differences of the exponential instead.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::linalg::CMatrix;
use crate::window::{cis, grid_slab_transform, kernel_integral};
use crate::{Error, FourierGrid, OrderParameterProfile, ProfileKind, Result, SimulationParams};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Columns with `|β ∓ q|` below this use the exact kernel integral.
pub const POLE_GUARD: f64 = 1e-2;

/// Self-energy matrix at one frequency.
#[derive(Debug, Clone)]
pub struct SelfEnergyMatrix {
    pub sigma: CMatrix,
    pub detuning: f64,
    pub kind: ProfileKind,
}

/// `A0 = −2πi q d0²/ħ` with `d0²/ħ = 3/4` in linewidth units.
pub fn kernel_prefactor(q: f64) -> Complex64 {
    Complex64::new(0.0, -1.5 * PI * q)
}

pub(crate) fn check_grid(profile: &OrderParameterProfile, grid: &FourierGrid) -> Result<()> {
    if crate::real::abs(profile.length - grid.length) > 1e-12 * profile.length {
        return Err(Error::GridMismatch("grid length differs from the profile slab length"));
    }
    Ok(())
}

/// Σ over the grid at `detuning` (measured from the displaced resonance).
pub fn self_energy(
    profile: &OrderParameterProfile,
    grid: &FourierGrid,
    detuning: f64,
    params: &SimulationParams,
) -> Result<SelfEnergyMatrix> {
    check_grid(profile, grid)?;
    let q = params.optical_wavenumber(detuning);
    let sigma = match profile.kind {
        ProfileKind::Uniform => {
            let n0 = profile.components.first().map_or(0.0, |c| c.amplitude.norm_sqr());
            uniform_closed_form(n0, grid, q)
        }
        _ => general(profile, grid, q),
    };
    Ok(SelfEnergyMatrix { sigma, detuning, kind: profile.kind })
}

/// Exact entry `Σ_ss'` at grid positions `i`, `j`, valid for every `q`.
pub fn exact_entry(profile: &OrderParameterProfile, grid: &FourierGrid, i: usize, j: usize, q: f64) -> Complex64 {
    let ks = grid.wavenumber(i);
    let ksp = grid.wavenumber(j);
    let mut sum = ZERO;
    for a in &profile.components {
        for b in &profile.components {
            let j_ab = kernel_integral(a.wavenumber - ks, ksp - b.wavenumber, q, grid.length);
            sum += a.amplitude * b.amplitude.conj() * j_ab;
        }
    }
    kernel_prefactor(q) * sum / grid.length
}

fn near_pole(beta: f64, q: f64) -> bool {
    crate::real::abs(beta - q) < POLE_GUARD || crate::real::abs(beta + q) < POLE_GUARD
}

fn sign(s: i64) -> f64 {
    if s.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Rank-two part and pole-adjacent columns of the decomposition, without `A0/L`.
pub(crate) struct LowRankParts {
    pub r1: Vec<Complex64>,
    pub c1: Vec<Complex64>,
    pub r2: Vec<Complex64>,
    pub c2: Vec<Complex64>,
    /// Positions of columns that must be taken from [`exact_entry`].
    pub special: Vec<usize>,
}

pub(crate) fn low_rank_parts(profile: &OrderParameterProfile, grid: &FourierGrid, q: f64) -> LowRankParts {
    let n = grid.len();
    let l = grid.length;
    let h = 0.5 * l;
    let mut r1 = vec![ZERO; n];
    let mut r2 = vec![ZERO; n];
    let mut c1 = vec![ZERO; n];
    let mut c2 = vec![ZERO; n];
    let mut special = Vec::new();
    for i in 0..n {
        let s = grid.index(i);
        for a in &profile.components {
            r1[i] += a.amplitude * grid_slab_transform(a.wavenumber + q, s, l);
            r2[i] += a.amplitude * grid_slab_transform(a.wavenumber - q, s, l);
        }
        let ksp = grid.wavenumber(i);
        if profile.components.iter().any(|b| near_pole(ksp - b.wavenumber, q)) {
            special.push(i);
            continue;
        }
        for b in &profile.components {
            let beta = ksp - b.wavenumber;
            let cb = b.amplitude.conj() * sign(s);
            c1[i] += cb * I * cis((b.wavenumber + q) * h) / (beta - q);
            c2[i] += cb * -I * cis((q - b.wavenumber) * h) / (beta + q);
        }
    }
    LowRankParts { r1, c1, r2, c2, special }
}

fn general(profile: &OrderParameterProfile, grid: &FourierGrid, q: f64) -> CMatrix {
    let n = grid.len();
    let l = grid.length;
    let smax = grid.cutoff as i64;
    let parts = low_rank_parts(profile, grid, q);
    let scale = kernel_prefactor(q) / l;

    // Toeplitz symbols T_b(m) = Σ_a c_a c̄_b P(κ_a − κ_b + 2πm/L), m = s' − s.
    let width = (4 * smax + 1) as usize;
    let symbols: Vec<Vec<Complex64>> = profile
        .components
        .iter()
        .map(|b| {
            (0..width)
                .map(|k| {
                    let m = k as i64 - 2 * smax;
                    profile
                        .components
                        .iter()
                        .map(|a| a.amplitude * b.amplitude.conj() * grid_slab_transform(a.wavenumber - b.wavenumber, -m, l))
                        .sum()
                })
                .collect()
        })
        .collect();
    let col_scale: Vec<Vec<Complex64>> = profile
        .components
        .iter()
        .map(|b| {
            (0..n)
                .map(|j| {
                    let beta = grid.wavenumber(j) - b.wavenumber;
                    if near_pole(beta, q) {
                        ZERO
                    } else {
                        Complex64::new(0.0, 2.0 * q) / (q * q - beta * beta)
                    }
                })
                .collect()
        })
        .collect();

    let mut sigma = CMatrix::zeros(n, n);
    for i in 0..n {
        let row = sigma.row_mut(i);
        for (j, out) in row.iter_mut().enumerate() {
            let k = (j as i64 - i as i64 + 2 * smax) as usize;
            let mut v = parts.r1[i] * parts.c1[j] + parts.r2[i] * parts.c2[j];
            for (sym, cs) in symbols.iter().zip(&col_scale) {
                v += sym[k] * cs[j];
            }
            *out = scale * v;
        }
    }
    for &j in &parts.special {
        for i in 0..n {
            sigma[(i, j)] = exact_entry(profile, grid, i, j, q);
        }
    }
    sigma
}

/// Closed form for a uniform slab of density `n0`:
/// `Σ_ss' = δ_ss' 3πn0 q²/(q²−k_s²) + C (a_s a_s' + b_s b_s')` with
/// `a_s = (−1)^s/(q−k_s)`, `b_s = (−1)^s/(q+k_s)` and
/// `C = −(3πi/2) q n0 (1 − e^{iqL})/L`.
///
/// Rows and columns of modes within [`POLE_GUARD`] of the light line are
/// replaced by their exact limiting values.
pub fn uniform_closed_form(n0: f64, grid: &FourierGrid, q: f64) -> CMatrix {
    let n = grid.len();
    let l = grid.length;
    let c = Complex64::new(0.0, -1.5 * PI * q * n0) * (Complex64::new(1.0, 0.0) - cis(q * l)) / l;
    let mut a = vec![0.0; n];
    let mut b = vec![0.0; n];
    let mut special = Vec::new();
    for i in 0..n {
        let k = grid.wavenumber(i);
        if near_pole(k, q) {
            special.push(i);
            continue;
        }
        let sg = sign(grid.index(i));
        a[i] = sg / (q - k);
        b[i] = sg / (q + k);
    }
    let mut sigma = CMatrix::from_fn(n, n, |i, j| c * (a[i] * a[j] + b[i] * b[j]));
    for i in 0..n {
        if !special.contains(&i) {
            let k = grid.wavenumber(i);
            sigma[(i, i)] += 3.0 * PI * n0 * q * q / (q * q - k * k);
        }
    }
    if !special.is_empty() {
        let profile = OrderParameterProfile {
            kind: ProfileKind::Uniform,
            components: vec![crate::PlaneWave {
                amplitude: Complex64::new(crate::real::sqrt(n0), 0.0),
                wavenumber: 0.0,
            }],
            length: l,
        };
        for &p in &special {
            for k in 0..n {
                sigma[(p, k)] = exact_entry(&profile, grid, p, k, q);
                sigma[(k, p)] = exact_entry(&profile, grid, k, p, q);
            }
        }
    }
    sigma
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::make_profile;

    #[test]
    fn decomposition_matches_exact_kernel() {
        let params = SimulationParams { slab_depth: 2.0, ..Default::default() };
        for kind in ProfileKind::ALL {
            let prof = make_profile(kind, &params).unwrap();
            let grid = FourierGrid::new(8, prof.length);
            let q = params.optical_wavenumber(0.3);
            let fast = general(&prof, &grid, q);
            let scale = fast.max_abs();
            for i in 0..grid.len() {
                for j in 0..grid.len() {
                    let e = exact_entry(&prof, &grid, i, j, q);
                    assert!((fast[(i, j)] - e).norm() <= 1e-11 * scale, "{kind} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn vacuum_profile_gives_zero() {
        let params = SimulationParams { density: 0.0, ..Default::default() };
        let prof = make_profile(ProfileKind::Cosine, &params).unwrap();
        let grid = FourierGrid::new(4, prof.length);
        let s = self_energy(&prof, &grid, 0.0, &params).unwrap();
        assert_eq!(s.sigma.max_abs(), 0.0);
    }
}
