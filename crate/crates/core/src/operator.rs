//! Assembly of the polariton operator `M` in the Fourier basis.
//!
//! `M_ss' = (Δ − recoil·k_s²) δ_ss' + π N_ss' + (i/2) E_ss' − Σ_ss'`, with `Δ`
//! measured from the displaced resonance, `N` the density convolution matrix
//! and `E` the convolution matrix of the local `√ε(z)`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::linalg::{CMatrix, DiagonalPlusLowRank};
use crate::quadrature::GaussLegendre;
use crate::self_energy::{check_grid, exact_entry, kernel_prefactor, low_rank_parts, self_energy};
use crate::window::{cis, grid_slab_transform};
use crate::{real, solve_epsilon, Error, FourierGrid, OrderParameterProfile, ProfileKind, Result, SimulationParams};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Fourier coefficients `f_m`, `|m| ≤ order`, of a function on the slab.
///
/// The convolution matrix has entries `f_{s−s'}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvolutionSymbol {
    pub order: usize,
    pub coeffs: Vec<Complex64>,
}

impl ConvolutionSymbol {
    #[inline]
    pub fn get(&self, m: i64) -> Complex64 {
        self.coeffs[(m + self.order as i64) as usize]
    }

    pub fn matrix(&self, grid: &FourierGrid) -> CMatrix {
        assert!(self.order >= 2 * grid.cutoff, "symbol order too small for the grid");
        CMatrix::from_fn(grid.len(), grid.len(), |i, j| self.get(grid.index(i) - grid.index(j)))
    }
}

/// Closed-form symbol of the local density `|Ξ(z)|²`.
pub fn density_symbol(profile: &OrderParameterProfile, order: usize) -> ConvolutionSymbol {
    let l = profile.length;
    let coeffs = (-(order as i64)..=order as i64)
        .map(|m| {
            let mut v = ZERO;
            for a in &profile.components {
                for b in &profile.components {
                    v += a.amplitude * b.amplitude.conj() * grid_slab_transform(a.wavenumber - b.wavenumber, m, l);
                }
            }
            v / l
        })
        .collect();
    ConvolutionSymbol { order, coeffs }
}

/// `N_ss' = (1/L) ∫ |Ξ(z)|² e^{−i(k_s−k_s')z} dz`.
pub fn density_fourier(profile: &OrderParameterProfile, grid: &FourierGrid) -> Result<CMatrix> {
    check_grid(profile, grid)?;
    Ok(density_symbol(profile, 2 * grid.cutoff).matrix(grid))
}

/// Symbol of `f` by composite Gauss-Legendre quadrature over the slab.
///
/// `panels` should resolve the highest harmonic `2π·order/L` plus the
/// variation of `f` itself.
pub fn quadrature_symbol(
    f: impl Fn(f64) -> Result<Complex64>,
    length: f64,
    order: usize,
    panels: usize,
) -> Result<ConvolutionSymbol> {
    let h = 0.5 * length;
    let (xs, ws) = GaussLegendre::new(16).composite(-h, h, panels);
    let mut coeffs = alloc::vec![ZERO; 2 * order + 1];
    for (z, w) in xs.iter().zip(&ws) {
        let fz = f(*z)? * (*w / length);
        let step = cis(-2.0 * PI * z / length);
        let mut phase = cis(2.0 * PI * order as f64 * z / length);
        for c in coeffs.iter_mut() {
            *c += fz * phase;
            phase *= step;
        }
    }
    Ok(ConvolutionSymbol { order, coeffs })
}

/// Panel count for [`quadrature_symbol`] on a profile.
pub fn default_panels(profile: &OrderParameterProfile, order: usize) -> usize {
    let k = 2.0 * PI * order as f64 / profile.length + 4.0 * profile.max_wavenumber() + 1.0;
    real::ceil(k * profile.length / (2.0 * PI)) as usize + 2
}

/// `√ε(z)` from the local density at `detuning` from the displaced resonance.
pub fn local_sqrt_epsilon<'a>(
    profile: &'a OrderParameterProfile,
    detuning: f64,
    params: &'a SimulationParams,
) -> impl Fn(f64) -> Result<Complex64> + 'a {
    move |z| {
        let eps = solve_epsilon(detuning - params.mu_c, profile.density(z), params.mu_c)?;
        Ok(eps.sqrt_epsilon)
    }
}

/// Kinetic and detuning part of the diagonal.
fn bare_diagonal(grid: &FourierGrid, detuning: f64, params: &SimulationParams) -> Vec<Complex64> {
    grid.wavenumbers()
        .map(|k| Complex64::new(detuning - params.recoil * k * k, 0.0))
        .collect()
}

/// Dense operator `M`.
pub fn assemble_operator(
    profile: &OrderParameterProfile,
    grid: &FourierGrid,
    detuning: f64,
    params: &SimulationParams,
    eps_of_z: impl Fn(f64) -> Result<Complex64>,
) -> Result<CMatrix> {
    check_grid(profile, grid)?;
    let sigma = self_energy(profile, grid, detuning, params)?.sigma;
    if sigma.rows() != grid.len() {
        return Err(Error::GridMismatch("self-energy dimension differs from the grid"));
    }
    let mut m = CMatrix::from_diagonal(&bare_diagonal(grid, detuning, params));
    let order = 2 * grid.cutoff;
    let density = density_symbol(profile, order);
    let constant = profile.kind == ProfileKind::Uniform || profile.is_vacuum();
    let sqrt_eps = match constant {
        true => {
            let mut coeffs = alloc::vec![ZERO; 2 * order + 1];
            coeffs[order] = eps_of_z(0.0)?;
            ConvolutionSymbol { order, coeffs }
        }
        false => quadrature_symbol(&eps_of_z, profile.length, order, default_panels(profile, order))?,
    };
    for i in 0..grid.len() {
        for j in 0..grid.len() {
            let d = grid.index(i) - grid.index(j);
            m[(i, j)] += PI * density.get(d) + 0.5 * I * sqrt_eps.get(d) - sigma[(i, j)];
        }
    }
    Ok(m)
}

/// Uniform-slab operator as a diagonal plus low-rank matrix.
///
/// Pole-adjacent columns, and columns whose diagonal nearly vanishes, are
/// carried as exact rank-one corrections.
pub fn structured_uniform_operator(
    profile: &OrderParameterProfile,
    grid: &FourierGrid,
    detuning: f64,
    params: &SimulationParams,
    sqrt_epsilon: Complex64,
) -> Result<DiagonalPlusLowRank> {
    check_grid(profile, grid)?;
    if profile.kind != ProfileKind::Uniform {
        return Err(Error::GridMismatch("structured operator requires a uniform profile"));
    }
    let n = grid.len();
    let q = params.optical_wavenumber(detuning);
    let n0 = profile.components.first().map_or(0.0, |c| c.amplitude.norm_sqr());
    let a0 = kernel_prefactor(q);
    let scale = a0 / grid.length;
    let mut parts = low_rank_parts(profile, grid, q);
    let onsite = PI * n0 + 0.5 * I * sqrt_epsilon;
    let mut diagonal = bare_diagonal(grid, detuning, params);
    for (i, d) in diagonal.iter_mut().enumerate() {
        *d += onsite;
        if !parts.special.contains(&i) {
            let k = grid.wavenumber(i);
            *d -= a0 * n0 * Complex64::new(0.0, 2.0 * q) / (q * q - k * k);
        }
    }
    let typical = diagonal.iter().map(|d| d.norm()).fold(0.0, f64::max).max(1.0);
    for (i, d) in diagonal.iter().enumerate() {
        if !parts.special.contains(&i) && d.norm() < 1e-8 * typical {
            parts.special.push(i);
            parts.c1[i] = ZERO;
            parts.c2[i] = ZERO;
        }
    }
    let mut special_columns = Vec::with_capacity(parts.special.len());
    for &j in &parts.special {
        let mut col: Vec<Complex64> = (0..n).map(|i| -exact_entry(profile, grid, i, j, q)).collect();
        let k = grid.wavenumber(j);
        col[j] += Complex64::new(detuning - params.recoil * k * k, 0.0) + onsite;
        special_columns.push((j, col));
    }
    for &j in &parts.special {
        diagonal[j] = Complex64::new(1.0, 0.0);
    }
    let mut op = DiagonalPlusLowRank::new(diagonal);
    op.push(parts.r1.iter().map(|r| -scale * r).collect(), parts.c1);
    op.push(parts.r2.iter().map(|r| -scale * r).collect(), parts.c2);
    for (j, mut col) in special_columns {
        col[j] -= Complex64::new(1.0, 0.0);
        let mut e = alloc::vec![ZERO; n];
        e[j] = Complex64::new(1.0, 0.0);
        op.push(col, e);
    }
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::make_profile;

    #[test]
    fn structured_matches_dense_uniform() {
        let params = SimulationParams { slab_depth: 3.0, ..Default::default() };
        let prof = make_profile(ProfileKind::Uniform, &params).unwrap();
        let grid = FourierGrid::for_profile(&prof, 4.0);
        for detuning in [0.0, 0.45, -1.3] {
            let f = local_sqrt_epsilon(&prof, detuning, &params);
            let x = f(0.0).unwrap();
            let dense = assemble_operator(&prof, &grid, detuning, &params, &f).unwrap();
            let structured = structured_uniform_operator(&prof, &grid, detuning, &params, x).unwrap();
            let diff = dense.max_abs_diff(&structured.to_dense());
            assert!(diff < 1e-11 * dense.max_abs(), "{detuning}: {diff}");
        }
    }

    #[test]
    fn vacuum_operator_is_diagonal() {
        let params = SimulationParams { density: 0.0, ..Default::default() };
        let prof = make_profile(ProfileKind::Cosine, &params).unwrap();
        let grid = FourierGrid::new(6, prof.length);
        let m = assemble_operator(&prof, &grid, 0.2, &params, local_sqrt_epsilon(&prof, 0.2, &params)).unwrap();
        for i in 0..grid.len() {
            for j in 0..grid.len() {
                let k = grid.wavenumber(i);
                let want = if i == j { Complex64::new(0.2 - params.recoil * k * k, 0.5) } else { ZERO };
                assert_eq!(m[(i, j)], want);
            }
        }
    }
}
