//! Solution of the polariton system and the cutoff convergence controller.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::{relative_residual, CMatrix, Lu};
use crate::operator::{assemble_operator, local_sqrt_epsilon, structured_uniform_operator};
use crate::scattering::{coefficients_from_response, incident_projection, s_matrix, ScatterCoefficients};
use crate::{grid, Error, FourierGrid, OrderParameterProfile, ProfileKind, Result, SimulationParams};

/// Largest accepted 1-norm condition estimate.
pub const MAX_CONDITION: f64 = 1e12;

/// Largest accepted relative residual of a solve.
pub const MAX_RESIDUAL: f64 = 1e-8;

fn solve_propagator_at(m: &CMatrix, detuning: f64, cutoff: usize) -> Result<CMatrix> {
    let lu = Lu::factor(m.clone())?;
    let condition = lu.condition_estimate();
    if !(condition <= MAX_CONDITION) {
        return Err(Error::IllConditioned { detuning, cutoff, condition });
    }
    let g = lu.inverse();
    let mut product = m.matmul(&g);
    for i in 0..product.rows() {
        product[(i, i)] -= Complex64::new(1.0, 0.0);
    }
    let residual = product.max_abs() / m.max_abs();
    if !(residual <= MAX_RESIDUAL) {
        return Err(Error::Residual { detuning, cutoff, residual });
    }
    Ok(g)
}

/// `G = M⁻¹` by LU with partial pivoting, with condition and residual checks.
pub fn solve_propagator(m: &CMatrix) -> Result<CMatrix> {
    solve_propagator_at(m, f64::NAN, m.rows().saturating_sub(1) / 2)
}

/// Operator and propagator at one frequency.
#[derive(Debug, Clone)]
pub struct PolaritonSystem {
    pub grid: FourierGrid,
    pub operator: CMatrix,
    pub propagator: CMatrix,
    pub detuning: f64,
    pub profile: OrderParameterProfile,
}

impl PolaritonSystem {
    /// Assembles and inverts the dense operator.
    pub fn build(
        profile: &OrderParameterProfile,
        grid: FourierGrid,
        detuning: f64,
        params: &SimulationParams,
    ) -> Result<Self> {
        let operator = assemble_operator(profile, &grid, detuning, params, local_sqrt_epsilon(profile, detuning, params))?;
        let propagator = solve_propagator_at(&operator, detuning, grid.cutoff)?;
        Ok(Self { grid, operator, propagator, detuning, profile: profile.clone() })
    }

    pub fn scatter(&self, params: &SimulationParams) -> Result<ScatterCoefficients> {
        s_matrix(&self.propagator, &self.grid, self.detuning, params, &self.profile)
    }

    /// `max |M G − I| / max |M|`.
    pub fn residual(&self) -> f64 {
        let mut p = self.operator.matmul(&self.propagator);
        for i in 0..p.rows() {
            p[(i, i)] -= Complex64::new(1.0, 0.0);
        }
        p.max_abs() / self.operator.max_abs()
    }

    /// `max |G_ss' − G_{−s',−s}| / max |G|`, zero for a reciprocal medium.
    pub fn reciprocity_defect(&self) -> f64 {
        let n = self.grid.len();
        let g = &self.propagator;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((g[(i, j)] - g[(n - 1 - j, n - 1 - i)]).norm());
            }
        }
        worst / g.max_abs()
    }
}

/// Scattering coefficients on a fixed grid.
///
/// Uniform slabs are solved through their diagonal-plus-low-rank structure;
/// other profiles by a dense LU solve of `M g = V`.
pub fn scatter(
    profile: &OrderParameterProfile,
    grid: &FourierGrid,
    detuning: f64,
    params: &SimulationParams,
) -> Result<ScatterCoefficients> {
    if profile.is_vacuum() {
        return Ok(ScatterCoefficients::identity());
    }
    let q = params.optical_wavenumber(detuning);
    let v = incident_projection(profile, grid, q);
    let eps = local_sqrt_epsilon(profile, detuning, params);
    let response = if profile.kind == ProfileKind::Uniform {
        let op = structured_uniform_operator(profile, grid, detuning, params, eps(0.0)?)?;
        let g = op.solve(&v)?;
        let residual = relative_residual(&op.matvec(&g), &v, op.max_abs_bound(), &g);
        if !(residual <= MAX_RESIDUAL) {
            return Err(Error::Residual { detuning, cutoff: grid.cutoff, residual });
        }
        g
    } else {
        let m = assemble_operator(profile, grid, detuning, params, eps)?;
        let lu = Lu::factor(m.clone())?;
        let condition = lu.condition_estimate();
        if !(condition <= MAX_CONDITION) {
            return Err(Error::IllConditioned { detuning, cutoff: grid.cutoff, condition });
        }
        let g = lu.solve(&v);
        let residual = relative_residual(&m.matvec(&g), &v, m.max_abs(), &g);
        if !(residual <= MAX_RESIDUAL) {
            return Err(Error::Residual { detuning, cutoff: grid.cutoff, residual });
        }
        g
    };
    Ok(coefficients_from_response(profile, grid, q, &response))
}

/// Settings of the cutoff doubling loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceOptions {
    /// Largest accepted change of T and R between successive cutoffs.
    pub tol: f64,
    pub max_doublings: u32,
    /// Margin of the initial grid over the coupled-mode range.
    pub margin: f64,
}

impl Default for ConvergenceOptions {
    fn default() -> Self {
        Self { tol: 1e-6, max_doublings: 10, margin: grid::DEFAULT_MARGIN }
    }
}

/// Outcome of [`converge`].
#[derive(Debug, Clone, PartialEq)]
pub struct Converged {
    pub coefficients: ScatterCoefficients,
    pub cutoff: usize,
    /// `(cutoff, coefficients)` for every grid that was solved.
    pub history: Vec<(usize, ScatterCoefficients)>,
}

/// Doubles the cutoff from the default grid until T and R settle within `tol`.
///
/// Returns the result on the finest grid solved.
pub fn converge(
    profile: &OrderParameterProfile,
    detuning: f64,
    params: &SimulationParams,
    options: &ConvergenceOptions,
) -> Result<Converged> {
    if !(options.tol > 0.0) {
        return Err(Error::InvalidParameter { name: "tol", reason: "must be positive" });
    }
    let mut grid = FourierGrid::for_profile(profile, options.margin);
    let first = scatter(profile, &grid, detuning, params)?;
    let mut history = alloc::vec![(grid.cutoff, first)];
    if profile.is_vacuum() {
        return Ok(Converged { coefficients: first, cutoff: grid.cutoff, history });
    }
    let mut previous = first;
    let mut change = f64::INFINITY;
    for _ in 0..options.max_doublings {
        grid = grid.doubled();
        let next = scatter(profile, &grid, detuning, params)?;
        history.push((grid.cutoff, next));
        change = crate::real::abs(next.transmission - previous.transmission)
            .max(crate::real::abs(next.reflection - previous.reflection));
        previous = next;
        if change < options.tol {
            return Ok(Converged { coefficients: next, cutoff: grid.cutoff, history });
        }
    }
    Err(Error::NotConverged { detuning, cutoff: grid.cutoff, change, last: previous })
}
