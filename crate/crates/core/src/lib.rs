//! Fourier-space polariton scattering from a one-dimensional condensate slab.
//!
//! Units: the natural linewidth is the frequency unit, wavenumbers are measured
//! in `k0` and internal lengths in `1/k0`. User-facing slab depths are given in
//! resonance wavelengths `λ0 = 2π/k0`.
//!
//! The crate is `no_std` (with `alloc`) when built without the default `std`
//! feature.

#![cfg_attr(not(feature = "std"), no_std)]
// `!(x <= limit)` deliberately rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
mod real;

pub mod dispersion;
pub mod grid;
pub mod linalg;
pub mod maxwell;
pub mod operator;
pub mod params;
pub mod permittivity;
pub mod profile;
pub mod quadrature;
pub mod scattering;
pub mod self_energy;
pub mod solver;
pub mod window;

pub use error::Error;
pub use grid::FourierGrid;
pub use params::SimulationParams;
pub use permittivity::{lorentz_shift, solve_epsilon, Permittivity};
pub use profile::{make_profile, OrderParameterProfile, PlaneWave, ProfileKind};
pub use scattering::ScatterCoefficients;
pub use solver::{converge, scatter, ConvergenceOptions, Converged, PolaritonSystem};

pub use num_complex::Complex64;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
