//! Condensate order parameters built from windowed plane waves.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::real;
use crate::{Error, Result, SimulationParams};

/// Shape of the condensate wavefunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileKind {
    /// Constant order parameter across the slab.
    Uniform,
    /// Half-period cosine vanishing at both faces.
    Cosine,
    /// Cosine envelope modulated by two counter-propagating fragments.
    Split,
}

impl ProfileKind {
    pub const ALL: [ProfileKind; 3] = [ProfileKind::Uniform, ProfileKind::Cosine, ProfileKind::Split];

    pub fn as_str(self) -> &'static str {
        match self {
            ProfileKind::Uniform => "uniform",
            ProfileKind::Cosine => "cosine",
            ProfileKind::Split => "split",
        }
    }
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProfileKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "uniform" => Ok(ProfileKind::Uniform),
            "cosine" => Ok(ProfileKind::Cosine),
            "split" => Ok(ProfileKind::Split),
            _ => Err(Error::UnknownProfile(s.to_string())),
        }
    }
}

/// One component `c·exp(iκz)` of the order parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub amplitude: Complex64,
    /// Wavenumber in units of `k0`.
    pub wavenumber: f64,
}

/// Order parameter `Ξ(z) = Σ c_a exp(iκ_a z)` on `|z| < L/2`, zero outside.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderParameterProfile {
    pub kind: ProfileKind,
    pub components: Vec<PlaneWave>,
    /// Slab length in units of `1/k0`.
    pub length: f64,
}

/// Builds the component list of a profile kind for the given parameters.
pub fn make_profile(kind: ProfileKind, params: &SimulationParams) -> Result<OrderParameterProfile> {
    params.validate()?;
    let n0 = params.density;
    let length = params.length();
    let kc = PI / length;
    let wave = |amplitude: f64, wavenumber: f64| PlaneWave {
        amplitude: Complex64::new(amplitude, 0.0),
        wavenumber,
    };
    let components = match kind {
        ProfileKind::Uniform => vec![wave(real::sqrt(n0), 0.0)],
        ProfileKind::Cosine => {
            let c = real::sqrt(n0) / 2.0;
            vec![wave(c, kc), wave(c, -kc)]
        }
        ProfileKind::Split => {
            let c = real::sqrt(n0 / 8.0);
            let dq = params.delta_q;
            vec![wave(c, kc + dq), wave(c, kc - dq), wave(c, -kc + dq), wave(c, -kc - dq)]
        }
    };
    Ok(OrderParameterProfile { kind, components, length })
}

impl OrderParameterProfile {
    /// Half of the slab length.
    pub fn half_length(&self) -> f64 {
        0.5 * self.length
    }

    /// Order parameter at position `z` (units of `1/k0`).
    pub fn value(&self, z: f64) -> Complex64 {
        if real::abs(z) >= self.half_length() {
            return Complex64::new(0.0, 0.0);
        }
        self.components
            .iter()
            .map(|c| {
                let (s, co) = real::sin_cos(c.wavenumber * z);
                c.amplitude * Complex64::new(co, s)
            })
            .sum()
    }

    /// Local density `|Ξ(z)|²`.
    pub fn density(&self, z: f64) -> f64 {
        self.value(z).norm_sqr()
    }

    /// True when every amplitude vanishes.
    pub fn is_vacuum(&self) -> bool {
        self.components.iter().all(|c| c.amplitude == Complex64::new(0.0, 0.0))
    }

    /// Largest component wavenumber magnitude.
    pub fn max_wavenumber(&self) -> f64 {
        self.components
            .iter()
            .map(|c| real::abs(c.wavenumber))
            .fold(0.0, f64::max)
    }

    /// `∫|Ξ(z)|² dz` over the slab, in closed form.
    pub fn particle_number(&self) -> f64 {
        let mut total = Complex64::new(0.0, 0.0);
        for a in &self.components {
            for b in &self.components {
                let w = crate::window::slab_transform(a.wavenumber - b.wavenumber, self.half_length());
                total += a.amplitude * b.amplitude.conj() * w;
            }
        }
        total.re
    }

    /// True when all amplitudes are real, which makes the kernel reciprocal.
    pub fn is_real(&self) -> bool {
        self.components.iter().all(|c| c.amplitude.im == 0.0)
    }
}
