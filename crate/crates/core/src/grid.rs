//! Periodic Fourier grid over the slab.

use core::f64::consts::PI;

use crate::real;
use crate::OrderParameterProfile;

/// Default margin of the largest grid wavenumber over the coupled-mode range.
pub const DEFAULT_MARGIN: f64 = 4.0;

/// Modes `k_s = 2πs/L` for `s ∈ [−s_max, s_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierGrid {
    pub cutoff: usize,
    /// Slab length in units of `1/k0`.
    pub length: f64,
}

impl FourierGrid {
    pub fn new(cutoff: usize, length: f64) -> Self {
        Self { cutoff, length }
    }

    /// Smallest symmetric grid whose largest wavenumber reaches
    /// `margin·(1 + 2κ_max)`, with `κ_max` the largest component wavenumber.
    pub fn for_profile(profile: &OrderParameterProfile, margin: f64) -> Self {
        let k_required = margin * (1.0 + 2.0 * profile.max_wavenumber());
        let cutoff = real::ceil(k_required * profile.length / (2.0 * PI) - 1e-9) as usize;
        Self::new(cutoff.max(1), profile.length)
    }

    /// Number of modes.
    pub fn len(&self) -> usize {
        2 * self.cutoff + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Mode index of position `i` in `0..len()`.
    #[inline]
    pub fn index(&self, i: usize) -> i64 {
        i as i64 - self.cutoff as i64
    }

    /// Position of mode index `s`.
    #[inline]
    pub fn position(&self, s: i64) -> Option<usize> {
        let i = s + self.cutoff as i64;
        (0..self.len() as i64).contains(&i).then_some(i as usize)
    }

    #[inline]
    pub fn wavenumber(&self, i: usize) -> f64 {
        2.0 * PI * self.index(i) as f64 / self.length
    }

    pub fn mode_indices(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.len()).map(|i| self.index(i))
    }

    pub fn wavenumbers(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.wavenumber(i))
    }

    /// Grid with twice the cutoff.
    pub fn doubled(&self) -> Self {
        Self::new(2 * self.cutoff, self.length)
    }

    /// Largest grid wavenumber.
    pub fn max_wavenumber(&self) -> f64 {
        2.0 * PI * self.cutoff as f64 / self.length
    }

    /// Spacing `2π/L` between neighbouring modes.
    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.length
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{make_profile, ProfileKind, SimulationParams};

    #[test]
    fn default_grid_covers_coupled_modes() {
        let p = SimulationParams::default();
        for kind in ProfileKind::ALL {
            let prof = make_profile(kind, &p).unwrap();
            let g = FourierGrid::for_profile(&prof, DEFAULT_MARGIN);
            let need = DEFAULT_MARGIN * (1.0 + 2.0 * prof.max_wavenumber());
            assert!(g.max_wavenumber() >= need - 1e-12);
            assert!(g.max_wavenumber() - g.spacing() < need);
        }
    }

    #[test]
    fn symmetric_indices() {
        let g = FourierGrid::new(3, 10.0);
        let idx: alloc::vec::Vec<i64> = g.mode_indices().collect();
        assert_eq!(idx, [-3, -2, -1, 0, 1, 2, 3]);
        assert_eq!(g.position(-3), Some(0));
        assert_eq!(g.position(4), None);
    }
}
