use std::sync::Arc;

use rayon::prelude::*;

use crate::grid_state::RadialGrid;
use crate::linprop::{HankelPlan, SpectralField};

/// Littlewood–Paley profile with a fixed C^∞ ramp.
///
/// φ(ξ) = 1 for |ξ| ≤ 1, 0 for |ξ| ≥ 2, and h(2−|ξ|)/(h(2−|ξ|) + h(|ξ|−1))
/// in between, with h(t) = e^{−1/t}. The multiplier is χ(ξ) = φ(ξ/2) − φ(ξ),
/// supported in 1 ≤ |ξ| ≤ 4, and P_N multiplies by χ(ξ/N).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DyadicBump;

fn ramp(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (-1.0 / t).exp()
    }
}

impl DyadicBump {
    pub fn phi(&self, xi: f64) -> f64 {
        let a = xi.abs();
        if a <= 1.0 {
            1.0
        } else if a >= 2.0 {
            0.0
        } else {
            let up = ramp(2.0 - a);
            up / (up + ramp(a - 1.0))
        }
    }

    pub fn chi(&self, xi: f64) -> f64 {
        self.phi(xi / 2.0) - self.phi(xi)
    }

    /// χ(ξ/N).
    pub fn chi_n(&self, xi: f64, n: f64) -> f64 {
        self.chi(xi / n)
    }

    /// Σ_{j∈ℤ} χ(2^{−j}ξ), summed over the scales that can be nonzero.
    pub fn partition_sum(&self, xi: f64) -> f64 {
        if xi == 0.0 {
            return 0.0;
        }
        let c = xi.abs().log2().floor() as i32;
        (c - 3..=c + 1).map(|j| self.chi(xi / 2f64.powi(j))).sum()
    }
}

/// Resolved frequency band [4π/R_max, π/(4 dR)].
pub fn resolved_band(grid: &RadialGrid) -> (f64, f64) {
    (
        4.0 * std::f64::consts::PI / grid.r_max(),
        std::f64::consts::PI / (4.0 * grid.dr),
    )
}

/// Dyadic scales N = 2^j inside the resolved band, ascending.
pub fn dyadic_scales(grid: &RadialGrid) -> Vec<f64> {
    let (lo, hi) = resolved_band(grid);
    if !(hi >= lo) {
        return Vec::new();
    }
    let (a, b) = (lo.log2().ceil() as i32, hi.log2().floor() as i32);
    (a..=b).map(|j| 2f64.powi(j)).collect()
}

/// Largest |Σ_j χ(2^{−j}ξ) − 1| over the plan's frequencies in the band.
pub fn partition_residual(grid: &RadialGrid, bump: &DyadicBump) -> f64 {
    let (lo, hi) = resolved_band(grid);
    HankelPlan::cached(*grid)
        .k
        .iter()
        .filter(|&&k| k >= lo && k <= hi)
        .map(|&k| (bump.partition_sum(k) - 1.0).abs())
        .fold(0.0, f64::max)
}

fn band_limit(f: &SpectralField, n: f64, bump: &DyadicBump) -> SpectralField {
    f.map(|k, c| bump.chi_n(k, n) * c)
}

/// P_N f.
pub fn project(f: &[f64], n: f64, bump: &DyadicBump, grid: &RadialGrid) -> Vec<f64> {
    let plan = HankelPlan::cached(*grid);
    plan.inverse(&band_limit(&plan.forward(f), n, bump))
}

/// f split into the dyadic pieces of the resolved band plus the two tails;
/// the pieces and tails sum back to f.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub scales: Vec<f64>,
    pub pieces: Vec<Vec<f64>>,
    /// Frequencies below the lowest scale: φ(ξ/N_min).
    pub low_tail: Vec<f64>,
    /// Frequencies above the top band: 1 − φ(ξ/(2N_max)).
    pub high_tail: Vec<f64>,
}

impl Decomposition {
    pub fn reconstruct(&self) -> Vec<f64> {
        let mut out = self.low_tail.clone();
        for (o, h) in out.iter_mut().zip(&self.high_tail) {
            *o += h;
        }
        for p in &self.pieces {
            for (o, x) in out.iter_mut().zip(p) {
                *o += x;
            }
        }
        out
    }
}

/// Multipliers of the pieces and tails, evaluated on spectral data.
pub(crate) struct SpectralSplit {
    pub pieces: Vec<SpectralField>,
    pub low_tail: SpectralField,
    pub high_tail: SpectralField,
}

pub(crate) fn split_spectral(
    f: &SpectralField,
    scales: &[f64],
    bump: &DyadicBump,
) -> SpectralSplit {
    let pieces = scales.iter().map(|&n| band_limit(f, n, bump)).collect();
    let (low_tail, high_tail) = match (scales.first(), scales.last()) {
        (Some(&lo), Some(&hi)) => (
            f.map(|k, c| bump.phi(k / lo) * c),
            f.map(|k, c| (1.0 - bump.phi(k / (2.0 * hi))) * c),
        ),
        _ => (f.clone(), f.map(|_, _| 0.0)),
    };
    SpectralSplit {
        pieces,
        low_tail,
        high_tail,
    }
}

pub fn decompose(f: &[f64], bump: &DyadicBump, grid: &RadialGrid) -> Decomposition {
    let plan: Arc<HankelPlan> = HankelPlan::cached(*grid);
    let scales = dyadic_scales(grid);
    let split = split_spectral(&plan.forward(f), &scales, bump);
    Decomposition {
        pieces: split.pieces.par_iter().map(|p| plan.inverse(p)).collect(),
        low_tail: plan.inverse(&split.low_tail),
        high_tail: plan.inverse(&split.high_tail),
        scales,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn profile_shape() {
        let b = DyadicBump;
        assert_eq!(b.phi(0.5), 1.0);
        assert_eq!(b.phi(2.5), 0.0);
        assert_eq!(b.chi(0.9), 0.0);
        assert_eq!(b.chi(4.1), 0.0);
        let mut prev = 1.0;
        for i in 0..=200 {
            let x = 1.0 + i as f64 / 200.0;
            let p = b.phi(x);
            assert!(p <= prev && (0.0..=1.0).contains(&p));
            prev = p;
        }
    }

    proptest! {
        #[test]
        fn partition_of_unity(l in -20.0f64..20.0) {
            let b = DyadicBump;
            prop_assert!((b.partition_sum(2f64.powf(l)) - 1.0).abs() < 1e-12);
            prop_assert!(b.chi(2f64.powf(l)) >= 0.0);
        }
    }

    #[test]
    fn band_is_inside_grid() {
        let g = RadialGrid::covering(16.0, 513);
        let s = dyadic_scales(&g);
        assert_eq!(s.first(), Some(&1.0));
        assert_eq!(s.last(), Some(&16.0));
        assert!(partition_residual(&g, &DyadicBump) < 1e-12);
    }
}
