use rayon::prelude::*;

use super::norms::{strichartz_pair, y_norm_upper, SplitStrategy};
use super::trace::{time_weights, ForcingTrace, SpaceTimeTrace};
use super::DyadicBump;
use crate::diagnostics::energy_flat;
use crate::error::Result;
use crate::linprop::{HankelPlan, SpectralField};

/// Spectral solution of ∂_T² v = Δ₄ v − F with data (v0, v1) at the first
/// forcing time, sampled at the forcing times; the Duhamel integral uses the
/// trapezoid rule over the samples.
pub fn duhamel_trace(v0: &[f64], v1: &[f64], forcing: &ForcingTrace) -> Result<SpaceTimeTrace> {
    let grid = forcing.grid;
    let plan = HankelPlan::cached(grid);
    let a = plan.forward(v0);
    let b = plan.forward(v1);
    let fh: Vec<SpectralField> = forcing.total.par_iter().map(|f| plan.forward(f)).collect();
    let t0 = forcing.times.first().copied().unwrap_or(0.0);
    let solved: Vec<(Vec<f64>, Vec<f64>)> = (0..forcing.times.len())
        .into_par_iter()
        .map(|m| {
            let t = forcing.times[m];
            let w = time_weights(&forcing.times[..=m]);
            let mut v = Vec::with_capacity(a.k.len());
            let mut vt = Vec::with_capacity(a.k.len());
            for (q, &k) in a.k.iter().enumerate() {
                let (s, c) = (k * (t - t0)).sin_cos();
                let mut x = c * a.coeffs[q] + s / k * b.coeffs[q];
                let mut y = -k * s * a.coeffs[q] + c * b.coeffs[q];
                for (p, wp) in w.iter().enumerate() {
                    let (sd, cd) = (k * (t - forcing.times[p])).sin_cos();
                    x -= wp * sd / k * fh[p].coeffs[q];
                    y -= wp * cd * fh[p].coeffs[q];
                }
                v.push(x);
                vt.push(y);
            }
            let v = SpectralField {
                k: a.k.clone(),
                coeffs: v,
            };
            let vt = SpectralField {
                k: a.k.clone(),
                coeffs: vt,
            };
            (plan.inverse(&v), plan.inverse(&vt))
        })
        .collect();
    let (v, v_t) = solved.into_iter().unzip();
    SpaceTimeTrace::new(grid, forcing.times.clone(), v, v_t)
}

/// Both sides of the inhomogeneous Strichartz estimate for one solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InhomogeneousCheck {
    /// ‖v‖_{L²L⁸} + ‖|x|^{1/4} v‖_{L²L¹⁶}.
    pub lhs: f64,
    /// Free energy of the data.
    pub energy: f64,
    /// Annular norm of F.
    pub forcing: f64,
}

impl InhomogeneousCheck {
    /// The constant C implied by this sample.
    pub fn ratio(&self) -> f64 {
        self.lhs / (self.energy + self.forcing)
    }
}

pub fn inhomogeneous_check(
    v0: &[f64],
    v1: &[f64],
    forcing: &ForcingTrace,
    bump: &DyadicBump,
) -> Result<InhomogeneousCheck> {
    let v = duhamel_trace(v0, v1, forcing)?;
    Ok(InhomogeneousCheck {
        lhs: strichartz_pair(&v),
        energy: energy_flat(v0, v1, &forcing.grid, 4),
        forcing: y_norm_upper(forcing, SplitStrategy::AllAnnuli, bump),
    })
}
