use super::energy::{energy_flat, energy_prob_ii};
use crate::grid_state::FieldState;
use crate::linprop::{propagate_spectral, scattering_pullback};

/// Agreement the spectral propagator is held to.
pub const PROPAGATOR_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringRow {
    pub t0: f64,
    /// Energy norm of pullback(T0) − pullback(T_final).
    pub delta: f64,
    /// `delta` divided by the energy norm of the final pullback.
    pub delta_rel: f64,
    /// sup over T ≥ T0 of E(v(T) − S(T − T0)(v(T0), v_T(T0))).
    pub forward_residual: f64,
}

fn nearest(trace: &[FieldState], t: f64) -> Option<&FieldState> {
    trace
        .iter()
        .min_by(|a, b| (a.time - t).abs().total_cmp(&(b.time - t).abs()))
}

/// Cauchy increments of the scattering pullback and the forward residuals,
/// one row per requested T0. Each T0 is matched to the nearest slice in the
/// trace; the last slice plays the role of T_final.
pub fn scattering_residual(trace: &[FieldState], t0s: &[f64], order: usize) -> Vec<ScatteringRow> {
    let Some(last) = trace.iter().max_by(|a, b| a.time.total_cmp(&b.time)) else {
        return Vec::new();
    };
    let grid = last.grid;
    let (inf0, inf1) = scattering_pullback(last);
    let scale = energy_flat(&inf0, &inf1, &grid, order);
    t0s.iter()
        .filter_map(|&t0| {
            let s0 = nearest(trace, t0)?;
            let (p0, p1) = scattering_pullback(s0);
            let d0: Vec<f64> = p0.iter().zip(&inf0).map(|(a, b)| a - b).collect();
            let d1: Vec<f64> = p1.iter().zip(&inf1).map(|(a, b)| a - b).collect();
            let delta = energy_flat(&d0, &d1, &grid, order);
            let mut forward: f64 = 0.0;
            for s in trace.iter().filter(|s| s.time >= s0.time) {
                let (w, w_t) = propagate_spectral(&s0.v, &s0.v_t, s.time - s0.time, grid);
                let b0: Vec<f64> = s.v.iter().zip(&w).map(|(a, b)| a - b).collect();
                let b1: Vec<f64> = s.v_t.iter().zip(&w_t).map(|(a, b)| a - b).collect();
                forward = forward.max(energy_prob_ii(&b0, &b1, &grid, order));
            }
            Some(ScatteringRow {
                t0: s0.time,
                delta,
                delta_rel: if scale > 0.0 { delta / scale } else { 0.0 },
                forward_residual: forward,
            })
        })
        .collect()
}
