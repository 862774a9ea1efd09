//! Fixtures shared by the kernel benchmarks.

use ewm_core::evolve::initial_state;
use ewm_core::linprop::propagate_spectral;
use ewm_core::lp_norms::SpaceTimeTrace;
use ewm_core::{FieldState, ProblemMode, RadialGrid, RunConfig};

/// Small-data Full-mode configuration on `n` points.
pub fn config(n: usize) -> RunConfig {
    let mut c = RunConfig {
        mode: ProblemMode::Full,
        t_final: 1.0,
        ..RunConfig::default()
    };
    c.grid.n_points = n;
    c.profile.amplitude = 1e-2;
    c
}

/// Constrained initial slice for [`config`].
pub fn state(n: usize) -> FieldState {
    initial_state(&config(n)).expect("initial data")
}

/// Free Gaussian wave sampled at `steps` uniform times on [0, 4].
pub fn free_trace(n: usize, steps: usize) -> SpaceTimeTrace {
    let g = RadialGrid::covering(16.0, n);
    let v0: Vec<f64> = g.nodes().iter().map(|r| (-r * r).exp()).collect();
    let v1 = vec![0.0; n];
    let times: Vec<f64> = (0..steps)
        .map(|m| 4.0 * m as f64 / (steps - 1) as f64)
        .collect();
    let (v, v_t) = times
        .iter()
        .map(|&t| propagate_spectral(&v0, &v1, t, g))
        .unzip();
    SpaceTimeTrace::new(g, times, v, v_t).expect("uniform trace")
}
