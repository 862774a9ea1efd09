use super::hankel::{HankelPlan, SpectralField};
use crate::grid_state::{FieldState, RadialGrid};

/// Free-wave solution at time T in frequency space:
/// \hat v(T) = cos(kT) \hat v_0 + sin(kT)/k \hat v_1, with its T-derivative.
pub fn propagate_modes(
    v0: &SpectralField,
    v1: &SpectralField,
    t: f64,
) -> (SpectralField, SpectralField) {
    let n = v0.k.len();
    let mut v = Vec::with_capacity(n);
    let mut v_t = Vec::with_capacity(n);
    for m in 0..n {
        let k = v0.k[m];
        let (s, c) = (k * t).sin_cos();
        v.push(c * v0.coeffs[m] + s / k * v1.coeffs[m]);
        v_t.push(-k * s * v0.coeffs[m] + c * v1.coeffs[m]);
    }
    (
        SpectralField {
            k: v0.k.clone(),
            coeffs: v,
        },
        SpectralField {
            k: v0.k.clone(),
            coeffs: v_t,
        },
    )
}

/// Exact free evolution of (v0, v1) by time `t` (negative `t` runs backward).
pub fn propagate_spectral(
    v0: &[f64],
    v1: &[f64],
    t: f64,
    grid: RadialGrid,
) -> (Vec<f64>, Vec<f64>) {
    let plan = HankelPlan::cached(grid);
    let (a, b) = propagate_modes(&plan.forward(v0), &plan.forward(v1), t);
    (plan.inverse(&a), plan.inverse(&b))
}

/// Energy of (v, v_T) evaluated spectrally.
pub fn spectral_energy(v: &[f64], v_t: &[f64], grid: RadialGrid) -> f64 {
    let plan = HankelPlan::cached(grid);
    plan.energy(&plan.forward(v), &plan.forward(v_t))
}

/// Scattering data candidate: the free flow run backward from the state's
/// time to T = 0.
pub fn scattering_pullback(s: &FieldState) -> (Vec<f64>, Vec<f64>) {
    if s.time == 0.0 {
        return (s.v.clone(), s.v_t.clone());
    }
    propagate_spectral(&s.v, &s.v_t, -s.time, s.grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(g: &RadialGrid) -> (Vec<f64>, Vec<f64>) {
        let v0 = g.nodes().iter().map(|r| (-r * r).exp()).collect();
        let v1 = g
            .nodes()
            .iter()
            .map(|r| {
                0.5 * ((-2.0 * (r - 1.0) * (r - 1.0)).exp() + (-2.0 * (r + 1.0) * (r + 1.0)).exp())
            })
            .collect();
        (v0, v1)
    }

    #[test]
    fn identity_energy_and_semigroup() {
        let g = RadialGrid::covering(16.0, 513);
        let (v0, v1) = data(&g);
        let (a, b) = propagate_spectral(&v0, &v1, 0.0, g);
        for i in 0..g.n_points {
            assert!(
                (a[i] - v0[i]).abs() < 1e-9 && (b[i] - v1[i]).abs() < 1e-9,
                "{i} {} {}",
                a[i] - v0[i],
                b[i] - v1[i]
            );
        }
        let e0 = spectral_energy(&v0, &v1, g);
        let (v5, vt5) = propagate_spectral(&v0, &v1, 5.0, g);
        assert!((spectral_energy(&v5, &vt5, g) / e0 - 1.0).abs() < 1e-8);
        let (x, xt) = propagate_spectral(&v0, &v1, 2.0, g);
        let (y, yt) = propagate_spectral(&x, &xt, 3.0, g);
        for i in 0..g.n_points {
            assert!((y[i] - v5[i]).abs() < 1e-8 && (yt[i] - vt5[i]).abs() < 1e-8);
        }
    }

    #[test]
    fn pullback_inverts_free_flow() {
        let g = RadialGrid::covering(16.0, 513);
        let (v0, v1) = data(&g);
        let (v, v_t) = propagate_spectral(&v0, &v1, 4.0, g);
        let mut s = FieldState::flat_vacuum(g);
        s.time = 4.0;
        s.v = v;
        s.v_t = v_t;
        let (p0, p1) = scattering_pullback(&s);
        for i in 0..g.n_points {
            assert!((p0[i] - v0[i]).abs() < 1e-8 && (p1[i] - v1[i]).abs() < 1e-8);
        }
    }
}
