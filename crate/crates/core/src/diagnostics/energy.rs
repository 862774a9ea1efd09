use std::f64::consts::PI;

use crate::grid_state::{FieldState, RadialGrid};
use crate::model::TargetGeometry;
use crate::stencil::{d1, d1_at, gregory, trapezoid, Parity};

/// Area of the unit 3-sphere: dx = SPHERE_AREA · R³ dR on radial ℝ⁴.
pub const SPHERE_AREA: f64 = 2.0 * PI * PI;

/// ∫_{ℝ⁴} g dx for a radial g sampled on the grid.
pub fn integrate_r4(g: &[f64], grid: &RadialGrid) -> f64 {
    let w: Vec<f64> = g
        .iter()
        .enumerate()
        .map(|(i, x)| x * grid.radius(i).powi(3))
        .collect();
    SPHERE_AREA * trapezoid(&w, grid.dr)
}

/// ‖∇v‖²_{L²(ℝ⁴)} and ‖v_T‖²_{L²(ℝ⁴)}.
pub fn energy_parts(v: &[f64], v_t: &[f64], grid: &RadialGrid, order: usize) -> (f64, f64) {
    let v_r = d1(v, grid.dr, order, Parity::Even);
    let grad: Vec<f64> = v_r.iter().map(|x| x * x).collect();
    let kin: Vec<f64> = v_t.iter().map(|x| x * x).collect();
    (integrate_r4(&grad, grid), integrate_r4(&kin, grid))
}

/// (‖∇v‖² + ‖v_T‖²)^{1/2} over ℝ⁴, the conserved norm of the free flow.
pub fn energy_flat(v: &[f64], v_t: &[f64], grid: &RadialGrid, order: usize) -> f64 {
    let (g, k) = energy_parts(v, v_t, grid, order);
    (g + k).sqrt()
}

/// ‖v‖⁴_{L⁴(ℝ⁴)}.
pub fn quartic_norm(v: &[f64], grid: &RadialGrid) -> f64 {
    let q: Vec<f64> = v.iter().map(|x| x.powi(4)).collect();
    integrate_r4(&q, grid)
}

/// Form of the potential term in the Problem II energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuarticForm {
    /// ½‖v‖⁴_{L⁴}.
    #[default]
    Fourth,
    /// ½‖v‖_{L⁴}, kept for literal comparison.
    Literal,
}

/// ‖∇v‖² + ‖v_T‖² + ½‖v‖⁴_{L⁴}.
pub fn energy_prob_ii(v: &[f64], v_t: &[f64], grid: &RadialGrid, order: usize) -> f64 {
    energy_prob_ii_with(v, v_t, grid, order, QuarticForm::Fourth)
}

pub fn energy_prob_ii_with(
    v: &[f64],
    v_t: &[f64],
    grid: &RadialGrid,
    order: usize,
    form: QuarticForm,
) -> f64 {
    let (g, k) = energy_parts(v, v_t, grid, order);
    let q = quartic_norm(v, grid);
    let pot = match form {
        QuarticForm::Fourth => q,
        QuarticForm::Literal => q.powf(0.25),
    };
    g + k + 0.5 * pot
}

/// 2π ∫ e^{−Z} [½(u_T² + u_R²) + e^{2Z} f(u)²/(2r²)] r dR.
pub fn energy_curved(s: &FieldState, target: &TargetGeometry, order: usize) -> f64 {
    let n = s.n();
    let h = s.grid.dr;
    let mut w = vec![0.0; n];
    for i in 1..n {
        let rad = s.grid.radius(i);
        let v = s.v[i];
        let r = s.r[i];
        let u_t = rad * s.v_t[i];
        let u_r = v + rad * d1_at(&s.v, i, h, order, Parity::Even);
        let f = target.f(rad * v);
        let z = s.z[i];
        w[i] = (-z).exp() * 0.5 * (u_t * u_t + u_r * u_r) * r + z.exp() * f * f / (2.0 * r);
    }
    // the integrand is odd about the axis, which the Gregory rule tolerates
    2.0 * PI * gregory(&w, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::make_flat_target;

    #[test]
    fn gaussian_gradient_energy() {
        let g = RadialGrid::covering(8.0, 801);
        let v: Vec<f64> = g.nodes().iter().map(|r| (-r * r).exp()).collect();
        let e = energy_flat(&v, &vec![0.0; g.n_points], &g, 4);
        assert!((e - PI).abs() < 1e-6, "{e}");
        assert_eq!(
            energy_flat(&[0.0; 10], &[0.0; 10], &RadialGrid::new(10, 0.1), 4),
            0.0
        );
    }

    #[test]
    fn homogeneity() {
        let g = RadialGrid::covering(8.0, 201);
        let v: Vec<f64> = g.nodes().iter().map(|r| (-r * r).exp()).collect();
        let vt: Vec<f64> = g.nodes().iter().map(|r| r * r * (-r * r).exp()).collect();
        let lam = 3.0;
        let sv: Vec<f64> = v.iter().map(|x| lam * x).collect();
        let svt: Vec<f64> = vt.iter().map(|x| lam * x).collect();
        let e1 = energy_flat(&v, &vt, &g, 4);
        let e2 = energy_flat(&sv, &svt, &g, 4);
        assert!((e2 / e1 - lam).abs() < 1e-12);
        let q1 = quartic_norm(&v, &g);
        let q2 = quartic_norm(&sv, &g);
        assert!((q2 / q1 - lam.powi(4)).abs() < 1e-9);
    }

    #[test]
    fn curved_energy_on_flat_metric_matches_flat_energy() {
        let g = RadialGrid::covering(10.0, 1601);
        let mut s = FieldState::flat_vacuum(g);
        s.v = g
            .nodes()
            .iter()
            .map(|r| 0.1 * (-(r - 3.0) * (r - 3.0)).exp())
            .collect();
        s.v_t = g
            .nodes()
            .iter()
            .map(|r| 0.05 * (-(r - 2.0) * (r - 2.0)).exp())
            .collect();
        let ec = energy_curved(&s, &make_flat_target(), 4);
        let ef = energy_flat(&s.v, &s.v_t, &g, 4);
        assert!(
            (ec - ef * ef / (2.0 * PI)).abs() < 1e-8 * ec,
            "{ec} {} {}",
            ef * ef / (2.0 * PI),
            ec - ef * ef / (2.0 * PI)
        );
    }
}
