use super::FieldState;
use crate::model::TargetGeometry;
use crate::stencil::{d1_at, d2_at, Parity};

/// Pointwise constraint violations on interior nodes 1..n−1.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintResiduals {
    pub hamiltonian: Vec<f64>,
    pub momentum: Vec<f64>,
}

impl ConstraintResiduals {
    pub fn max_hamiltonian(&self) -> f64 {
        self.hamiltonian.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_momentum(&self) -> f64 {
        self.momentum.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn max_abs(&self) -> f64 {
        self.max_hamiltonian().max(self.max_momentum())
    }
}

/// Residuals, scaled by e^{−2Z}, of
///   (Z_T r_T + Z_R r_R − r_RR)/r = ½(u_T² + u_R²) + e^{2Z} f(u)²/(2r²),
///   (Z_T r_R + Z_R r_T − r_TR)/r = u_T u_R.
pub fn constraint_residuals(
    s: &FieldState,
    target: &TargetGeometry,
    order: usize,
) -> ConstraintResiduals {
    let n = s.n();
    let h = s.grid.dr;
    let dev = s.radius_deviation();
    let mut ham = Vec::with_capacity(n.saturating_sub(2));
    let mut mom = Vec::with_capacity(n.saturating_sub(2));
    for i in 1..n.saturating_sub(1) {
        let rad = s.grid.radius(i);
        let r = s.r[i];
        let r_r = 1.0 + d1_at(&dev, i, h, order, Parity::Odd);
        let r_rr = d2_at(&dev, i, h, order, Parity::Odd);
        let r_tr = d1_at(&s.r_t, i, h, order, Parity::Odd);
        let z_r = d1_at(&s.z, i, h, order, Parity::Even);
        let v_r = d1_at(&s.v, i, h, order, Parity::Even);
        let (z, z_t, r_t) = (s.z[i], s.z_t[i], s.r_t[i]);
        let u = rad * s.v[i];
        let u_t = rad * s.v_t[i];
        let u_r = s.v[i] + rad * v_r;
        let e2z = (2.0 * z).exp();
        let f = target.f(u);
        let t_tt = 0.5 * (u_t * u_t + u_r * u_r) + e2z * f * f / (2.0 * r * r);
        let em2z = 1.0 / e2z;
        ham.push(em2z * ((z_t * r_t + z_r * r_r - r_rr) / r - t_tt));
        mom.push(em2z * ((z_t * r_r + z_r * r_t - r_tr) / r - u_t * u_r));
    }
    ConstraintResiduals {
        hamiltonian: ham,
        momentum: mom,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_state::RadialGrid;
    use crate::model::make_hyperbolic_target;

    #[test]
    fn flat_vacuum_is_exact() {
        let s = FieldState::flat_vacuum(RadialGrid::covering(10.0, 128));
        let c = constraint_residuals(&s, &make_hyperbolic_target(), 4);
        assert_eq!(c.max_abs(), 0.0);
        assert_eq!(c.hamiltonian.len(), 126);
    }

    #[test]
    fn bumped_conformal_factor_is_detected() {
        let g = RadialGrid::covering(10.0, 201);
        let mut s = FieldState::flat_vacuum(g);
        for (i, z) in s.z.iter_mut().enumerate() {
            let x = g.radius(i) - 3.0;
            *z = 0.1 * (-x * x).exp();
        }
        let c = constraint_residuals(&s, &make_hyperbolic_target(), 4);
        assert!(c.max_abs() > 1e-2);
    }
}
