use crate::grid_state::FieldState;
use crate::model::TargetGeometry;
use crate::stencil::{d1, Parity};

/// Grid maxima of the three smallness quantities.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Smallness {
    pub e2z_minus_1: f64,
    pub r_over_r_minus_1: f64,
    pub rv: f64,
}

pub fn smallness_monitors(s: &FieldState, order: usize) -> Smallness {
    let n = s.n();
    let dev = s.radius_deviation();
    let mut out = Smallness::default();
    for i in 0..n {
        out.e2z_minus_1 = out.e2z_minus_1.max((2.0 * s.z[i]).exp_m1().abs());
        out.rv = out.rv.max((s.grid.radius(i) * s.v[i]).abs());
        if i > 0 {
            out.r_over_r_minus_1 = out.r_over_r_minus_1.max((dev[i] / s.r[i]).abs());
        }
    }
    // R/r → 1/∂_R r on the axis
    let slope = crate::stencil::d1_at(&dev, 0, s.grid.dr, order, Parity::Odd);
    out.r_over_r_minus_1 = out.r_over_r_minus_1.max((slope / (1.0 + slope)).abs());
    out
}

/// m = 1 + 4 e^{−2Z} ∂_ξ r ∂_η r = 1 + e^{−2Z}(r_T² − r_R²).
pub fn mass_aspect(s: &FieldState, order: usize) -> Vec<f64> {
    let dev = s.radius_deviation();
    let a = d1(&dev, s.grid.dr, order, Parity::Odd);
    (0..s.n())
        .map(|i| {
            let z = s.z[i];
            let em2z = (-2.0 * z).exp();
            // 1 − e^{−2Z}(1 + a)² written without cancellation
            -(-2.0 * z).exp_m1() - em2z * (2.0 * a[i] + a[i] * a[i]) + em2z * s.r_t[i] * s.r_t[i]
        })
        .collect()
}

/// Pointwise comparison of ∂_R m against the bounds, maximized over interior
/// nodes.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MassAspectCheck {
    /// max of |∂_R m| − (f²/(4r) + r(u_T² + u_R²)), clipped at 0.
    pub literal_excess: f64,
    /// max of |∂_R m| − (|r_R| f²/r + e^{−2Z}(|r_R| + |r_T|) r (u_T² + u_R²)), clipped at 0.
    pub sharp_excess: f64,
    /// max |∂_R m − 2 e^{−2Z} r (r_R T_TT − r_T u_T u_R)|.
    pub identity_residual: f64,
    /// max |∂_R m|, for scale.
    pub max_dm: f64,
}

pub fn mass_aspect_check(s: &FieldState, target: &TargetGeometry, order: usize) -> MassAspectCheck {
    let h = s.grid.dr;
    let m = mass_aspect(s, order);
    let dm = d1(&m, h, order, Parity::Even);
    let dev = s.radius_deviation();
    let r_r = d1(&dev, h, order, Parity::Odd);
    let v_r = d1(&s.v, h, order, Parity::Even);
    let mut out = MassAspectCheck::default();
    for i in 1..s.n().saturating_sub(2) {
        let rad = s.grid.radius(i);
        let r = s.r[i];
        let rr = 1.0 + r_r[i];
        let rt = s.r_t[i];
        let v = s.v[i];
        let u_t = rad * s.v_t[i];
        let u_r = v + rad * v_r[i];
        let du2 = u_t * u_t + u_r * u_r;
        let f = target.f(rad * v);
        let e2z = (2.0 * s.z[i]).exp();
        let t_tt = 0.5 * du2 + e2z * f * f / (2.0 * r * r);
        let lhs = dm[i].abs();
        let literal = f * f / (4.0 * r) + r * du2;
        let sharp = rr.abs() * f * f / r + (rr.abs() + rt.abs()) * r * du2 / e2z;
        let exact = 2.0 / e2z * r * (rr * t_tt - rt * u_t * u_r);
        out.literal_excess = out.literal_excess.max(lhs - literal);
        out.sharp_excess = out.sharp_excess.max(lhs - sharp);
        out.identity_residual = out.identity_residual.max((dm[i] - exact).abs());
        out.max_dm = out.max_dm.max(lhs);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_state::RadialGrid;
    use crate::model::make_hyperbolic_target;

    #[test]
    fn flat_vacuum_monitors_vanish() {
        let s = FieldState::flat_vacuum(RadialGrid::covering(12.0, 300));
        assert_eq!(smallness_monitors(&s, 4), Smallness::default());
        assert!(mass_aspect(&s, 4).iter().all(|&m| m == 0.0));
        let c = mass_aspect_check(&s, &make_hyperbolic_target(), 4);
        assert_eq!(c.max_dm, 0.0);
    }
}
