use super::{DataProfile, FieldState, RadialGrid};
use crate::error::{Error, Result};
use crate::model::{ProblemMode, TargetGeometry};

/// Knobs for the constraint solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialDataOptions {
    /// 2 selects the midpoint rule, anything else classical RK4.
    pub order: usize,
    /// Step-doubling error bound, relative to max(1, max r).
    pub tolerance: f64,
}

impl Default for InitialDataOptions {
    fn default() -> Self {
        InitialDataOptions {
            order: 4,
            tolerance: 1e-4,
        }
    }
}

/// Initial slice with (r, r_T) solving the constraints in the gauge Z = Z_T = 0.
pub fn build_initial_data(
    profile: &DataProfile,
    target: &TargetGeometry,
    grid: RadialGrid,
    mode: ProblemMode,
) -> Result<FieldState> {
    build_initial_data_with(profile, target, grid, mode, InitialDataOptions::default())
}

pub fn build_initial_data_with(
    profile: &DataProfile,
    target: &TargetGeometry,
    grid: RadialGrid,
    mode: ProblemMode,
    opts: InitialDataOptions,
) -> Result<FieldState> {
    let mut s = FieldState::flat_vacuum(grid);
    if profile.amplitude == 0.0 {
        return Ok(s);
    }
    for i in 0..grid.n_points {
        let r = grid.radius(i);
        s.v[i] = profile.v0(r);
        s.v_t[i] = profile.v1(r);
    }
    if mode.pins_radius() {
        return Ok(s);
    }

    let fine = integrate(profile, target, grid.dr, grid.n_points, opts.order)?;
    let coarse_n = grid.n_points.div_ceil(2);
    let coarse = integrate(profile, target, 2.0 * grid.dr, coarse_n, opts.order)?;
    let p = if opts.order == 2 { 2 } else { 4 };
    let mut diff: f64 = 0.0;
    let mut scale: f64 = 1.0;
    for j in 0..coarse_n {
        for k in [0, 2] {
            diff = diff.max((fine[2 * j][k] - coarse[j][k]).abs());
        }
        scale = scale.max(fine[2 * j][0].abs());
    }
    let estimate = diff / ((1u32 << p) - 1) as f64 / scale;
    if !(estimate <= opts.tolerance) {
        return Err(Error::NonConvergence {
            estimate,
            tolerance: opts.tolerance,
        });
    }

    for (i, y) in fine.iter().enumerate() {
        s.r[i] = y[0];
        s.r_t[i] = y[2];
    }
    s.r[0] = 0.0;
    s.r_t[0] = 0.0;
    Ok(s)
}

/// Outward integration of y = (r, ∂_R r, r_T):
///   ∂_R² r = −r [½(u_1² + (∂_R u_0)²) + f(u_0)²/(2r²)],
///   ∂_R r_T = −r u_1 ∂_R u_0,
/// from r = 0, ∂_R r = 1, r_T = 0 on the axis.
fn integrate(
    profile: &DataProfile,
    target: &TargetGeometry,
    h: f64,
    n: usize,
    order: usize,
) -> Result<Vec<[f64; 3]>> {
    let rhs = |rad: f64, y: [f64; 3]| -> [f64; 3] {
        let v0 = profile.v0(rad);
        let du0 = v0 + rad * profile.dv0(rad);
        let u1 = rad * profile.v1(rad);
        let u0 = rad * v0;
        // f(u)²/r² = (f(u)/u)² v² (R/r)², with R/r → 1/∂_R r on the axis
        let rad_over_r = if rad == 0.0 { 1.0 / y[1] } else { rad / y[0] };
        let fr = target.f_over_u(u0) * v0 * rad_over_r;
        let source = 0.5 * (u1 * u1 + du0 * du0) + 0.5 * fr * fr;
        [y[1], -y[0] * source, -y[0] * u1 * du0]
    };
    let axpy =
        |y: [f64; 3], a: f64, k: [f64; 3]| [y[0] + a * k[0], y[1] + a * k[1], y[2] + a * k[2]];

    let mut out = Vec::with_capacity(n);
    let mut y = [0.0, 1.0, 0.0];
    out.push(y);
    for i in 1..n {
        let rad = (i - 1) as f64 * h;
        y = if order == 2 {
            let k1 = rhs(rad, y);
            let k2 = rhs(rad + 0.5 * h, axpy(y, 0.5 * h, k1));
            axpy(y, h, k2)
        } else {
            let k1 = rhs(rad, y);
            let k2 = rhs(rad + 0.5 * h, axpy(y, 0.5 * h, k1));
            let k3 = rhs(rad + 0.5 * h, axpy(y, 0.5 * h, k2));
            let k4 = rhs(rad + h, axpy(y, h, k3));
            [
                y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
                y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
                y[2] + h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
            ]
        };
        let radius = i as f64 * h;
        if !(y[0] > 0.0) {
            return Err(Error::NonPositiveRadius {
                time: 0.0,
                radius,
                r: y[0],
            });
        }
        out.push(y);
    }
    Ok(out)
}
