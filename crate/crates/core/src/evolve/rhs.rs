use crate::error::{Error, Result};
use crate::grid_state::{FieldState, RadialGrid};
use crate::model::{ProblemMode, TargetGeometry};
use crate::stencil::{d1, d1_at, d2_at, even_axis_extrapolate, half_width, Parity};

/// Accelerations of the three evolved fields.
#[derive(Debug, Clone, PartialEq)]
pub struct Rhs {
    pub dv_t: Vec<f64>,
    pub dr_t: Vec<f64>,
    pub dz_t: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricRhs {
    pub dr_t: Vec<f64>,
    pub dz_t: Vec<f64>,
}

/// ∂_R² v + (3/R) ∂_R v, with 4 ∂_R² v on the axis.
pub fn box4p1(v: &[f64], grid: &RadialGrid, order: usize) -> Vec<f64> {
    let h = grid.dr;
    (0..v.len())
        .map(|i| {
            let d2 = d2_at(v, i, h, order, Parity::Even);
            if i == 0 {
                4.0 * d2
            } else {
                d2 + 3.0 / grid.radius(i) * d1_at(v, i, h, order, Parity::Even)
            }
        })
        .collect()
}

/// Quantities built from r that every right-hand side needs.
struct Geometry {
    /// r − R.
    dev: Vec<f64>,
    /// r/R − 1; even, axis value extrapolated.
    drho: Vec<f64>,
    /// ∂_R (r/R).
    drho_r: Vec<f64>,
    /// r_T / r; even, axis value extrapolated.
    rt_over_r: Vec<f64>,
}

impl Geometry {
    fn new(s: &FieldState, order: usize) -> Result<Self> {
        let n = s.n();
        for i in 1..n {
            if !(s.r[i] > 0.0) {
                return Err(Error::NonPositiveRadius {
                    time: s.time,
                    radius: s.grid.radius(i),
                    r: s.r[i],
                });
            }
        }
        let dev = s.radius_deviation();
        let mut drho = vec![0.0; n];
        let mut q = vec![0.0; n];
        for i in 1..n {
            let rad = s.grid.radius(i);
            drho[i] = dev[i] / rad;
            q[i] = s.r_t[i] / rad;
        }
        drho[0] = even_axis_extrapolate(drho[1], drho[2], drho[3]);
        q[0] = even_axis_extrapolate(q[1], q[2], q[3]);
        let drho_r = d1(&drho, s.grid.dr, order, Parity::Even);
        let rt_over_r = q.iter().zip(&drho).map(|(q, d)| q / (1.0 + d)).collect();
        Ok(Geometry {
            dev,
            drho,
            drho_r,
            rt_over_r,
        })
    }

    #[inline]
    fn rho(&self, i: usize) -> f64 {
        1.0 + self.drho[i]
    }
}

fn transport_coefficient(mode: ProblemMode) -> f64 {
    match mode {
        ProblemMode::Full => 1.0,
        ProblemMode::ProblemII => 0.5,
        _ => 0.0,
    }
}

/// The three pieces of F: metric potential H·v/ρ², transport and cubic term.
#[derive(Debug, Clone, PartialEq)]
pub struct NonlinearParts {
    pub potential: Vec<f64>,
    pub transport: Vec<f64>,
    pub cubic: Vec<f64>,
}

impl NonlinearParts {
    fn zero(n: usize) -> Self {
        NonlinearParts {
            potential: vec![0.0; n],
            transport: vec![0.0; n],
            cubic: vec![0.0; n],
        }
    }

    pub fn total(&self) -> Vec<f64> {
        (0..self.potential.len())
            .map(|i| self.potential[i] + self.transport[i] + self.cubic[i])
            .collect()
    }
}

fn parts_with(
    s: &FieldState,
    mode: ProblemMode,
    target: &TargetGeometry,
    order: usize,
    geo: &Geometry,
) -> NonlinearParts {
    let n = s.n();
    let mut out = NonlinearParts::zero(n);
    if mode == ProblemMode::Free {
        return out;
    }
    let h = s.grid.dr;
    let rad = |i: usize| s.grid.radius(i);

    // e^{2Z} − ρ(ρ + R ρ_R), written in deviations so flat space gives 0
    let bracket: Vec<f64> = (0..n)
        .map(|i| {
            let d = geo.drho[i];
            (2.0 * s.z[i]).exp_m1() - (2.0 * d + d * d + rad(i) * (1.0 + d) * geo.drho_r[i])
        })
        .collect();
    // The bracket vanishes on the axis for regular data, so it is divided by
    // R² after removing its axis value; the quotient is even.
    let mut reg = vec![0.0; n];
    for i in 1..n {
        reg[i] = (bracket[i] - bracket[0]) / (rad(i) * rad(i));
    }
    reg[0] = even_axis_extrapolate(reg[1], reg[2], reg[3]);

    let c_tr = transport_coefficient(mode);
    for i in 0..n {
        let rho = geo.rho(i);
        let v = s.v[i];
        let e2z = (2.0 * s.z[i]).exp();
        out.potential[i] = reg[i] * v / (rho * rho);
        if c_tr != 0.0 {
            let v_r = d1_at(&s.v, i, h, order, Parity::Even);
            let l_r = geo.drho_r[i] / rho;
            out.transport[i] = c_tr * (s.v_t[i] * geo.rt_over_r[i] - v_r * l_r);
        }
        out.cubic[i] = e2z * target.zeta(rad(i) * v) * v * v * v / (rho * rho);
    }
    out
}

fn nonlinearity_with(
    s: &FieldState,
    mode: ProblemMode,
    target: &TargetGeometry,
    order: usize,
    geo: &Geometry,
) -> Vec<f64> {
    parts_with(s, mode, target, order, geo).total()
}

/// F split into its potential, transport and cubic pieces.
pub fn nonlinearity_parts(
    s: &FieldState,
    mode: ProblemMode,
    target: &TargetGeometry,
    order: usize,
) -> Result<NonlinearParts> {
    if mode == ProblemMode::Free {
        return Ok(NonlinearParts::zero(s.n()));
    }
    let geo = Geometry::new(s, order)?;
    Ok(parts_with(s, mode, target, order, &geo))
}

/// The source F in ∂_T² v = Δ₄ v − F for the chosen reduction.
pub fn nonlinearity(
    s: &FieldState,
    mode: ProblemMode,
    target: &TargetGeometry,
    order: usize,
) -> Result<Vec<f64>> {
    if mode == ProblemMode::Free {
        return Ok(vec![0.0; s.n()]);
    }
    let geo = Geometry::new(s, order)?;
    Ok(nonlinearity_with(s, mode, target, order, &geo))
}

fn metric_rhs_with(
    s: &FieldState,
    target: &TargetGeometry,
    mode: ProblemMode,
    order: usize,
    geo: &Geometry,
) -> MetricRhs {
    let n = s.n();
    let h = s.grid.dr;
    let mut dr_t = vec![0.0; n];
    let mut dz_t = vec![0.0; n];
    let evolve_r = !mode.pins_radius();
    let evolve_z = !mode.pins_conformal_factor();
    for i in 0..n {
        let rad = s.grid.radius(i);
        let v = s.v[i];
        let rho = geo.rho(i);
        let e2z = (2.0 * s.z[i]).exp();
        // f(u)²/r² = (f(u)/u)² v² / ρ², finite on the axis
        let fu = target.f_over_u(rad * v) * v;
        let f2_over_r2 = fu * fu / (rho * rho);
        if evolve_r && i > 0 {
            // f²/r = R·(f²/r²)·ρ vanishes on the axis, as does r_RR by oddness
            let r_rr = d2_at(&geo.dev, i, h, order, Parity::Odd);
            dr_t[i] = r_rr + e2z * f2_over_r2 * rad * rho;
        }
        if evolve_z {
            let u_t = rad * s.v_t[i];
            let u_r = v + rad * d1_at(&s.v, i, h, order, Parity::Even);
            let z_rr = d2_at(&s.z, i, h, order, Parity::Even);
            dz_t[i] = z_rr - 0.5 * (u_t * u_t - u_r * u_r) - 0.5 * e2z * f2_over_r2;
        }
    }
    MetricRhs { dr_t, dz_t }
}

/// ∂_T² r = ∂_R² r + e^{2Z} f(u)²/r and
/// ∂_T² Z = ∂_R² Z − ½(u_T² − u_R²) − e^{2Z} f(u)²/(2r²).
pub fn metric_rhs(
    s: &FieldState,
    target: &TargetGeometry,
    mode: ProblemMode,
    order: usize,
) -> Result<MetricRhs> {
    let geo = Geometry::new(s, order)?;
    Ok(metric_rhs_with(s, target, mode, order, &geo))
}

/// Full right-hand side, with the source F returned alongside. The outermost
/// stencil half-width of nodes is held at zero acceleration.
pub fn compute_rhs(
    s: &FieldState,
    mode: ProblemMode,
    target: &TargetGeometry,
    order: usize,
) -> Result<(Rhs, Vec<f64>)> {
    let needs_geometry = mode != ProblemMode::Free;
    let (f, metric) = if needs_geometry {
        let geo = Geometry::new(s, order)?;
        (
            nonlinearity_with(s, mode, target, order, &geo),
            metric_rhs_with(s, target, mode, order, &geo),
        )
    } else {
        let n = s.n();
        (
            vec![0.0; n],
            MetricRhs {
                dr_t: vec![0.0; n],
                dz_t: vec![0.0; n],
            },
        )
    };
    let lap = box4p1(&s.v, &s.grid, order);
    let mut dv_t: Vec<f64> = lap.iter().zip(&f).map(|(l, f)| l - f).collect();
    let MetricRhs { mut dr_t, mut dz_t } = metric;
    let n = s.n();
    for i in n - half_width(order)..n {
        dv_t[i] = 0.0;
        dr_t[i] = 0.0;
        dz_t[i] = 0.0;
    }
    Ok((Rhs { dv_t, dr_t, dz_t }, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{make_flat_target, make_hyperbolic_target};

    fn grid() -> RadialGrid {
        RadialGrid::covering(10.0, 201)
    }

    #[test]
    fn box_of_constant_and_quadratic() {
        let g = grid();
        let c = vec![3.5; g.n_points];
        assert!(box4p1(&c, &g, 4).iter().all(|&x| x == 0.0));
        let q: Vec<f64> = g.nodes().iter().map(|r| r * r).collect();
        for order in [2, 4] {
            let b = box4p1(&q, &g, order);
            for x in &b[..g.n_points - 1] {
                assert!((x - 8.0).abs() < 1e-9, "{x}");
            }
        }
    }

    #[test]
    fn box_of_gaussian_converges() {
        let err = |n: usize| {
            let g = RadialGrid::covering(6.0, n);
            let v: Vec<f64> = g.nodes().iter().map(|r| (-r * r).exp()).collect();
            let b = box4p1(&v, &g, 4);
            g.nodes()
                .iter()
                .zip(&b)
                .take(n - 3)
                .map(|(r, b)| (b - 4.0 * (r * r - 2.0) * (-r * r).exp()).abs())
                .fold(0.0, f64::max)
        };
        let ratio = err(301) / err(601);
        assert!((ratio / 16.0 - 1.0).abs() < 0.15, "{ratio}");
    }

    #[test]
    fn flat_space_sources_vanish() {
        let g = grid();
        let s = FieldState::flat_vacuum(g);
        for mode in ProblemMode::ALL {
            let f = nonlinearity(&s, mode, &make_hyperbolic_target(), 4).unwrap();
            assert!(f.iter().all(|&x| x == 0.0));
            let m = metric_rhs(&s, &make_hyperbolic_target(), mode, 4).unwrap();
            assert!(m.dr_t.iter().chain(&m.dz_t).all(|&x| x == 0.0));
        }
    }

    #[test]
    fn flat_target_full_mode_is_linear_free() {
        let g = grid();
        let mut s = FieldState::flat_vacuum(g);
        s.v = g.nodes().iter().map(|r| 0.3 * (-r * r).exp()).collect();
        let f = nonlinearity(&s, ProblemMode::Full, &make_flat_target(), 4).unwrap();
        assert!(f.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn cubic_axis_limit() {
        let g = grid();
        let mut s = FieldState::flat_vacuum(g);
        let c = 0.2;
        s.v = vec![c; g.n_points];
        let f = nonlinearity(&s, ProblemMode::Full, &make_hyperbolic_target(), 4).unwrap();
        assert!((f[0] - 2.0 / 3.0 * c * c * c).abs() < 1e-15);
    }

    #[test]
    fn axis_metric_source() {
        let g = grid();
        let mut s = FieldState::flat_vacuum(g);
        s.v = vec![0.1; g.n_points];
        let m = metric_rhs(&s, &make_hyperbolic_target(), ProblemMode::Full, 4).unwrap();
        assert_eq!(m.dr_t[0], 0.0);
        let ii = metric_rhs(&s, &make_hyperbolic_target(), ProblemMode::ProblemII, 4).unwrap();
        assert!(ii.dz_t.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn collapsed_radius_is_an_error() {
        let g = grid();
        let mut s = FieldState::flat_vacuum(g);
        s.r[50] = -1e-3;
        let e = nonlinearity(&s, ProblemMode::Full, &make_hyperbolic_target(), 4).unwrap_err();
        assert!(matches!(e, Error::NonPositiveRadius { .. }));
    }
}
