use super::rhs::compute_rhs;
use crate::error::{Error, Result};
use crate::grid_state::FieldState;
use crate::model::{ProblemMode, RunConfig, TargetGeometry};
use crate::stencil::{d1_at, trapezoid, Parity};

/// Spatial integrals appearing in the Morawetz identity, advanced in time by
/// the same Runge–Kutta weights as the fields:
/// ∫∫ v² dR dT, ∫∫ F v_R R³ dR dT, ∫∫ F v R² dR dT.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct IdentityIntegrals {
    pub v2: f64,
    pub f_vr_r3: f64,
    pub f_v_r2: f64,
}

impl IdentityIntegrals {
    fn integrands(s: &FieldState, f: &[f64], order: usize) -> [f64; 3] {
        let n = s.n();
        let h = s.grid.dr;
        let mut a = vec![0.0; n];
        let mut b = vec![0.0; n];
        let mut c = vec![0.0; n];
        for i in 0..n {
            let rad = s.grid.radius(i);
            let v = s.v[i];
            a[i] = v * v;
            if f[i] != 0.0 {
                let v_r = d1_at(&s.v, i, h, order, Parity::Even);
                b[i] = f[i] * v_r * rad * rad * rad;
                c[i] = f[i] * v * rad * rad;
            }
        }
        [trapezoid(&a, h), trapezoid(&b, h), trapezoid(&c, h)]
    }
}

/// Force the fields a mode holds fixed back to their pinned values.
pub fn pin_mode_fields(s: &mut FieldState, mode: ProblemMode) {
    if mode.pins_radius() {
        for i in 0..s.n() {
            s.r[i] = s.grid.radius(i);
            s.r_t[i] = 0.0;
        }
    }
    if mode.pins_conformal_factor() {
        s.z.iter_mut()
            .chain(s.z_t.iter_mut())
            .for_each(|x| *x = 0.0);
    }
    s.enforce_parity();
}

/// Time derivative of the full state vector.
struct Slope {
    v: Vec<f64>,
    v_t: Vec<f64>,
    r: Vec<f64>,
    r_t: Vec<f64>,
    z: Vec<f64>,
    z_t: Vec<f64>,
    integrands: [f64; 3],
}

fn slope(
    s: &FieldState,
    mode: ProblemMode,
    target: &TargetGeometry,
    order: usize,
) -> Result<Slope> {
    let (rhs, f) = compute_rhs(s, mode, target, order)?;
    Ok(Slope {
        v: s.v_t.clone(),
        v_t: rhs.dv_t,
        r: s.r_t.clone(),
        r_t: rhs.dr_t,
        z: s.z_t.clone(),
        z_t: rhs.dz_t,
        integrands: IdentityIntegrals::integrands(s, &f, order),
    })
}

fn combine(base: &FieldState, terms: &[(&Slope, f64)], dt: f64, mode: ProblemMode) -> FieldState {
    let mut out = base.clone();
    out.time = base.time + dt;
    macro_rules! add {
        ($field:ident) => {
            for (k, w) in terms {
                for (o, d) in out.$field.iter_mut().zip(&k.$field) {
                    *o += w * d;
                }
            }
        };
    }
    add!(v);
    add!(v_t);
    add!(r);
    add!(r_t);
    add!(z);
    add!(z_t);
    pin_mode_fields(&mut out, mode);
    out
}

/// One classical RK4 step, also advancing the identity integrals.
pub fn step_with_integrals(
    s: &FieldState,
    dt: f64,
    cfg: &RunConfig,
    acc: &mut IdentityIntegrals,
) -> Result<FieldState> {
    let (mode, target, order) = (cfg.mode, &cfg.target, cfg.stepper.order);
    let k1 = slope(s, mode, target, order)?;
    let s2 = combine(s, &[(&k1, 0.5 * dt)], 0.5 * dt, mode);
    let k2 = slope(&s2, mode, target, order)?;
    let s3 = combine(s, &[(&k2, 0.5 * dt)], 0.5 * dt, mode);
    let k3 = slope(&s3, mode, target, order)?;
    let s4 = combine(s, &[(&k3, dt)], dt, mode);
    let k4 = slope(&s4, mode, target, order)?;
    let w = dt / 6.0;
    let out = combine(
        s,
        &[(&k1, w), (&k2, 2.0 * w), (&k3, 2.0 * w), (&k4, w)],
        dt,
        mode,
    );
    let mix = |j: usize| {
        w * (k1.integrands[j] + 2.0 * k2.integrands[j] + 2.0 * k3.integrands[j] + k4.integrands[j])
    };
    acc.v2 += mix(0);
    acc.f_vr_r3 += mix(1);
    acc.f_v_r2 += mix(2);
    if !out.is_finite() {
        return Err(Error::NanDetected {
            step: 0,
            time: out.time,
        });
    }
    Ok(out)
}

/// Advance the state by `dt` with RK4, re-pinning mode-forced fields after
/// every stage.
pub fn step(s: &FieldState, dt: f64, cfg: &RunConfig) -> Result<FieldState> {
    step_with_integrals(s, dt, cfg, &mut IdentityIntegrals::default())
}

/// Step sizes that land exactly on `t_final`: full steps of `dt`, the last
/// one shortened.
pub fn step_schedule(t_final: f64, dt: f64) -> Vec<f64> {
    if t_final <= 0.0 {
        return Vec::new();
    }
    let full = (t_final / dt * (1.0 - 1e-12)).floor() as usize;
    let mut out = vec![dt; full];
    let rest = t_final - full as f64 * dt;
    if rest > 1e-12 * dt {
        out.push(rest);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid_state::RadialGrid;

    #[test]
    fn schedule_lands_on_final_time() {
        let s = step_schedule(1.0, 0.3);
        assert_eq!(s.len(), 4);
        assert!((s.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        assert_eq!(step_schedule(1.0, 0.25).len(), 4);
        assert!(step_schedule(0.0, 0.1).is_empty());
    }

    #[test]
    fn flat_vacuum_is_a_fixed_point() {
        let cfg = RunConfig {
            grid: crate::model::GridSpec {
                r_max: 10.0,
                n_points: 65,
            },
            ..RunConfig::default()
        };
        let s0 = FieldState::flat_vacuum(RadialGrid::covering(10.0, 65));
        let s1 = step(&s0, 0.01, &cfg).unwrap();
        assert_eq!(s1.v, s0.v);
        assert_eq!(s1.r, s0.r);
        assert_eq!(s1.z, s0.z);
        assert!((s1.time - 0.01).abs() < 1e-18);
    }
}
