use std::cell::RefCell;
use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid_state::RadialGrid;
use crate::interp::interpolate;
use crate::quadrature::{integrate_adaptive, AdaptiveOptions};
use crate::stencil::Parity;

/// A radial function on ℝ⁴ with its first two radial derivatives.
pub trait RadialProfile: Sync {
    /// [g(s), g'(s), g''(s)] for s ≥ 0.
    fn eval(&self, s: f64) -> [f64; 3];
}

/// a·exp(−s²/w²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianProfile {
    pub amplitude: f64,
    pub width: f64,
}

impl RadialProfile for GaussianProfile {
    fn eval(&self, s: f64) -> [f64; 3] {
        let w2 = self.width * self.width;
        let g = self.amplitude * (-s * s / w2).exp();
        [g, -2.0 * s / w2 * g, (4.0 * s * s / w2 - 2.0) / w2 * g]
    }
}

/// Grid samples, interpolated by local degree-7 polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledProfile {
    pub values: Vec<f64>,
    pub dr: f64,
}

impl RadialProfile for SampledProfile {
    fn eval(&self, s: f64) -> [f64; 3] {
        interpolate(&self.values, self.dr, Parity::Even, s)
    }
}

/// Zero data.
pub struct ZeroProfile;

impl RadialProfile for ZeroProfile {
    fn eval(&self, _s: f64) -> [f64; 3] {
        [0.0; 3]
    }
}

/// Tolerances of the nested angular quadrature.
pub const INTEGRAL_OPTIONS: AdaptiveOptions = AdaptiveOptions {
    abs_tol: 1e-13,
    rel_tol: 1e-9,
    max_depth: 24,
};

/// Free-wave solution at (t, R) from the spherical-means representation.
///
/// With z in the unit ball of ℝ⁴ written as |z| = sin θ and φ the angle
/// between z and x, and s = |x + t z|:
///   I[h] = 4π ∫∫ sin³θ sin²φ h(s),
///   J[h] = 4π ∫∫ sin³θ sin²φ h'(s) (x + tz)·z / s,
///   K[h] = 4π ∫∫ sin³θ sin²φ zᵀ∇²h(x + tz) z,
/// the solution is (3 I[v0] + 5t J[v0] + t² K[v0] + 3t I[v1] + t² J[v1]) / (4π²).
pub fn spherical_means_value(
    v0: &dyn RadialProfile,
    v1: &dyn RadialProfile,
    t: f64,
    radius: f64,
    opts: AdaptiveOptions,
) -> Result<f64> {
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let inner = |theta: f64| -> [f64; 5] {
        let (st, _) = theta.sin_cos();
        let rho = st;
        let w_theta = st * st * st;
        let integrand = |phi: f64| -> [f64; 5] {
            let (sp, cp) = phi.sin_cos();
            let s2 = radius * radius + t * t * rho * rho + 2.0 * radius * t * rho * cp;
            let s = s2.max(0.0).sqrt();
            let w = w_theta * sp * sp;
            let yz = rho * radius * cp + t * rho * rho;
            let [f, df, d2f] = v0.eval(s);
            let [g, dg, d2g] = v1.eval(s);
            // h'(s)/s → h''(0) on the cone tip
            let (df_s, dg_s) = if s < 1e-10 {
                (d2f, d2g)
            } else {
                (df / s, dg / s)
            };
            let zn2 = if s < 1e-10 { 0.0 } else { yz * yz / s2 };
            let hess = d2f * zn2 + df_s * (rho * rho - zn2);
            [w * g, w * dg_s * yz, w * f, w * df_s * yz, w * hess]
        };
        match integrate_adaptive(&integrand, 0.0, PI, opts) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                [0.0; 5]
            }
        }
    };
    let outer = integrate_adaptive(&inner, 0.0, 0.5 * PI, opts)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let [ig, jg, i_f, jf, kf] = outer.map(|x| 4.0 * PI * x);
    Ok((3.0 * i_f + 5.0 * t * jf + t * t * kf + 3.0 * t * ig + t * t * jg) / (4.0 * PI * PI))
}

/// Free solution at time `t` evaluated at each radius in `r_eval`.
pub fn propagate_integral_profiles(
    v0: &dyn RadialProfile,
    v1: &dyn RadialProfile,
    t: f64,
    r_eval: &[f64],
) -> Result<Vec<f64>> {
    r_eval
        .par_iter()
        .map(|&r| spherical_means_value(v0, v1, t, r, INTEGRAL_OPTIONS))
        .collect()
}

/// Free solution at time `t` for grid-sampled data.
pub fn propagate_integral(
    v0: &[f64],
    v1: &[f64],
    grid: RadialGrid,
    t: f64,
    r_eval: &[f64],
) -> Result<Vec<f64>> {
    let p0 = SampledProfile {
        values: v0.to_vec(),
        dr: grid.dr,
    };
    let p1 = SampledProfile {
        values: v1.to_vec(),
        dr: grid.dr,
    };
    propagate_integral_profiles(&p0, &p1, t, r_eval)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_data_gives_zero() {
        let u =
            propagate_integral_profiles(&ZeroProfile, &ZeroProfile, 1.0, &[0.0, 1.0, 2.0]).unwrap();
        assert!(u.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn small_time_recovers_data() {
        let g = GaussianProfile {
            amplitude: 1.0,
            width: 1.0,
        };
        let u = spherical_means_value(&g, &ZeroProfile, 1e-6, 0.7, INTEGRAL_OPTIONS).unwrap();
        assert!((u - (-0.49f64).exp()).abs() < 1e-8);
    }

    #[test]
    fn velocity_term_is_linear_in_t_initially() {
        let g = GaussianProfile {
            amplitude: 1.0,
            width: 1.0,
        };
        let t = 1e-4;
        let u = spherical_means_value(&ZeroProfile, &g, t, 0.5, INTEGRAL_OPTIONS).unwrap();
        assert!((u / t - (-0.25f64).exp()).abs() < 1e-6);
    }
}
