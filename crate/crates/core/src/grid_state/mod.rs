//! Radial grid, the field state container, initial data and constraint
//! residuals.

mod constraints;
mod initial;
mod profile;
mod snapshot;

pub use constraints::{constraint_residuals, ConstraintResiduals};
pub use initial::{build_initial_data, build_initial_data_with, InitialDataOptions};
pub use profile::{DataProfile, ProfileFamily, Velocity};
pub use snapshot::{
    decode_snapshot, encode_snapshot, read_snapshot, write_snapshot, SNAPSHOT_MAGIC,
    SNAPSHOT_VERSION,
};

use crate::stencil::{self, Parity};

/// Uniform node-at-axis grid, R_i = i·dR.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    pub n_points: usize,
    pub dr: f64,
}

impl RadialGrid {
    pub fn new(n_points: usize, dr: f64) -> Self {
        RadialGrid { n_points, dr }
    }

    /// Grid covering [0, r_max] with `n_points` nodes.
    pub fn covering(r_max: f64, n_points: usize) -> Self {
        RadialGrid {
            n_points,
            dr: r_max / (n_points - 1) as f64,
        }
    }

    #[inline]
    pub fn radius(&self, i: usize) -> f64 {
        i as f64 * self.dr
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.radius(i)).collect()
    }

    pub fn r_max(&self) -> f64 {
        self.radius(self.n_points - 1)
    }
}

/// Which stored field to differentiate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    R,
    V,
    Z,
}

impl Field {
    pub fn parity(self) -> Parity {
        match self {
            Field::R => Parity::Odd,
            Field::V | Field::Z => Parity::Even,
        }
    }
}

/// One time slice of (v, v_T, r, r_T, Z, Z_T).
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub time: f64,
    pub grid: RadialGrid,
    pub v: Vec<f64>,
    pub v_t: Vec<f64>,
    pub r: Vec<f64>,
    pub r_t: Vec<f64>,
    pub z: Vec<f64>,
    pub z_t: Vec<f64>,
}

impl FieldState {
    /// Flat vacuum: v = 0, r = R, Z = 0, all time derivatives zero.
    pub fn flat_vacuum(grid: RadialGrid) -> Self {
        let n = grid.n_points;
        FieldState {
            time: 0.0,
            grid,
            v: vec![0.0; n],
            v_t: vec![0.0; n],
            r: grid.nodes(),
            r_t: vec![0.0; n],
            z: vec![0.0; n],
            z_t: vec![0.0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.grid.n_points
    }

    pub fn field(&self, f: Field) -> (&[f64], &[f64]) {
        match f {
            Field::R => (&self.r, &self.r_t),
            Field::V => (&self.v, &self.v_t),
            Field::Z => (&self.z, &self.z_t),
        }
    }

    /// Apply parity at the axis: odd fields (r, r_T) vanish there.
    pub fn enforce_parity(&mut self) {
        stencil::enforce_axis(&mut self.r, Parity::Odd);
        stencil::enforce_axis(&mut self.r_t, Parity::Odd);
    }

    /// r − R at every node, so flat vacuum gives exact zeros.
    pub fn radius_deviation(&self) -> Vec<f64> {
        self.r
            .iter()
            .enumerate()
            .map(|(i, r)| r - self.grid.radius(i))
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        [&self.v, &self.v_t, &self.r, &self.r_t, &self.z, &self.z_t]
            .iter()
            .all(|a| a.iter().all(|x| x.is_finite()))
    }

    /// u = R·v.
    pub fn u(&self) -> Vec<f64> {
        self.v
            .iter()
            .enumerate()
            .map(|(i, v)| self.grid.radius(i) * v)
            .collect()
    }
}

/// Null derivatives of one field.
#[derive(Debug, Clone, PartialEq)]
pub struct NullDerivatives {
    pub d_xi: Vec<f64>,
    pub d_eta: Vec<f64>,
}

/// ∂_ξ = (∂_T + ∂_R)/2 and ∂_η = (∂_T − ∂_R)/2 from the stored time
/// derivative and a centered ∂_R of the stencil order.
pub fn null_derivatives(s: &FieldState, field: Field, order: usize) -> NullDerivatives {
    let h = s.grid.dr;
    let (f, f_t) = s.field(field);
    let d_r: Vec<f64> = match field {
        // differentiate r − R so that flat space is exact
        Field::R => {
            let dev = s.radius_deviation();
            stencil::d1(&dev, h, order, Parity::Odd)
                .into_iter()
                .map(|d| 1.0 + d)
                .collect()
        }
        _ => stencil::d1(f, h, order, field.parity()),
    };
    let d_xi = d_r
        .iter()
        .zip(f_t)
        .map(|(dr, dt)| 0.5 * (dt + dr))
        .collect();
    let d_eta = d_r
        .iter()
        .zip(f_t)
        .map(|(dr, dt)| 0.5 * (dt - dr))
        .collect();
    NullDerivatives { d_xi, d_eta }
}
