use crate::error::{Error, Result};
use crate::evolve::nonlinearity_parts;
use crate::grid_state::{FieldState, RadialGrid};
use crate::model::{ProblemMode, TargetGeometry};

/// Relative tolerance on the uniformity of snapshot times.
const SPACING_TOLERANCE: f64 = 1e-6;

fn check_times(times: &[f64]) -> Result<()> {
    if times.len() < 2 {
        return Ok(());
    }
    let dt = times[1] - times[0];
    if !(dt > 0.0) {
        return Err(Error::GridMismatch(format!(
            "snapshot times must increase (T0 = {}, T1 = {})",
            times[0], times[1]
        )));
    }
    for (m, w) in times.windows(2).enumerate() {
        if ((w[1] - w[0]) - dt).abs() > SPACING_TOLERANCE * dt {
            return Err(Error::GridMismatch(format!(
                "snapshot {} breaks the uniform spacing {dt}",
                m + 1
            )));
        }
    }
    Ok(())
}

fn check_arrays(grid: &RadialGrid, times: &[f64], arrays: &[&Vec<Vec<f64>>]) -> Result<()> {
    for a in arrays {
        if a.len() != times.len() {
            return Err(Error::GridMismatch(format!(
                "{} snapshots for {} times",
                a.len(),
                times.len()
            )));
        }
        if let Some(bad) = a.iter().position(|x| x.len() != grid.n_points) {
            return Err(Error::GridMismatch(format!(
                "snapshot {bad} has {} points, grid has {}",
                a[bad].len(),
                grid.n_points
            )));
        }
    }
    Ok(())
}

/// Trapezoid weights in T for the given sample times.
pub fn time_weights(times: &[f64]) -> Vec<f64> {
    let n = times.len();
    let mut w = vec![0.0; n];
    for m in 1..n {
        let h = 0.5 * (times[m] - times[m - 1]);
        w[m - 1] += h;
        w[m] += h;
    }
    w
}

/// Samples of (v, v_T) at uniformly spaced times on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeTrace {
    pub grid: RadialGrid,
    pub times: Vec<f64>,
    pub v: Vec<Vec<f64>>,
    pub v_t: Vec<Vec<f64>>,
}

impl SpaceTimeTrace {
    pub fn new(
        grid: RadialGrid,
        times: Vec<f64>,
        v: Vec<Vec<f64>>,
        v_t: Vec<Vec<f64>>,
    ) -> Result<Self> {
        check_times(&times)?;
        check_arrays(&grid, &times, &[&v, &v_t])?;
        Ok(SpaceTimeTrace {
            grid,
            times,
            v,
            v_t,
        })
    }

    pub fn from_states(states: &[FieldState]) -> Result<Self> {
        let grid = match states.first() {
            Some(s) => s.grid,
            None => return Err(Error::GridMismatch("empty trace".into())),
        };
        if let Some(s) = states.iter().find(|s| s.grid != grid) {
            return Err(Error::GridMismatch(format!(
                "snapshot at T = {} is on a different grid",
                s.time
            )));
        }
        SpaceTimeTrace::new(
            grid,
            states.iter().map(|s| s.time).collect(),
            states.iter().map(|s| s.v.clone()).collect(),
            states.iter().map(|s| s.v_t.clone()).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn time_weights(&self) -> Vec<f64> {
        time_weights(&self.times)
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        let sc = |a: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
            a.iter()
                .map(|x| x.iter().map(|y| lambda * y).collect())
                .collect()
        };
        SpaceTimeTrace {
            grid: self.grid,
            times: self.times.clone(),
            v: sc(&self.v),
            v_t: sc(&self.v_t),
        }
    }
}

/// Samples of a source F, with the part that `SplitStrategy::PaperSplit` routes
/// to the annular norm.
#[derive(Debug, Clone, PartialEq)]
pub struct ForcingTrace {
    pub grid: RadialGrid,
    pub times: Vec<f64>,
    pub total: Vec<Vec<f64>>,
    /// F₂ under [`SplitStrategy::PaperSplit`](super::SplitStrategy).
    pub annular: Vec<Vec<f64>>,
}

impl ForcingTrace {
    pub fn new(
        grid: RadialGrid,
        times: Vec<f64>,
        total: Vec<Vec<f64>>,
        annular: Vec<Vec<f64>>,
    ) -> Result<Self> {
        check_times(&times)?;
        check_arrays(&grid, &times, &[&total, &annular])?;
        Ok(ForcingTrace {
            grid,
            times,
            total,
            annular,
        })
    }

    /// A source with no preferred split; `PaperSplit` puts all of it in F₁.
    pub fn from_total(grid: RadialGrid, times: Vec<f64>, total: Vec<Vec<f64>>) -> Result<Self> {
        let zeros = vec![vec![0.0; grid.n_points]; total.len()];
        ForcingTrace::new(grid, times, total, zeros)
    }

    /// F evaluated along a trace of full states; the metric potential term
    /// (the one carrying the mass aspect) is the annular part.
    pub fn from_states(
        states: &[FieldState],
        mode: ProblemMode,
        target: &TargetGeometry,
        order: usize,
    ) -> Result<Self> {
        let grid = match states.first() {
            Some(s) => s.grid,
            None => return Err(Error::GridMismatch("empty trace".into())),
        };
        let mut total = Vec::with_capacity(states.len());
        let mut annular = Vec::with_capacity(states.len());
        for s in states {
            let p = nonlinearity_parts(s, mode, target, order)?;
            total.push(p.total());
            annular.push(p.potential);
        }
        ForcingTrace::new(
            grid,
            states.iter().map(|s| s.time).collect(),
            total,
            annular,
        )
    }

    pub fn scaled(&self, lambda: f64) -> Self {
        let sc = |a: &Vec<Vec<f64>>| -> Vec<Vec<f64>> {
            a.iter()
                .map(|x| x.iter().map(|y| lambda * y).collect())
                .collect()
        };
        ForcingTrace {
            grid: self.grid,
            times: self.times.clone(),
            total: sc(&self.total),
            annular: sc(&self.annular),
        }
    }
}
