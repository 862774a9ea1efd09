use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::bump::{dyadic_scales, split_spectral, DyadicBump};
use super::trace::{time_weights, ForcingTrace, SpaceTimeTrace};
use crate::diagnostics::{dyadic_radii, SPHERE_AREA};
use crate::grid_state::RadialGrid;
use crate::linprop::HankelPlan;

/// Trapezoid weights of ∫_{ℝ⁴} · dx on the grid.
fn volume_weights(grid: &RadialGrid) -> Vec<f64> {
    let n = grid.n_points;
    (0..n)
        .map(|i| {
            let end = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
            SPHERE_AREA * grid.radius(i).powi(3) * grid.dr * end
        })
        .collect()
}

/// ‖R^a g‖²_{L^p(ℝ⁴)}.
fn weighted_lp_sq(g: &[f64], wx: &[f64], grid: &RadialGrid, p: i32, a: f64) -> f64 {
    let s: f64 = g
        .iter()
        .zip(wx)
        .enumerate()
        .map(|(i, (x, w))| {
            let y = if a == 0.0 {
                x.abs()
            } else {
                grid.radius(i).powf(a) * x.abs()
            };
            w * y.powi(p)
        })
        .sum();
    s.powf(2.0 / p as f64)
}

/// ∫_{|x|≤ρ} g² dx at each node ρ, trapezoid in R.
fn cumulative_sq(g: &[f64], grid: &RadialGrid) -> Vec<f64> {
    let mut out = vec![0.0; g.len()];
    let dens = |i: usize| SPHERE_AREA * grid.radius(i).powi(3) * g[i] * g[i];
    for i in 1..g.len() {
        out[i] = out[i - 1] + 0.5 * grid.dr * (dens(i - 1) + dens(i));
    }
    out
}

/// Squared components of ‖v‖²_X, each summed over the dyadic scales.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct XNormComponents {
    /// Σ_N ‖P_N v‖²_{L²_T L⁸_x}.
    pub l2l8: f64,
    /// Σ_N ‖|x|^{1/4} P_N v‖²_{L²_T L¹⁶_x}.
    pub weighted_l2l16: f64,
    /// Σ_N N² ‖P_N v‖²_{L^∞_T L²_x}.
    pub linf_l2: f64,
    /// Σ_N sup_ρ ρ^{−1} ‖P_N ∂_T v‖²_{L²_T L²(|x|≤ρ)}.
    pub local_energy_dt: f64,
    /// The same with ∇P_N v.
    pub local_energy_grad: f64,
    /// The same with N·P_N v.
    pub local_energy_freq: f64,
    /// Σ_N ‖|x|^{−3/2} P_N v‖²_{L²_{T,x}}.
    pub inverse_cube_l2: f64,
    /// Σ_N N^{−2} ‖P_N ∂_T v‖²_{L²_T L⁸_x}.
    pub dt_l2l8: f64,
}

impl XNormComponents {
    pub const NAMES: [&'static str; 8] = [
        "l2l8",
        "weighted_l2l16",
        "linf_l2",
        "local_energy_dt",
        "local_energy_grad",
        "local_energy_freq",
        "inverse_cube_l2",
        "dt_l2l8",
    ];

    pub fn values(&self) -> [f64; 8] {
        [
            self.l2l8,
            self.weighted_l2l16,
            self.linf_l2,
            self.local_energy_dt,
            self.local_energy_grad,
            self.local_energy_freq,
            self.inverse_cube_l2,
            self.dt_l2l8,
        ]
    }

    pub fn sum(&self) -> f64 {
        self.values().iter().sum()
    }
}

/// ‖v‖_X with its breakdown and the energy left outside the resolved band.
#[derive(Debug, Clone, PartialEq)]
pub struct XNorm {
    pub total: f64,
    pub components: XNormComponents,
    pub scales: Vec<f64>,
    /// sup_T of the free energy of the low-frequency tail.
    pub low_tail_energy: f64,
    /// sup_T of the free energy of the high-frequency tail.
    pub high_tail_energy: f64,
}

struct ScaleSample {
    l8: f64,
    l16: f64,
    l2: f64,
    dt_l8: f64,
    inv_cube: f64,
    loc_dt: Vec<f64>,
    loc_grad: Vec<f64>,
    loc_v: Vec<f64>,
}

struct SnapshotSample {
    scales: Vec<ScaleSample>,
    low_tail_energy: f64,
    high_tail_energy: f64,
}

pub fn x_norm(trace: &SpaceTimeTrace, bump: &DyadicBump) -> XNorm {
    let grid = trace.grid;
    let plan = HankelPlan::cached(grid);
    let scales = dyadic_scales(&grid);
    let wx = volume_weights(&grid);
    let radii = dyadic_radii(&grid);
    let radial: Vec<f64> = (0..grid.n_points)
        .map(|i| {
            SPHERE_AREA
                * grid.dr
                * if i == 0 || i + 1 == grid.n_points {
                    0.5
                } else {
                    1.0
                }
        })
        .collect();

    let tail_energy =
        |v: &crate::linprop::SpectralField, vt: &crate::linprop::SpectralField| plan.energy(v, vt);

    let samples: Vec<SnapshotSample> = (0..trace.len())
        .into_par_iter()
        .map(|m| {
            let vh = split_spectral(&plan.forward(&trace.v[m]), &scales, bump);
            let th = split_spectral(&plan.forward(&trace.v_t[m]), &scales, bump);
            let per_scale = vh
                .pieces
                .iter()
                .zip(&th.pieces)
                .map(|(a, b)| {
                    let p = plan.inverse(a);
                    let pt = plan.inverse(b);
                    let pg = plan.inverse_derivative(a);
                    let at = |c: Vec<f64>| radii.iter().map(|&(_, k)| c[k]).collect();
                    ScaleSample {
                        l8: weighted_lp_sq(&p, &wx, &grid, 8, 0.0),
                        l16: weighted_lp_sq(&p, &wx, &grid, 16, 0.25),
                        l2: weighted_lp_sq(&p, &wx, &grid, 2, 0.0),
                        dt_l8: weighted_lp_sq(&pt, &wx, &grid, 8, 0.0),
                        inv_cube: p.iter().zip(&radial).map(|(x, w)| w * x * x).sum(),
                        loc_dt: at(cumulative_sq(&pt, &grid)),
                        loc_grad: at(cumulative_sq(&pg, &grid)),
                        loc_v: at(cumulative_sq(&p, &grid)),
                    }
                })
                .collect();
            SnapshotSample {
                scales: per_scale,
                low_tail_energy: tail_energy(&vh.low_tail, &th.low_tail),
                high_tail_energy: tail_energy(&vh.high_tail, &th.high_tail),
            }
        })
        .collect();

    let wt = time_weights(&trace.times);
    let mut c = XNormComponents::default();
    for (j, &n) in scales.iter().enumerate() {
        let tint = |g: &dyn Fn(&ScaleSample) -> f64| -> f64 {
            samples
                .iter()
                .zip(&wt)
                .map(|(s, w)| w * g(&s.scales[j]))
                .sum()
        };
        let local = |g: &dyn Fn(&ScaleSample) -> &Vec<f64>| -> f64 {
            radii
                .iter()
                .enumerate()
                .map(|(q, &(rho, _))| {
                    let acc: f64 = samples
                        .iter()
                        .zip(&wt)
                        .map(|(s, w)| w * g(&s.scales[j])[q])
                        .sum();
                    acc / rho
                })
                .fold(0.0, f64::max)
        };
        c.l2l8 += tint(&|s| s.l8);
        c.weighted_l2l16 += tint(&|s| s.l16);
        c.linf_l2 += n * n * samples.iter().map(|s| s.scales[j].l2).fold(0.0, f64::max);
        c.local_energy_dt += local(&|s| &s.loc_dt);
        c.local_energy_grad += local(&|s| &s.loc_grad);
        c.local_energy_freq += n * n * local(&|s| &s.loc_v);
        c.inverse_cube_l2 += tint(&|s| s.inv_cube);
        c.dt_l2l8 += tint(&|s| s.dt_l8) / (n * n);
    }
    XNorm {
        total: c.sum().sqrt(),
        components: c,
        low_tail_energy: samples
            .iter()
            .map(|s| s.low_tail_energy)
            .fold(0.0, f64::max),
        high_tail_energy: samples
            .iter()
            .map(|s| s.high_tail_energy)
            .fold(0.0, f64::max),
        scales,
    }
}

/// How a source is split as F₁ + F₂ before bounding its Y norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitStrategy {
    /// F₁ = F.
    AllL1,
    /// F₂ = F.
    AllAnnuli,
    /// Cubic and transport terms in F₁, the metric potential term in F₂.
    PaperSplit,
}

impl SplitStrategy {
    pub const ALL: [SplitStrategy; 3] = [
        SplitStrategy::AllL1,
        SplitStrategy::AllAnnuli,
        SplitStrategy::PaperSplit,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SplitStrategy::AllL1 => "all-L1",
            SplitStrategy::AllAnnuli => "all-annuli",
            SplitStrategy::PaperSplit => "paper-split",
        }
    }
}

impl fmt::Display for SplitStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SplitStrategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        SplitStrategy::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| format!("unknown split strategy '{s}'"))
    }
}

/// The two terms of a Y-norm bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YNormBound {
    /// ‖F₁‖_{L¹_T L²_x}.
    pub l1_part: f64,
    /// (Σ_N (Σ_j 2^{j/2} ‖P_N F₂‖_{L²_{T,x}(2^j ≤ |x| < 2^{j+1})})²)^{1/2}, tails included.
    pub annular_part: f64,
}

impl YNormBound {
    pub fn total(&self) -> f64 {
        self.l1_part + self.annular_part
    }
}

fn l1_l2(f: &[Vec<f64>], times: &[f64], grid: &RadialGrid) -> f64 {
    let wx = volume_weights(grid);
    time_weights(times)
        .iter()
        .zip(f)
        .map(|(w, x)| w * weighted_lp_sq(x, &wx, grid, 2, 0.0).sqrt())
        .sum()
}

fn annular_sum(f: &[Vec<f64>], times: &[f64], grid: &RadialGrid, bump: &DyadicBump) -> f64 {
    if f.iter().all(|x| x.iter().all(|&y| y == 0.0)) {
        return 0.0;
    }
    let plan = HankelPlan::cached(*grid);
    let scales = dyadic_scales(grid);
    let wx = volume_weights(grid);
    let j_min = grid.dr.log2().floor() as i32;
    let slot: Vec<Option<usize>> = (0..grid.n_points)
        .map(|i| match i {
            0 => None,
            _ => Some((grid.radius(i).log2().floor() as i32 - j_min) as usize),
        })
        .collect();
    let n_slots = slot.iter().flatten().max().map_or(0, |m| m + 1);

    // per snapshot: for each piece, ∫ over each annulus of |piece|²
    let per_time: Vec<Vec<Vec<f64>>> = f
        .par_iter()
        .map(|x| {
            let sp = split_spectral(&plan.forward(x), &scales, bump);
            sp.pieces
                .iter()
                .chain([&sp.low_tail, &sp.high_tail])
                .map(|p| {
                    let y = plan.inverse(p);
                    let mut acc = vec![0.0; n_slots];
                    for i in 0..y.len() {
                        if let Some(s) = slot[i] {
                            acc[s] += wx[i] * y[i] * y[i];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let wt = time_weights(times);
    let pieces = scales.len() + 2;
    let mut total = 0.0;
    for q in 0..pieces {
        let mut s = 0.0;
        for a in 0..n_slots {
            let l2: f64 = per_time.iter().zip(&wt).map(|(p, w)| w * p[q][a]).sum();
            s += 2f64.powf(0.5 * (a as i32 + j_min) as f64) * l2.sqrt();
        }
        total += s * s;
    }
    total.sqrt()
}

/// Upper bound on ‖F‖_Y from the split chosen by `split`.
pub fn y_norm_bound(trace: &ForcingTrace, split: SplitStrategy, bump: &DyadicBump) -> YNormBound {
    let (times, grid) = (&trace.times, &trace.grid);
    match split {
        SplitStrategy::AllL1 => YNormBound {
            l1_part: l1_l2(&trace.total, times, grid),
            annular_part: 0.0,
        },
        SplitStrategy::AllAnnuli => YNormBound {
            l1_part: 0.0,
            annular_part: annular_sum(&trace.total, times, grid, bump),
        },
        SplitStrategy::PaperSplit => {
            let f1: Vec<Vec<f64>> = trace
                .total
                .iter()
                .zip(&trace.annular)
                .map(|(t, a)| t.iter().zip(a).map(|(t, a)| t - a).collect())
                .collect();
            YNormBound {
                l1_part: l1_l2(&f1, times, grid),
                annular_part: annular_sum(&trace.annular, times, grid, bump),
            }
        }
    }
}

pub fn y_norm_upper(trace: &ForcingTrace, split: SplitStrategy, bump: &DyadicBump) -> f64 {
    y_norm_bound(trace, split, bump).total()
}

/// The tightest of the available bounds.
pub fn y_norm_best(trace: &ForcingTrace, bump: &DyadicBump) -> (SplitStrategy, f64) {
    SplitStrategy::ALL
        .into_iter()
        .map(|s| (s, y_norm_upper(trace, s, bump)))
        .fold((SplitStrategy::AllL1, f64::INFINITY), |best, x| {
            if x.1 < best.1 {
                x
            } else {
                best
            }
        })
}

/// ‖v‖_{L²_T L⁸_x} + ‖|x|^{1/4} v‖_{L²_T L¹⁶_x} without frequency localization.
pub fn strichartz_pair(trace: &SpaceTimeTrace) -> f64 {
    let grid = trace.grid;
    let wx = volume_weights(&grid);
    let wt = trace.time_weights();
    let (mut a, mut b) = (0.0, 0.0);
    for (v, w) in trace.v.iter().zip(&wt) {
        a += w * weighted_lp_sq(v, &wx, &grid, 8, 0.0);
        b += w * weighted_lp_sq(v, &wx, &grid, 16, 0.25);
    }
    a.sqrt() + b.sqrt()
}
