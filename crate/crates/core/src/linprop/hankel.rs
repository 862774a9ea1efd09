use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use super::bessel::{j0, j1, j1_over_x, j1_zeros, j2_over_x};
use crate::grid_state::RadialGrid;
use crate::interp::{lagrange_weights, stencil_start, STENCIL};
use crate::quadrature::gauss_legendre;

const NODES_PER_CELL: usize = 10;

/// (2π)², the normalization of the radial Fourier transform on ℝ⁴.
pub const FOURIER_NORM: f64 = 4.0 * PI * PI;

/// Radial Fourier transform in ℝ⁴ sampled at frequencies k_m = j_{1,m}/R_max:
/// \hat f(k) = (2π)²/k ∫ f(r) J₁(kr) r² dr.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    pub k: Vec<f64>,
    pub coeffs: Vec<f64>,
}

impl SpectralField {
    pub fn map(&self, mut g: impl FnMut(f64, f64) -> f64) -> SpectralField {
        SpectralField {
            k: self.k.clone(),
            coeffs: self
                .k
                .iter()
                .zip(&self.coeffs)
                .map(|(&k, &c)| g(k, c))
                .collect(),
        }
    }
}

/// Dense transform matrices for one grid.
///
/// The inverse is the Fourier–Bessel series of R·f on [0, R_max]; the
/// forward matrix integrates a piecewise degree-7 interpolant of the samples
/// exactly against J₁ with Gauss–Legendre panels.
#[derive(Debug)]
pub struct HankelPlan {
    pub grid: RadialGrid,
    pub k: Vec<f64>,
    /// Series weight turning \hat f(k_m) into the coefficient of J₁(k_m r)/r.
    series_weight: Vec<f64>,
    /// ∫₀^L J₁(k_m r)² r dr = L² J₂(j_m)²/2.
    mode_norm: Vec<f64>,
    forward: Vec<f64>,
    inverse: Vec<f64>,
    /// Radial derivative of the inverse, built on first use.
    inverse_r: OnceLock<Vec<f64>>,
}

impl HankelPlan {
    pub fn new(grid: RadialGrid) -> Self {
        let n = grid.n_points;
        let h = grid.dr;
        let l = grid.r_max();
        let modes = n - 1;
        let zeros = j1_zeros(modes);
        let k: Vec<f64> = zeros.iter().map(|z| z / l).collect();
        let j2sq: Vec<f64> = zeros.iter().map(|&z| j0(z) * j0(z)).collect();
        let mode_norm: Vec<f64> = j2sq.iter().map(|j| 0.5 * l * l * j).collect();
        let series_weight: Vec<f64> = k
            .iter()
            .zip(&mode_norm)
            .map(|(k, nm)| k / (FOURIER_NORM * nm))
            .collect();

        // quadrature points with their interpolation weights
        let (gx, gw) = gauss_legendre(NODES_PER_CELL);
        struct Point {
            x: f64,
            w: f64,
            start: isize,
            lw: Vec<f64>,
        }
        let mut points = Vec::with_capacity((n - 1) * NODES_PER_CELL);
        for cell in 0..n - 1 {
            let a = cell as f64 * h;
            let start = stencil_start(cell, n);
            let nodes: Vec<f64> = (0..STENCIL)
                .map(|s| (start + s as isize) as f64 * h)
                .collect();
            for q in 0..NODES_PER_CELL {
                let x = a + 0.5 * h * (gx[q] + 1.0);
                let [lw, _, _] = lagrange_weights(&nodes, x);
                points.push(Point {
                    x,
                    w: 0.5 * h * gw[q],
                    start,
                    lw,
                });
            }
        }

        let forward: Vec<f64> = k
            .par_iter()
            .flat_map_iter(|&km| {
                let mut row = vec![0.0; n];
                for p in &points {
                    let kernel = FOURIER_NORM / km * j1(km * p.x) * p.x * p.x * p.w;
                    for (s, lw) in p.lw.iter().enumerate() {
                        let idx = (p.start + s as isize).unsigned_abs();
                        // even extension: f(−R) = f(R)
                        row[idx] += kernel * lw;
                    }
                }
                row
            })
            .collect();

        let inverse: Vec<f64> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let r = grid.radius(i);
                k.iter()
                    .zip(&series_weight)
                    .map(move |(&km, &w)| w * km * j1_over_x(km * r))
                    .collect::<Vec<_>>()
            })
            .collect();

        HankelPlan {
            grid,
            k,
            series_weight,
            mode_norm,
            forward,
            inverse,
            inverse_r: OnceLock::new(),
        }
    }

    /// Shared plan for `grid`, built on first use.
    pub fn cached(grid: RadialGrid) -> Arc<HankelPlan> {
        static CACHE: OnceLock<Mutex<HashMap<(usize, u64), Arc<HankelPlan>>>> = OnceLock::new();
        let key = (grid.n_points, grid.dr.to_bits());
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(p) = cache.lock().unwrap().get(&key) {
            return p.clone();
        }
        let plan = Arc::new(HankelPlan::new(grid));
        cache.lock().unwrap().entry(key).or_insert(plan).clone()
    }

    pub fn modes(&self) -> usize {
        self.k.len()
    }

    pub fn forward(&self, f: &[f64]) -> SpectralField {
        let n = self.grid.n_points;
        assert_eq!(f.len(), n, "sample count does not match the plan");
        let coeffs = self
            .forward
            .chunks_exact(n)
            .map(|row| dot(row, f))
            .collect();
        SpectralField {
            k: self.k.clone(),
            coeffs,
        }
    }

    pub fn inverse(&self, s: &SpectralField) -> Vec<f64> {
        let m = self.modes();
        self.inverse
            .chunks_exact(m)
            .map(|row| dot(row, &s.coeffs))
            .collect()
    }

    /// ∂_R of the synthesized function, differentiated term by term.
    pub fn inverse_derivative(&self, s: &SpectralField) -> Vec<f64> {
        let m = self.modes();
        let mat = self.inverse_r.get_or_init(|| {
            let grid = self.grid;
            let (k, w) = (&self.k, &self.series_weight);
            (0..grid.n_points)
                .into_par_iter()
                .flat_map_iter(|i| {
                    let r = grid.radius(i);
                    k.iter()
                        .zip(w)
                        .map(move |(&km, &w)| -w * km * km * j2_over_x(km * r))
                        .collect::<Vec<_>>()
                })
                .collect()
        });
        mat.chunks_exact(m).map(|row| dot(row, &s.coeffs)).collect()
    }

    /// ‖f‖²_{L²(ℝ⁴)} from the spectral coefficients.
    pub fn l2_norm_sq(&self, s: &SpectralField) -> f64 {
        self.weighted_norm_sq(s, |_| 1.0)
    }

    /// ‖∇f‖²_{L²(ℝ⁴)} from the spectral coefficients.
    pub fn h1_norm_sq(&self, s: &SpectralField) -> f64 {
        self.weighted_norm_sq(s, |k| k * k)
    }

    fn weighted_norm_sq(&self, s: &SpectralField, mult: impl Fn(f64) -> f64) -> f64 {
        let area = 2.0 * PI * PI;
        (0..self.modes())
            .map(|m| {
                let c = self.series_weight[m] * s.coeffs[m];
                mult(self.k[m]) * c * c * self.mode_norm[m]
            })
            .sum::<f64>()
            * area
    }

    /// (‖∇v‖² + ‖v_T‖²)^{1/2} computed in frequency space.
    pub fn energy(&self, v: &SpectralField, v_t: &SpectralField) -> f64 {
        (self.h1_norm_sq(v) + self.l2_norm_sq(v_t)).sqrt()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn hankel_forward(f: &[f64], grid: RadialGrid) -> SpectralField {
    HankelPlan::cached(grid).forward(f)
}

pub fn hankel_inverse(s: &SpectralField, grid: RadialGrid) -> Vec<f64> {
    HankelPlan::cached(grid).inverse(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_pair() {
        let g = RadialGrid::covering(16.0, 513);
        let f: Vec<f64> = g.nodes().iter().map(|r| (-r * r / 2.0).exp()).collect();
        let s = hankel_forward(&f, g);
        for (k, c) in s.k.iter().zip(&s.coeffs).take(100) {
            let exact = FOURIER_NORM * (-k * k / 2.0).exp();
            assert!(
                (c - exact).abs() < 1e-9 * FOURIER_NORM,
                "k={k}: {c} vs {exact}"
            );
        }
        let back = hankel_inverse(&s, g);
        for (a, b) in back.iter().zip(&f) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn spectral_derivative() {
        let g = RadialGrid::covering(16.0, 513);
        let f: Vec<f64> = g.nodes().iter().map(|r| (-r * r / 2.0).exp()).collect();
        let plan = HankelPlan::cached(g);
        let d = plan.inverse_derivative(&plan.forward(&f));
        for (r, d) in g.nodes().iter().zip(&d) {
            assert!((d + r * (-r * r / 2.0).exp()).abs() < 1e-9, "{r} {d}");
        }
    }

    #[test]
    fn zero_maps_to_zero() {
        let g = RadialGrid::covering(8.0, 65);
        let s = hankel_forward(&vec![0.0; 65], g);
        assert!(s.coeffs.iter().all(|&c| c == 0.0));
    }

    #[test]
    fn parseval() {
        let g = RadialGrid::covering(12.0, 385);
        let f: Vec<f64> = g
            .nodes()
            .iter()
            .map(|r| (-(r - 3.0) * (r - 3.0)).exp())
            .collect();
        let plan = HankelPlan::cached(g);
        let s = plan.forward(&f);
        let direct =
            crate::diagnostics::integrate_r4(&f.iter().map(|x| x * x).collect::<Vec<_>>(), &g);
        assert!((plan.l2_norm_sq(&s) / direct - 1.0).abs() < 1e-9);
    }
}
