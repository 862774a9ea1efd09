//! Local Lagrange interpolation on the uniform radial grid.

use crate::stencil::Parity;

pub const STENCIL: usize = 8;

/// Weights of the Lagrange interpolant through `nodes`, and of its first and
/// second derivatives, at `x`.
pub fn lagrange_weights(nodes: &[f64], x: f64) -> [Vec<f64>; 3] {
    let n = nodes.len();
    let mut w0 = vec![0.0; n];
    let mut w1 = vec![0.0; n];
    let mut w2 = vec![0.0; n];
    for j in 0..n {
        let mut denom = 1.0;
        for m in 0..n {
            if m != j {
                denom *= nodes[j] - nodes[m];
            }
        }
        // product, and its first two derivatives, of (x − x_m) over m ≠ j
        let (mut p, mut dp, mut d2p) = (1.0, 0.0, 0.0);
        for m in 0..n {
            if m != j {
                let t = x - nodes[m];
                d2p = d2p * t + 2.0 * dp;
                dp = dp * t + p;
                p *= t;
            }
        }
        w0[j] = p / denom;
        w1[j] = dp / denom;
        w2[j] = d2p / denom;
    }
    [w0, w1, w2]
}

/// Signed node indices of the 8-point stencil used on cell [i·h, (i+1)·h].
/// Indices below 0 refer to mirrored values.
pub fn stencil_start(cell: usize, n: usize) -> isize {
    let start = cell as isize - (STENCIL as isize / 2 - 1);
    start.min(n as isize - STENCIL as isize)
}

/// Interpolated value and first two derivatives of grid data at `x ≥ 0`.
/// Beyond the last node the data is treated as zero.
pub fn interpolate(f: &[f64], h: f64, parity: Parity, x: f64) -> [f64; 3] {
    let n = f.len();
    let x = x.abs();
    let last = (n - 1) as f64 * h;
    if x > last {
        return [0.0; 3];
    }
    let cell = ((x / h) as usize).min(n - 2);
    let start = stencil_start(cell, n);
    let nodes: Vec<f64> = (0..STENCIL)
        .map(|k| (start + k as isize) as f64 * h)
        .collect();
    let w = lagrange_weights(&nodes, x);
    let mut out = [0.0; 3];
    for k in 0..STENCIL {
        let val = crate::stencil::mirrored(f, start + k as isize, parity);
        for d in 0..3 {
            out[d] += w[d][k] * val;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_polynomials() {
        let nodes: Vec<f64> = (0..8).map(|k| k as f64 * 0.5 - 1.0).collect();
        let p = |x: f64| 1.0 + x - 2.0 * x.powi(3) + 0.1 * x.powi(7);
        let dp = |x: f64| 1.0 - 6.0 * x * x + 0.7 * x.powi(6);
        let d2p = |x: f64| -12.0 * x + 4.2 * x.powi(5);
        let x = 0.37;
        let [w0, w1, w2] = lagrange_weights(&nodes, x);
        let vals: Vec<f64> = nodes.iter().map(|&t| p(t)).collect();
        let dot = |w: &[f64]| w.iter().zip(&vals).map(|(a, b)| a * b).sum::<f64>();
        assert!((dot(&w0) - p(x)).abs() < 1e-12);
        assert!((dot(&w1) - dp(x)).abs() < 1e-11);
        assert!((dot(&w2) - d2p(x)).abs() < 1e-10);
    }

    #[test]
    fn interpolates_even_gaussian_near_axis() {
        let h = 0.05;
        let f: Vec<f64> = (0..200).map(|i| (-(i as f64 * h).powi(2)).exp()).collect();
        for &x in &[0.0, 0.013, 0.4, 3.33] {
            let [v, d, d2] = interpolate(&f, h, Parity::Even, x);
            let e = (-x * x).exp();
            assert!((v - e).abs() < 1e-9);
            assert!((d + 2.0 * x * e).abs() < 1e-7);
            assert!((d2 - (4.0 * x * x - 2.0) * e).abs() < 1e-5);
        }
    }
}
