//! Centered finite differences on the node-at-axis grid.
//!
//! Values left of the axis come from parity mirroring: an even field satisfies
//! f(−R) = f(R), an odd one f(−R) = −f(R). The last nodes fall back to
//! second-order centered and one-sided formulas.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

/// Value at signed index `i`, mirroring through the axis.
#[inline]
pub fn mirrored(f: &[f64], i: isize, parity: Parity) -> f64 {
    if i >= 0 {
        f[i as usize]
    } else {
        parity.sign() * f[(-i) as usize]
    }
}

/// Fill `ghosts` left-of-axis values: `out[k]` holds f(−(k+1)·dR).
pub fn ghost_values(f: &[f64], ghosts: usize, parity: Parity) -> Vec<f64> {
    (1..=ghosts)
        .map(|k| mirrored(f, -(k as isize), parity))
        .collect()
}

/// Make the axis value compatible with the parity (odd fields vanish there).
pub fn enforce_axis(f: &mut [f64], parity: Parity) {
    if parity == Parity::Odd && !f.is_empty() {
        f[0] = 0.0;
    }
}

/// Number of nodes on each side a stencil of this order reaches.
pub fn half_width(order: usize) -> usize {
    if order >= 4 {
        2
    } else {
        1
    }
}

/// First derivative at node `i`.
#[inline]
pub fn d1_at(f: &[f64], i: usize, h: f64, order: usize, parity: Parity) -> f64 {
    let n = f.len();
    let ii = i as isize;
    let m = |k: isize| mirrored(f, ii + k, parity);
    if i + 1 >= n {
        // one-sided, second order
        return (3.0 * f[i] - 4.0 * f[i - 1] + f[i - 2]) / (2.0 * h);
    }
    if order >= 4 && i + 2 < n {
        (-m(2) + 8.0 * m(1) - 8.0 * m(-1) + m(-2)) / (12.0 * h)
    } else {
        (m(1) - m(-1)) / (2.0 * h)
    }
}

/// Second derivative at node `i`.
#[inline]
pub fn d2_at(f: &[f64], i: usize, h: f64, order: usize, parity: Parity) -> f64 {
    let n = f.len();
    let ii = i as isize;
    let m = |k: isize| mirrored(f, ii + k, parity);
    if i + 1 >= n {
        return (2.0 * f[i] - 5.0 * f[i - 1] + 4.0 * f[i - 2] - f[i - 3]) / (h * h);
    }
    if order >= 4 && i + 2 < n {
        (-m(2) + 16.0 * m(1) - 30.0 * m(0) + 16.0 * m(-1) - m(-2)) / (12.0 * h * h)
    } else {
        (m(1) - 2.0 * m(0) + m(-1)) / (h * h)
    }
}

pub fn d1(f: &[f64], h: f64, order: usize, parity: Parity) -> Vec<f64> {
    (0..f.len())
        .map(|i| d1_at(f, i, h, order, parity))
        .collect()
}

pub fn d2(f: &[f64], h: f64, order: usize, parity: Parity) -> Vec<f64> {
    (0..f.len())
        .map(|i| d2_at(f, i, h, order, parity))
        .collect()
}

/// Trapezoid rule on a uniform grid.
pub fn trapezoid(f: &[f64], h: f64) -> f64 {
    match f.len() {
        0 | 1 => 0.0,
        n => h * (0.5 * (f[0] + f[n - 1]) + f[1..n - 1].iter().sum::<f64>()),
    }
}

/// Fourth-order Gregory rule on a uniform grid; unlike the trapezoid rule it
/// stays high order for integrands that are odd about the axis.
pub fn gregory(f: &[f64], h: f64) -> f64 {
    let n = f.len();
    if n < 8 {
        return trapezoid(f, h);
    }
    const END: [f64; 3] = [3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0];
    let mut sum: f64 = f[3..n - 3].iter().sum();
    for k in 0..3 {
        sum += END[k] * (f[k] + f[n - 1 - k]);
    }
    h * sum
}

/// Extrapolate an even function to the axis from nodes 1, 2, 3 (exact for
/// polynomials of degree 4 in R, i.e. quadratics in R²).
#[inline]
pub fn even_axis_extrapolate(f1: f64, f2: f64, f3: f64) -> f64 {
    1.5 * f1 - 0.6 * f2 + 0.1 * f3
}
