//! Bessel helpers on top of `libm`.

use std::f64::consts::PI;

#[inline]
pub fn j0(x: f64) -> f64 {
    libm::j0(x)
}

#[inline]
pub fn j1(x: f64) -> f64 {
    libm::j1(x)
}

/// J₁(x)/x with its limit 1/2 at the origin.
#[inline]
pub fn j1_over_x(x: f64) -> f64 {
    if x.abs() < 1e-6 {
        0.5 - x * x / 16.0
    } else {
        libm::j1(x) / x
    }
}

/// J₂(x)/x, so that d/dr [J₁(kr)/r] = −k² J₂(kr)/(kr).
pub fn j2_over_x(x: f64) -> f64 {
    if x.abs() < 1e-3 {
        let x2 = x * x;
        x / 8.0 * (1.0 - x2 / 12.0)
    } else {
        (2.0 * libm::j1(x) / x - libm::j0(x)) / x
    }
}

/// The first `count` positive zeros of J₁.
pub fn j1_zeros(count: usize) -> Vec<f64> {
    (1..=count)
        .map(|m| {
            // McMahon expansion, μ = 4ν² = 4
            let beta = (m as f64 + 0.25) * PI;
            let b8 = 8.0 * beta;
            let mut x = beta - 3.0 / b8 - 4.0 * 3.0 * (28.0 - 31.0) / (3.0 * b8 * b8 * b8);
            for _ in 0..50 {
                let f = libm::j1(x);
                let df = libm::j0(x) - f / x;
                let dx = f / df;
                x -= dx;
                if dx.abs() < 1e-15 * x {
                    break;
                }
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_zeros() {
        let z = j1_zeros(3);
        assert!((z[0] - 3.831705970207512).abs() < 1e-13);
        assert!((z[1] - 7.015586669815619).abs() < 1e-13);
        assert!((z[2] - 10.173468135062722).abs() < 1e-13);
        let far = j1_zeros(2000);
        for w in far.windows(2) {
            assert!((w[1] - w[0] - PI).abs() < 0.05);
        }
        assert!(libm::j1(far[1999]).abs() < 1e-14);
    }

    #[test]
    fn small_argument_limit() {
        assert_eq!(j1_over_x(0.0), 0.5);
        assert!((j1_over_x(1e-3) - libm::j1(1e-3) / 1e-3).abs() < 1e-15);
    }
}
