use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// e^{−40} is below double-precision relevance for O(1) amplitudes, so the
/// Gaussian is cut there.
const GAUSSIAN_CUTOFF: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileFamily {
    /// exp(−x²/w²), truncated where it drops below e^{−40}.
    GaussianBump,
    /// exp(1 − 1/(1 − x²/w²)) on |x| < w.
    CompactBump,
}

impl ProfileFamily {
    pub fn as_str(self) -> &'static str {
        match self {
            ProfileFamily::GaussianBump => "gaussian_bump",
            ProfileFamily::CompactBump => "compact_bump",
        }
    }
}

impl fmt::Display for ProfileFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProfileFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "gaussian_bump" | "gaussian" => Ok(ProfileFamily::GaussianBump),
            "compact_bump" | "compact" => Ok(ProfileFamily::CompactBump),
            other => Err(format!("unknown profile family '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Velocity {
    /// u_1 = 0.
    TimeSymmetric,
    /// v_1 = g'(R − c) − g'(R + c): the shell initially moves toward the axis.
    Ingoing,
}

impl Velocity {
    pub fn as_str(self) -> &'static str {
        match self {
            Velocity::TimeSymmetric => "static",
            Velocity::Ingoing => "ingoing",
        }
    }
}

impl FromStr for Velocity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "static" | "time_symmetric" => Ok(Velocity::TimeSymmetric),
            "ingoing" => Ok(Velocity::Ingoing),
            other => Err(format!("unknown velocity '{other}'")),
        }
    }
}

/// Radial initial profile for v = u/R:
/// v_0(R) = ε (g(R − c) + g(R + c)), or ε g(R) for c = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DataProfile {
    pub family: ProfileFamily,
    pub center: f64,
    pub width: f64,
    pub amplitude: f64,
    pub velocity: Velocity,
}

impl Default for DataProfile {
    fn default() -> Self {
        DataProfile {
            family: ProfileFamily::GaussianBump,
            center: 0.0,
            width: 1.0,
            amplitude: 1e-2,
            velocity: Velocity::TimeSymmetric,
        }
    }
}

impl DataProfile {
    /// Radius beyond which v_0 and v_1 vanish (to double precision).
    pub fn support_radius(&self) -> f64 {
        match self.family {
            ProfileFamily::GaussianBump => self.center + self.width * GAUSSIAN_CUTOFF.sqrt(),
            ProfileFamily::CompactBump => self.center + self.width,
        }
    }

    /// Bump g and its first two derivatives at offset x.
    fn bump(&self, x: f64) -> [f64; 3] {
        let w = self.width;
        let y = x / w;
        match self.family {
            ProfileFamily::GaussianBump => {
                if y * y >= GAUSSIAN_CUTOFF {
                    return [0.0; 3];
                }
                let g = (-y * y).exp();
                [g, -2.0 * y / w * g, (4.0 * y * y - 2.0) / (w * w) * g]
            }
            ProfileFamily::CompactBump => {
                let s = 1.0 - y * y;
                if s <= 0.0 {
                    return [0.0; 3];
                }
                let g = (1.0 - 1.0 / s).exp();
                // d/dy (1 − 1/s) = −2y/s²
                let a = -2.0 * y / (s * s);
                let da = (-2.0 * s - 8.0 * y * y) / (s * s * s);
                [g, a / w * g, (a * a + da) / (w * w) * g]
            }
        }
    }

    fn symmetric(&self, r: f64, k: usize) -> f64 {
        let c = self.center;
        if c == 0.0 {
            self.bump(r)[k]
        } else {
            self.bump(r - c)[k] + self.bump(r + c)[k]
        }
    }

    /// v_0(R).
    pub fn v0(&self, r: f64) -> f64 {
        self.amplitude * self.symmetric(r, 0)
    }

    /// ∂_R v_0(R).
    pub fn dv0(&self, r: f64) -> f64 {
        self.amplitude * self.symmetric(r, 1)
    }

    /// ∂_R² v_0(R).
    pub fn d2v0(&self, r: f64) -> f64 {
        self.amplitude * self.symmetric(r, 2)
    }

    /// v_1(R) = ∂_T v at T = 0.
    pub fn v1(&self, r: f64) -> f64 {
        match self.velocity {
            Velocity::TimeSymmetric => 0.0,
            Velocity::Ingoing => {
                let c = self.center;
                if c == 0.0 {
                    0.0
                } else {
                    self.amplitude * (self.bump(r - c)[1] - self.bump(r + c)[1])
                }
            }
        }
    }

    pub fn with_amplitude(mut self, eps: f64) -> Self {
        self.amplitude = eps;
        self
    }

    /// `count` profiles drawn from a fixed seed: family, velocity, center in
    /// [0, 2] and width in [0.5, 1]. Equal seeds give equal ensembles.
    pub fn ensemble(seed: u64, count: usize, amplitude: f64) -> Vec<DataProfile> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| DataProfile {
                family: if rng.gen_bool(0.5) {
                    ProfileFamily::GaussianBump
                } else {
                    ProfileFamily::CompactBump
                },
                center: rng.gen_range(0.0..2.0),
                width: rng.gen_range(0.5..1.0),
                amplitude,
                velocity: if rng.gen_bool(0.5) {
                    Velocity::TimeSymmetric
                } else {
                    Velocity::Ingoing
                },
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_check(p: &DataProfile, r: f64) {
        let h = 1e-5;
        let d1 = (p.v0(r + h) - p.v0(r - h)) / (2.0 * h);
        let d2 = (p.dv0(r + h) - p.dv0(r - h)) / (2.0 * h);
        assert!((d1 - p.dv0(r)).abs() < 1e-7, "{r}: {d1} vs {}", p.dv0(r));
        assert!((d2 - p.d2v0(r)).abs() < 1e-6, "{r}: {d2} vs {}", p.d2v0(r));
    }

    #[test]
    fn ensemble_is_seeded() {
        let a = DataProfile::ensemble(7, 20, 1e-2);
        assert_eq!(a, DataProfile::ensemble(7, 20, 1e-2));
        assert_ne!(a, DataProfile::ensemble(8, 20, 1e-2));
        assert!(a.iter().all(|p| p.support_radius() < 9.0));
    }

    #[test]
    fn analytic_derivatives() {
        for family in [ProfileFamily::GaussianBump, ProfileFamily::CompactBump] {
            for center in [0.0, 2.0] {
                let p = DataProfile {
                    family,
                    center,
                    width: 1.3,
                    amplitude: 0.7,
                    velocity: Velocity::Ingoing,
                };
                for &r in &[0.0, 0.3, 1.0, 1.7, 2.4, 2.9] {
                    fd_check(&p, r);
                }
                assert_eq!(p.dv0(0.0), 0.0);
            }
        }
    }

    #[test]
    fn support_is_respected() {
        let p = DataProfile {
            family: ProfileFamily::CompactBump,
            center: 3.0,
            width: 1.0,
            ..Default::default()
        };
        assert_eq!(p.support_radius(), 4.0);
        assert_eq!(p.v0(4.0), 0.0);
        assert_eq!(p.v0(4.5), 0.0);
        assert!(p.v0(3.0) > 0.0);
    }
}
