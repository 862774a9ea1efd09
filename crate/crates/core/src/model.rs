//! Fixed symbols of the continuum problem: the target surface, the problem
//! variants, and the run configuration.

use std::fmt;
use std::str::FromStr;

use crate::grid_state::DataProfile;

/// Below this |u| the cubic remainder ζ is evaluated from its Taylor series.
///
/// The quotient form `(f f_u - u)/u³` cancels catastrophically; at 0.25 the
/// ten-term series is already exact to rounding, so there is no reason to let
/// the quotient anywhere near the origin.
pub const ZETA_SERIES_CROSSOVER: f64 = 0.25;

/// Taylor coefficients of ζ for the hyperbolic plane, in powers of u².
/// ζ(u) = Σ 2^{2k+2}/(2k+3)! u^{2k}.
const HYPERBOLIC_ZETA_SERIES: [f64; 10] = {
    let mut c = [0.0; 10];
    let mut k = 0;
    while k < 10 {
        // 2^{2k+2} / (2k+3)!
        let mut num = 1.0;
        let mut i = 0;
        while i < 2 * k + 2 {
            num *= 2.0;
            i += 1;
        }
        let mut fact = 1.0;
        let mut j = 2;
        while j <= 2 * k + 3 {
            fact *= j as f64;
            j += 1;
        }
        c[k] = num / fact;
        k += 1;
    }
    c
};

/// Surface of revolution with generating function f, f(0) = 0, f'(0) = 1,
/// f odd. Carries f, its derivative and the smooth remainder ζ defined by
/// f(u) f'(u) = u + u³ ζ(u).
#[derive(Debug, Clone, PartialEq)]
pub enum TargetGeometry {
    /// The hyperbolic plane, f = sinh.
    Hyperbolic,
    /// Degenerate flat target, f(s) = s, ζ ≡ 0.
    Flat,
    /// ζ(u) = Σ_k c_k u^{2k}; f is recovered from f² = u² + 2∫ s³ζ(s) ds.
    PolynomialZeta(Vec<f64>),
}

pub fn make_hyperbolic_target() -> TargetGeometry {
    TargetGeometry::Hyperbolic
}

pub fn make_flat_target() -> TargetGeometry {
    TargetGeometry::Flat
}

/// Target whose remainder is the even polynomial Σ c_k u^{2k}.
pub fn make_polynomial_target(even_coeffs: Vec<f64>) -> TargetGeometry {
    TargetGeometry::PolynomialZeta(even_coeffs)
}

impl TargetGeometry {
    pub fn f(&self, u: f64) -> f64 {
        match self {
            TargetGeometry::Hyperbolic => u.sinh(),
            TargetGeometry::Flat => u,
            TargetGeometry::PolynomialZeta(_) => u * self.f_over_u(u),
        }
    }

    pub fn f_u(&self, u: f64) -> f64 {
        match self {
            TargetGeometry::Hyperbolic => u.cosh(),
            TargetGeometry::Flat => 1.0,
            TargetGeometry::PolynomialZeta(_) => (1.0 + u * u * self.zeta(u)) / self.f_over_u(u),
        }
    }

    /// f(u)/u, with the removable singularity at u = 0 filled in (value 1).
    pub fn f_over_u(&self, u: f64) -> f64 {
        match self {
            TargetGeometry::Hyperbolic => {
                if u.abs() < 1e-4 {
                    let u2 = u * u;
                    1.0 + u2 / 6.0 * (1.0 + u2 / 20.0)
                } else {
                    u.sinh() / u
                }
            }
            TargetGeometry::Flat => 1.0,
            TargetGeometry::PolynomialZeta(c) => {
                // f²/u² = 1 + Σ c_k u^{2k+2} / (k+2)
                let u2 = u * u;
                let mut acc = 0.0;
                let mut p = u2;
                for (k, ck) in c.iter().enumerate() {
                    acc += ck * p / (k as f64 + 2.0);
                    p *= u2;
                }
                (1.0 + acc).sqrt()
            }
        }
    }

    pub fn zeta(&self, u: f64) -> f64 {
        match self {
            TargetGeometry::Hyperbolic => {
                if u.abs() < ZETA_SERIES_CROSSOVER {
                    horner_even(&HYPERBOLIC_ZETA_SERIES, u)
                } else {
                    (u.sinh() * u.cosh() - u) / (u * u * u)
                }
            }
            TargetGeometry::Flat => 0.0,
            TargetGeometry::PolynomialZeta(c) => horner_even(c, u),
        }
    }

    /// Stable label used in config files.
    pub fn label(&self) -> String {
        match self {
            TargetGeometry::Hyperbolic => "hyperbolic".into(),
            TargetGeometry::Flat => "flat".into(),
            TargetGeometry::PolynomialZeta(_) => "polynomial".into(),
        }
    }
}

fn horner_even(coeffs: &[f64], u: f64) -> f64 {
    let u2 = u * u;
    coeffs.iter().rev().fold(0.0, |acc, c| acc * u2 + c)
}

/// Which reduction of the coupled system is evolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemMode {
    /// The full wave-map equation coupled to the metric.
    Full,
    /// Wave equation without the first-derivative coupling; metric evolves.
    ProblemI,
    /// Problem I with r ≡ R pinned.
    ProblemISpecial,
    /// Transport form with Z ≡ 0 pinned; r evolves.
    ProblemII,
    /// Free 4+1 wave: r ≡ R, Z ≡ 0, no nonlinearity.
    Free,
}

impl ProblemMode {
    pub const ALL: [ProblemMode; 5] = [
        ProblemMode::Full,
        ProblemMode::ProblemI,
        ProblemMode::ProblemISpecial,
        ProblemMode::ProblemII,
        ProblemMode::Free,
    ];

    pub fn pins_radius(self) -> bool {
        matches!(self, ProblemMode::ProblemISpecial | ProblemMode::Free)
    }

    pub fn pins_conformal_factor(self) -> bool {
        matches!(self, ProblemMode::ProblemII | ProblemMode::Free)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ProblemMode::Full => "full",
            ProblemMode::ProblemI => "problem_i",
            ProblemMode::ProblemISpecial => "problem_i_special",
            ProblemMode::ProblemII => "problem_ii",
            ProblemMode::Free => "free",
        }
    }
}

impl fmt::Display for ProblemMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProblemMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace(['-', ' '], "_");
        Ok(match norm.as_str() {
            "full" => ProblemMode::Full,
            "problem_i" | "problemi" | "i" => ProblemMode::ProblemI,
            "problem_i_special" | "problemispecial" | "i_special" => ProblemMode::ProblemISpecial,
            "problem_ii" | "problemii" | "ii" => ProblemMode::ProblemII,
            "free" => ProblemMode::Free,
            _ => return Err(format!("unknown mode '{s}'")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub r_max: f64,
    pub n_points: usize,
}

impl GridSpec {
    pub fn dr(&self) -> f64 {
        self.r_max / (self.n_points.max(2) - 1) as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepperSpec {
    pub cfl: f64,
    /// Spatial stencil order, 2 or 4.
    pub order: usize,
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: ProblemMode,
    pub target: TargetGeometry,
    pub grid: GridSpec,
    pub stepper: StepperSpec,
    pub t_final: f64,
    pub profile: DataProfile,
    pub diag_every: usize,
    /// Steps between snapshots; 0 disables snapshot output.
    pub snapshot_every: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            mode: ProblemMode::Full,
            target: TargetGeometry::Hyperbolic,
            grid: GridSpec {
                r_max: 16.0,
                n_points: 513,
            },
            stepper: StepperSpec {
                cfl: 0.25,
                order: 4,
            },
            t_final: 8.0,
            profile: DataProfile::default(),
            diag_every: 8,
            snapshot_every: 0,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn dt(&self) -> f64 {
        self.stepper.cfl * self.grid.dr()
    }

    /// The amplitude ε of the initial profile.
    pub fn amplitude(&self) -> f64 {
        self.profile.amplitude
    }
}

/// Check every [`RunConfig`] invariant. Never fails; an empty list means the
/// configuration is usable.
pub fn validate_config(c: &RunConfig) -> Vec<String> {
    let mut out = Vec::new();
    if c.grid.n_points < 16 {
        out.push(format!(
            "grid.n_points: n_points ≥ 16 required (got {})",
            c.grid.n_points
        ));
    }
    if !(c.grid.r_max > 0.0 && c.grid.r_max.is_finite()) {
        out.push(format!(
            "grid.r_max: must be positive and finite (got {})",
            c.grid.r_max
        ));
    }
    if !(c.stepper.cfl > 0.0 && c.stepper.cfl <= 1.0) {
        out.push(format!(
            "stepper.cfl: cfl out of range (0, 1] (got {})",
            c.stepper.cfl
        ));
    }
    if c.stepper.order != 2 && c.stepper.order != 4 {
        out.push(format!(
            "stepper.order: must be 2 or 4 (got {})",
            c.stepper.order
        ));
    }
    if !(c.t_final >= 0.0 && c.t_final.is_finite()) {
        out.push(format!(
            "run.t_final: must be non-negative and finite (got {})",
            c.t_final
        ));
    }
    if !(c.profile.amplitude >= 0.0) {
        out.push(format!(
            "data.amplitude: amplitude ≥ 0 required (got {})",
            c.profile.amplitude
        ));
    }
    if !(c.profile.width > 0.0) {
        out.push(format!(
            "data.width: must be positive (got {})",
            c.profile.width
        ));
    }
    if !(c.profile.center >= 0.0) {
        out.push(format!(
            "data.center: must be non-negative (got {})",
            c.profile.center
        ));
    }
    if c.diag_every == 0 {
        out.push("diag.every: must be at least 1".to_string());
    }
    let support = c.profile.support_radius();
    if c.grid.r_max < support + c.t_final {
        out.push(format!(
            "grid.r_max: causal padding violated: r_max ({}) < support ({}) + t_final ({})",
            c.grid.r_max, support, c.t_final
        ));
    }
    out
}
