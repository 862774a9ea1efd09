//! Exact propagators of the free radial wave equation on ℝ⁴⁺¹.

pub mod bessel;
mod hankel;
mod integral;
mod spectral;

pub use hankel::{hankel_forward, hankel_inverse, HankelPlan, SpectralField, FOURIER_NORM};
pub use integral::{
    propagate_integral, propagate_integral_profiles, spherical_means_value, GaussianProfile,
    RadialProfile, SampledProfile, ZeroProfile, INTEGRAL_OPTIONS,
};
pub use spectral::{propagate_modes, propagate_spectral, scattering_pullback, spectral_energy};
