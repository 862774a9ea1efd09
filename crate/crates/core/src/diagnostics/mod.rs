//! Energies, Morawetz quantities, smallness and mass-aspect monitors,
//! Strichartz accumulators and the scattering residual.

mod energy;
mod monitors;
mod morawetz;
mod record;
mod scattering;

pub use energy::{
    energy_curved, energy_flat, energy_parts, energy_prob_ii, energy_prob_ii_with, integrate_r4,
    quartic_norm, QuarticForm, SPHERE_AREA,
};
pub use monitors::{
    mass_aspect, mass_aspect_check, smallness_monitors, MassAspectCheck, Smallness,
};
pub use morawetz::{
    morawetz_identity_residual, morawetz_identity_scale, morawetz_m, MorawetzSample,
};
pub use record::{
    dyadic_radii, strichartz_accumulators, Accumulators, DiagnosticRecord, DiagnosticsTracker,
    StrichartzSummary, CSV_HEADER,
};
pub use scattering::{scattering_residual, ScatteringRow, PROPAGATOR_TOLERANCE};
