//! Simulation and analysis of the radial Einstein–wave-map system in its
//! 4+1 reduction: evolution of the coupled field/metric system, exact linear
//! propagators, Littlewood–Paley norms and the diagnostic suite.

pub mod config;
pub mod diagnostics;
pub mod error;
pub mod evolve;
pub mod grid_state;
pub mod interp;
pub mod linprop;
pub mod lp_norms;
pub mod model;
pub mod quadrature;
pub mod stencil;

pub use config::{apply_override, load_config, parse_config, to_config_string};
pub use diagnostics::{DiagnosticRecord, DiagnosticsTracker};
pub use error::{Error, Result};
pub use evolve::{run, step, RunSink, RunSummary};
pub use grid_state::{
    build_initial_data, constraint_residuals, null_derivatives, read_snapshot, write_snapshot,
    ConstraintResiduals, DataProfile, Field, FieldState, ProfileFamily, RadialGrid, Velocity,
};
pub use linprop::{
    propagate_integral, propagate_spectral, scattering_pullback, HankelPlan, SpectralField,
};
pub use model::{
    make_flat_target, make_hyperbolic_target, make_polynomial_target, validate_config, GridSpec,
    ProblemMode, RunConfig, StepperSpec, TargetGeometry,
};
