//! Littlewood–Paley projectors and the X / Y space-time norms.

mod bump;
mod duhamel;
mod norms;
mod trace;

pub use bump::{
    decompose, dyadic_scales, partition_residual, project, resolved_band, Decomposition, DyadicBump,
};
pub use duhamel::{duhamel_trace, inhomogeneous_check, InhomogeneousCheck};
pub use norms::{
    strichartz_pair, x_norm, y_norm_best, y_norm_bound, y_norm_upper, SplitStrategy, XNorm,
    XNormComponents, YNormBound,
};
pub use trace::{time_weights, ForcingTrace, SpaceTimeTrace};
