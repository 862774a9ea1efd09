//! Method-of-lines evolution of the coupled field/metric system.

mod rhs;
mod runner;
mod stepper;

pub use rhs::{
    box4p1, compute_rhs, metric_rhs, nonlinearity, nonlinearity_parts, MetricRhs, NonlinearParts,
    Rhs,
};
pub use runner::{
    initial_state, run, run_from, CsvSink, MemorySink, Observation, RunSink, RunSummary,
    SnapshotDirSink,
};
pub use stepper::{pin_mode_fields, step, step_schedule, step_with_integrals, IdentityIntegrals};
