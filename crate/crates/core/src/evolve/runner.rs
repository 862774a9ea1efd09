use std::fs;
use std::io::Write;
use std::path::PathBuf;

use super::stepper::{step_schedule, step_with_integrals, IdentityIntegrals};
use crate::diagnostics::{
    morawetz_m, Accumulators, DiagnosticRecord, DiagnosticsTracker, MorawetzSample,
    StrichartzSummary, CSV_HEADER,
};
use crate::error::{Error, Result};
use crate::grid_state::{
    build_initial_data_with, write_snapshot, FieldState, InitialDataOptions, RadialGrid,
};
use crate::model::{validate_config, RunConfig};

/// What a sink sees at each diagnostic time.
#[derive(Debug, Clone, Copy)]
pub struct Observation<'a> {
    pub step: usize,
    pub record: &'a DiagnosticRecord,
    pub morawetz: MorawetzSample,
    pub state: &'a FieldState,
}

/// Receives diagnostics and snapshots during [`run`].
pub trait RunSink {
    fn observe(&mut self, _obs: &Observation<'_>) -> Result<()> {
        Ok(())
    }

    fn snapshot(&mut self, _step: usize, _state: &FieldState) -> Result<()> {
        Ok(())
    }
}

/// Writes `diagnostics.csv` rows.
pub struct CsvSink<W: Write> {
    out: W,
    header_written: bool,
}

impl<W: Write> CsvSink<W> {
    pub fn new(out: W) -> Self {
        CsvSink {
            out,
            header_written: false,
        }
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

impl<W: Write> RunSink for CsvSink<W> {
    fn observe(&mut self, obs: &Observation<'_>) -> Result<()> {
        if !self.header_written {
            writeln!(self.out, "{CSV_HEADER}")?;
            self.header_written = true;
        }
        writeln!(self.out, "{}", obs.record.csv_row())?;
        Ok(())
    }
}

/// Writes `NNNNNN.ewm` snapshot files into a directory.
pub struct SnapshotDirSink {
    pub dir: PathBuf,
}

impl RunSink for SnapshotDirSink {
    fn snapshot(&mut self, step: usize, state: &FieldState) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        write_snapshot(&self.dir.join(format!("{step:06}.ewm")), state)
    }
}

/// Keeps everything in memory; states are retained only when asked.
#[derive(Debug, Default)]
pub struct MemorySink {
    pub keep_states: bool,
    pub records: Vec<DiagnosticRecord>,
    pub morawetz: Vec<MorawetzSample>,
    pub states: Vec<FieldState>,
    pub snapshots: Vec<FieldState>,
}

impl MemorySink {
    pub fn with_states() -> Self {
        MemorySink {
            keep_states: true,
            ..Default::default()
        }
    }
}

impl RunSink for MemorySink {
    fn observe(&mut self, obs: &Observation<'_>) -> Result<()> {
        self.records.push(*obs.record);
        self.morawetz.push(obs.morawetz);
        if self.keep_states {
            self.states.push(obs.state.clone());
        }
        Ok(())
    }

    fn snapshot(&mut self, _step: usize, state: &FieldState) -> Result<()> {
        self.snapshots.push(state.clone());
        Ok(())
    }
}

/// Outcome of a completed run.
#[derive(Debug, Clone)]
pub struct RunSummary {
    pub steps: usize,
    pub final_state: FieldState,
    pub final_record: DiagnosticRecord,
    pub accumulators: Accumulators,
    pub strichartz: StrichartzSummary,
    pub identity: IdentityIntegrals,
}

/// Build the initial slice for a validated configuration.
pub fn initial_state(cfg: &RunConfig) -> Result<FieldState> {
    let grid = RadialGrid::covering(cfg.grid.r_max, cfg.grid.n_points);
    let opts = InitialDataOptions {
        order: cfg.stepper.order,
        ..Default::default()
    };
    build_initial_data_with(&cfg.profile, &cfg.target, grid, cfg.mode, opts)
}

/// Evolve from T = 0 to `cfg.t_final`.
pub fn run(cfg: &RunConfig, sinks: &mut [&mut dyn RunSink]) -> Result<RunSummary> {
    let violations = validate_config(cfg);
    if !violations.is_empty() {
        return Err(Error::InvalidConfig(violations));
    }
    let s0 = initial_state(cfg)?;
    run_from(cfg, s0, sinks)
}

/// Evolve a given slice to `cfg.t_final`.
pub fn run_from(
    cfg: &RunConfig,
    mut s: FieldState,
    sinks: &mut [&mut dyn RunSink],
) -> Result<RunSummary> {
    let order = cfg.stepper.order;
    let mut tracker = DiagnosticsTracker::new(s.grid, cfg.target.clone(), order);
    let mut integrals = IdentityIntegrals::default();
    let schedule = step_schedule(cfg.t_final - s.time, cfg.dt());
    let total = schedule.len();

    let emit = |step: usize,
                s: &FieldState,
                tracker: &mut DiagnosticsTracker,
                integrals: &IdentityIntegrals,
                sinks: &mut [&mut dyn RunSink]|
     -> Result<DiagnosticRecord> {
        let record = tracker.observe(s);
        let obs = Observation {
            step,
            record: &record,
            morawetz: MorawetzSample {
                time: s.time,
                m: morawetz_m(s, order),
                integrals: *integrals,
            },
            state: s,
        };
        for sink in sinks.iter_mut() {
            sink.observe(&obs)?;
        }
        Ok(record)
    };
    let snap = |step: usize, s: &FieldState, sinks: &mut [&mut dyn RunSink]| -> Result<()> {
        if cfg.snapshot_every > 0 && (step.is_multiple_of(cfg.snapshot_every) || step == total) {
            for sink in sinks.iter_mut() {
                sink.snapshot(step, s)?;
            }
        }
        Ok(())
    };

    let mut last = emit(0, &s, &mut tracker, &integrals, sinks)?;
    snap(0, &s, sinks)?;
    let t_start = s.time;
    for (k, &dt) in schedule.iter().enumerate() {
        let step = k + 1;
        s = match step_with_integrals(&s, dt, cfg, &mut integrals) {
            Ok(next) => next,
            Err(Error::NanDetected { time, .. }) => return Err(Error::NanDetected { step, time }),
            Err(e) => return Err(e),
        };
        s.time = if step == total {
            cfg.t_final
        } else {
            t_start + step as f64 * cfg.dt()
        };
        if step % cfg.diag_every == 0 || step == total {
            last = emit(step, &s, &mut tracker, &integrals, sinks)?;
        } else {
            // the time integrals see every step, whatever the diagnostic cadence
            tracker.accumulate(&s);
        }
        snap(step, &s, sinks)?;
    }
    Ok(RunSummary {
        steps: total,
        final_record: last,
        accumulators: tracker.accumulators().clone(),
        strichartz: tracker.summary(),
        identity: integrals,
        final_state: s,
    })
}
