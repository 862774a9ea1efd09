use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use ewm_core::config::{load_config, to_config_string};
use ewm_core::diagnostics::{scattering_residual, DiagnosticRecord, CSV_HEADER};
use ewm_core::evolve::{CsvSink, Observation, SnapshotDirSink};
use ewm_core::lp_norms::{
    x_norm, y_norm_bound, DyadicBump, ForcingTrace, SpaceTimeTrace, SplitStrategy, XNormComponents,
};
use ewm_core::{
    read_snapshot, run as evolve, validate_config, Error, FieldState, ProblemMode, RunConfig,
    RunSink, RunSummary,
};

use crate::failure::Failure;

const SWEEP_LIMIT: usize = 64;

/// Remembers the first record so the summary can report drifts.
#[derive(Default)]
struct FirstRecord(Option<DiagnosticRecord>);

impl RunSink for FirstRecord {
    fn observe(&mut self, obs: &Observation<'_>) -> ewm_core::Result<()> {
        self.0.get_or_insert(*obs.record);
        Ok(())
    }
}

fn record_names() -> Vec<&'static str> {
    CSV_HEADER.split(',').collect()
}

fn summary_text(s: &RunSummary, first: Option<&DiagnosticRecord>) -> String {
    let mut out = String::from("status=ok\n");
    let _ = writeln!(out, "steps={}", s.steps);
    for (k, v) in record_names().iter().zip(s.final_record.values()) {
        let _ = writeln!(out, "final.{k}={v:e}");
    }
    if let Some(f) = first {
        let drift = |a: f64, b: f64| if a != 0.0 { (b - a) / a } else { 0.0 };
        let _ = writeln!(
            out,
            "energy_curved_rel_drift={:e}",
            drift(f.energy_curved, s.final_record.energy_curved)
        );
        let _ = writeln!(
            out,
            "energy_flat_rel_drift={:e}",
            drift(f.energy_flat, s.final_record.energy_flat)
        );
    }
    let st = &s.strichartz;
    let _ = writeln!(out, "strichartz.l2l8={:e}", st.l2l8);
    let _ = writeln!(out, "strichartz.wl2l16={:e}", st.wl2l16);
    let _ = writeln!(out, "strichartz.wl2linf={:e}", st.wl2linf);
    let _ = writeln!(out, "strichartz.local_energy_sup={:e}", st.local_energy_sup);
    let _ = writeln!(out, "morawetz.accum={:e}", s.accumulators.morawetz);
    out
}

pub fn run(c: &RunConfig, out: &Path) -> Result<(), Failure> {
    fs::create_dir_all(out)?;
    fs::write(out.join("run.cfg"), to_config_string(c))?;
    let mut csv = CsvSink::new(BufWriter::new(File::create(out.join("diagnostics.csv"))?));
    let mut snaps = SnapshotDirSink {
        dir: out.join("snapshots"),
    };
    let mut first = FirstRecord::default();
    let result = evolve(c, &mut [&mut csv, &mut snaps, &mut first]);
    csv.into_inner().flush()?;
    match result {
        Ok(s) => {
            fs::write(out.join("summary.txt"), summary_text(&s, first.0.as_ref()))?;
            Ok(())
        }
        Err(e) => {
            let mut text = String::from("status=failed\n");
            if let Some(t) = e.failure_time() {
                let _ = writeln!(text, "failure_time={t}");
            }
            let _ = writeln!(text, "error={e}");
            fs::write(out.join("summary.txt"), text)?;
            Err(e.into())
        }
    }
}

/// Every `*.ewm` file in `dir`, in name order.
pub fn read_snapshot_dir(dir: &Path) -> Result<Vec<FieldState>, Failure> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "ewm"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(Failure::Invalid(format!(
            "no .ewm snapshots in {}",
            dir.display()
        )));
    }
    paths
        .iter()
        .map(|p| read_snapshot(p).map_err(Failure::from))
        .collect()
}

/// Longest prefix with uniform time spacing; the closing snapshot of a run
/// may land off the cadence.
fn uniform_prefix(mut states: Vec<FieldState>) -> Vec<FieldState> {
    if states.len() > 2 {
        let h = states[1].time - states[0].time;
        let keep = states
            .windows(2)
            .take_while(|w| ((w[1].time - w[0].time) - h).abs() <= 1e-6 * h.abs().max(1.0))
            .count()
            + 1;
        if keep < states.len() {
            eprintln!(
                "note: using the {keep} uniformly spaced snapshots up to T = {}",
                states[keep - 1].time
            );
            states.truncate(keep);
        }
    }
    states
}

fn sibling_config(dir: &Path) -> Option<PathBuf> {
    [dir.join("run.cfg"), dir.parent()?.join("run.cfg")]
        .into_iter()
        .find(|p| p.is_file())
}

pub fn norms(dir: &Path, config: Option<&Path>, out: &Path) -> Result<(), Failure> {
    let cfg = match config
        .map(Path::to_path_buf)
        .or_else(|| sibling_config(dir))
    {
        Some(p) => load_config(&p)?,
        None => RunConfig::default(),
    };
    let states = uniform_prefix(read_snapshot_dir(dir)?);
    let bump = DyadicBump;
    let trace = SpaceTimeTrace::from_states(&states)?;
    let x = x_norm(&trace, &bump);
    let forcing = ForcingTrace::from_states(&states, cfg.mode, &cfg.target, cfg.stepper.order)?;

    let mut w = BufWriter::new(File::create(out)?);
    writeln!(w, "quantity,value")?;
    writeln!(w, "snapshots,{}", states.len())?;
    writeln!(w, "x_total,{:e}", x.total)?;
    for (name, v) in XNormComponents::NAMES.iter().zip(x.components.values()) {
        writeln!(w, "x_sq.{name},{v:e}")?;
    }
    writeln!(w, "x_low_tail_energy,{:e}", x.low_tail_energy)?;
    writeln!(w, "x_high_tail_energy,{:e}", x.high_tail_energy)?;
    for split in SplitStrategy::ALL {
        let y = y_norm_bound(&forcing, split, &bump);
        writeln!(w, "y.{split}.l1,{:e}", y.l1_part)?;
        writeln!(w, "y.{split}.annular,{:e}", y.annular_part)?;
        writeln!(w, "y.{split}.total,{:e}", y.total())?;
    }
    w.flush()?;
    Ok(())
}

pub fn scatter(dir: &Path, t0s: &[f64], order: usize, out: &Path) -> Result<(), Failure> {
    let states = read_snapshot_dir(dir)?;
    let rows = scattering_residual(&states, t0s, order);
    let mut w = BufWriter::new(File::create(out)?);
    writeln!(w, "t0,delta,delta_rel,forward_residual")?;
    for r in rows {
        writeln!(
            w,
            "{:e},{:e},{:e},{:e}",
            r.t0, r.delta, r.delta_rel, r.forward_residual
        )?;
    }
    w.flush()?;
    Ok(())
}

const SWEEP_HEADER: &str = "index,eps,mode,n_points,status,failure_time,steps,\
energy_curved,energy_flat,energy_curved_rel_drift,morawetz_accum,strichartz_l2l8,\
sup_e2Z_minus_1,sup_RoverR_minus_1,sup_Rv,constraint_max,mass_aspect_max";

fn sweep_row(index: usize, c: &RunConfig, result: &Result<(RunSummary, f64), Error>) -> String {
    let head = format!(
        "{index},{:e},{},{}",
        c.profile.amplitude, c.mode, c.grid.n_points
    );
    match result {
        Ok((s, e0)) => {
            let r = &s.final_record;
            let drift = if *e0 != 0.0 {
                (r.energy_curved - e0) / e0
            } else {
                0.0
            };
            format!(
                "{head},ok,,{},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e},{:e}",
                s.steps,
                r.energy_curved,
                r.energy_flat,
                drift,
                r.morawetz_accum,
                s.strichartz.l2l8,
                r.sup_e2z_minus_1,
                r.sup_r_over_r_minus_1,
                r.sup_rv,
                r.constraint_h_max.max(r.constraint_m_max),
                r.mass_aspect_max
            )
        }
        Err(e) => {
            let t = e
                .failure_time()
                .map(|t| format!("{t:e}"))
                .unwrap_or_default();
            let kind = if e.is_numerical() { "failed" } else { "error" };
            format!("{head},{kind},{t}{}", ",".repeat(11))
        }
    }
}

/// The cartesian product in (ε, mode, resolution) order; empty axes keep the
/// base value.
pub fn sweep_grid(
    base: &RunConfig,
    eps: &[f64],
    modes: &[ProblemMode],
    resolutions: &[usize],
) -> Vec<RunConfig> {
    let eps = if eps.is_empty() {
        vec![base.profile.amplitude]
    } else {
        eps.to_vec()
    };
    let modes = if modes.is_empty() {
        vec![base.mode]
    } else {
        modes.to_vec()
    };
    let ns = if resolutions.is_empty() {
        vec![base.grid.n_points]
    } else {
        resolutions.to_vec()
    };
    let mut out = Vec::new();
    for &e in &eps {
        for &m in &modes {
            for &n in &ns {
                let mut c = base.clone();
                c.profile.amplitude = e;
                c.mode = m;
                c.grid.n_points = n;
                c.snapshot_every = 0;
                out.push(c);
            }
        }
    }
    out
}

pub fn sweep(
    base: &RunConfig,
    eps: &[f64],
    modes: &[ProblemMode],
    resolutions: &[usize],
    out: &Path,
) -> Result<(), Failure> {
    let grid = sweep_grid(base, eps, modes, resolutions);
    if grid.len() > SWEEP_LIMIT {
        return Err(Failure::Invalid(format!(
            "sweep has {} combinations, at most {SWEEP_LIMIT} allowed",
            grid.len()
        )));
    }
    for (i, c) in grid.iter().enumerate() {
        let p = validate_config(c);
        if !p.is_empty() {
            return Err(Failure::Invalid(format!(
                "combination {i}: {}",
                p.join("; ")
            )));
        }
    }
    let rows: Vec<String> = grid
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let mut first = FirstRecord::default();
            let r =
                evolve(c, &mut [&mut first]).map(|s| (s, first.0.map_or(0.0, |f| f.energy_curved)));
            if let Err(e) = &r {
                eprintln!(
                    "combination {i} ({} {} {}): {e}",
                    c.profile.amplitude, c.mode, c.grid.n_points
                );
            }
            sweep_row(i, c, &r)
        })
        .collect();
    let mut w = BufWriter::new(File::create(out)?);
    writeln!(w, "{SWEEP_HEADER}")?;
    for r in rows {
        writeln!(w, "{r}")?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_cardinality_and_order() {
        let g = sweep_grid(
            &RunConfig::default(),
            &[1e-2, 5e-3],
            &[ProblemMode::ProblemI, ProblemMode::ProblemII],
            &[],
        );
        assert_eq!(g.len(), 4);
        assert_eq!(g[1].mode, ProblemMode::ProblemII);
        assert_eq!(g[2].profile.amplitude, 5e-3);
    }

    #[test]
    fn header_and_rows_have_matching_width() {
        let cols = SWEEP_HEADER.split(',').count();
        let c = RunConfig::default();
        let e = Err(Error::NanDetected { step: 3, time: 0.5 });
        assert_eq!(sweep_row(0, &c, &e).split(',').count(), cols);
    }
}
