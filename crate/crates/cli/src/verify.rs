//! Short cross-checks of the solver against exact or convergent references.

use ewm_core::diagnostics::integrate_r4;
use ewm_core::diagnostics::{morawetz_identity_residual, PROPAGATOR_TOLERANCE};
use ewm_core::evolve::{initial_state, run_from, MemorySink};
use ewm_core::grid_state::{constraint_residuals, ProfileFamily, Velocity};
use ewm_core::linprop::{
    propagate_integral_profiles, propagate_spectral, GaussianProfile, ZeroProfile,
};
use ewm_core::lp_norms::{decompose, partition_residual, DyadicBump};
use ewm_core::{run, DataProfile, ProblemMode, RadialGrid, RunConfig, RunSink};

use crate::failure::Failure;
use crate::Suite;

const ORDER: f64 = 4.0;
const ORDER_SLACK: f64 = 0.15;
const PARTITION_TOL: f64 = 1e-12;
const RECONSTRUCTION_TOL: f64 = 1e-6;

struct Row {
    label: String,
    value: f64,
    limit: String,
    pass: bool,
}

fn near_order(p: f64) -> bool {
    (p / ORDER - 1.0).abs() <= ORDER_SLACK
}

fn config(mode: ProblemMode, eps: f64, n: usize, t_final: f64) -> RunConfig {
    let mut c = RunConfig {
        mode,
        t_final,
        diag_every: usize::MAX,
        ..RunConfig::default()
    };
    c.grid.n_points = n;
    c.profile.amplitude = eps;
    c
}

fn propagator() -> Result<Vec<Row>, Failure> {
    let g = RadialGrid::covering(16.0, 513);
    let v0: Vec<f64> = g.nodes().iter().map(|r| (-r * r).exp()).collect();
    let zero = vec![0.0; g.n_points];
    let probe: Vec<usize> = (0..g.n_points)
        .step_by(16)
        .filter(|&i| g.radius(i) <= 8.0)
        .collect();
    let radii: Vec<f64> = probe.iter().map(|&i| g.radius(i)).collect();
    let gauss = GaussianProfile {
        amplitude: 1.0,
        width: 1.0,
    };
    let mut rows = Vec::new();
    for t in [0.5, 1.0, 2.0, 4.0] {
        let (spec, _) = propagate_spectral(&v0, &zero, t, g);
        let exact = propagate_integral_profiles(&gauss, &ZeroProfile, t, &radii)?;
        let err = probe
            .iter()
            .zip(&exact)
            .map(|(&i, u)| (spec[i] - u).abs())
            .fold(0.0, f64::max);
        rows.push(Row {
            label: format!("spectral vs integral, T = {t}"),
            value: err,
            limit: format!("< {PROPAGATOR_TOLERANCE:e}"),
            pass: err < PROPAGATOR_TOLERANCE,
        });
    }
    Ok(rows)
}

fn morawetz() -> Result<Vec<Row>, Failure> {
    let mut rows = Vec::new();
    for (mode, eps) in [(ProblemMode::Free, 1.0), (ProblemMode::ProblemII, 1e-2)] {
        let mut res = Vec::new();
        for n in [257, 513] {
            let mut c = config(mode, eps, n, 2.0);
            c.diag_every = 4 * (n / 257);
            let mut sink = MemorySink::default();
            run(&c, &mut [&mut sink as &mut dyn RunSink])?;
            res.push(morawetz_identity_residual(&sink.morawetz));
        }
        let p = (res[0] / res[1]).log2();
        rows.push(Row {
            label: format!(
                "identity residual order, {mode} ({:.2e} → {:.2e})",
                res[0], res[1]
            ),
            value: p,
            limit: format!("{ORDER} ± {}%", ORDER_SLACK * 100.0),
            pass: near_order(p),
        });
    }
    Ok(rows)
}

fn littlewood_paley() -> Result<Vec<Row>, Failure> {
    let bump = DyadicBump;
    let g = RadialGrid::covering(16.0, 513);
    let pr = partition_residual(&g, &bump);
    let p = DataProfile {
        family: ProfileFamily::CompactBump,
        center: 0.0,
        width: 3.0,
        amplitude: 1.0,
        velocity: Velocity::TimeSymmetric,
    };
    let f: Vec<f64> = g.nodes().iter().map(|&r| p.v0(r)).collect();
    let back = decompose(&f, &bump, &g).reconstruct();
    let sq = |x: Vec<f64>| integrate_r4(&x.iter().map(|y| y * y).collect::<Vec<_>>(), &g).sqrt();
    let rec = sq(back.iter().zip(&f).map(|(a, b)| a - b).collect()) / sq(f.clone());
    Ok(vec![
        Row {
            label: "partition of unity residual".into(),
            value: pr,
            limit: format!("≤ {PARTITION_TOL:e}"),
            pass: pr <= PARTITION_TOL,
        },
        Row {
            label: "relative reconstruction error".into(),
            value: rec,
            limit: format!("≤ {RECONSTRUCTION_TOL:e}"),
            pass: rec <= RECONSTRUCTION_TOL,
        },
    ])
}

fn constraints() -> Result<Vec<Row>, Failure> {
    let mut res = Vec::new();
    for n in [129, 257, 513] {
        let c = config(ProblemMode::Full, 1e-2, n, 4.0);
        let s0 = initial_state(&c)?;
        let s = run_from(&c, s0, &mut [])?;
        res.push(constraint_residuals(&s.final_state, &c.target, c.stepper.order).max_abs());
    }
    Ok(res
        .windows(2)
        .map(|w| {
            let r = w[0] / w[1];
            Row {
                label: format!("constraint ratio ({:.2e} / {:.2e})", w[0], w[1]),
                value: r,
                limit: format!("{} ± {}%", 2f64.powf(ORDER), ORDER_SLACK * 100.0),
                pass: (r / 2f64.powf(ORDER) - 1.0).abs() <= ORDER_SLACK,
            }
        })
        .collect())
}

pub fn run_suite(suite: Suite) -> Result<(), Failure> {
    let selected: Vec<(&str, fn() -> Result<Vec<Row>, Failure>)> = [
        (Suite::Propagator, "propagator", propagator as fn() -> _),
        (Suite::Morawetz, "morawetz", morawetz),
        (Suite::Lp, "lp", littlewood_paley),
        (Suite::Constraints, "constraints", constraints),
    ]
    .into_iter()
    .filter(|(s, _, _)| suite == Suite::All || suite == *s)
    .map(|(_, name, f)| (name, f))
    .collect();
    let mut failed = Vec::new();
    for (name, f) in selected {
        eprintln!("[{name}]");
        for r in f()? {
            eprintln!(
                "  {} {:<60} {:>12.4e}  {}",
                if r.pass { "PASS" } else { "FAIL" },
                r.label,
                r.value,
                r.limit
            );
            if !r.pass {
                failed.push(name);
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        failed.dedup();
        Err(Failure::Numerical {
            message: format!("verification failed: {}", failed.join(", ")),
            time: None,
        })
    }
}
