use std::fmt::Write as _;
use std::ops::Add;

use super::energy::{energy_curved, energy_flat, energy_prob_ii, SPHERE_AREA};
use super::monitors::{mass_aspect, smallness_monitors};
use super::morawetz::morawetz_m;
use crate::grid_state::{constraint_residuals, FieldState, RadialGrid};
use crate::model::TargetGeometry;
use crate::stencil::{d1, trapezoid, Parity};

/// Per-slice scalars written to `diagnostics.csv`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DiagnosticRecord {
    pub time: f64,
    pub energy_curved: f64,
    pub energy_flat: f64,
    pub energy_prob_ii: f64,
    pub morawetz_m: f64,
    /// ∫₀ᵀ ∫_{ℝ⁴} v²/|x|³ dx dT.
    pub morawetz_accum: f64,
    /// ‖v‖_{L²_T L⁸_x} over [0, T].
    pub strichartz_l2l8_accum: f64,
    /// ‖|x|^{1/2} v‖_{L²_T L^∞_x} over [0, T].
    pub strichartz_weighted_accum: f64,
    pub sup_e2z_minus_1: f64,
    pub sup_r_over_r_minus_1: f64,
    pub sup_rv: f64,
    pub constraint_h_max: f64,
    pub constraint_m_max: f64,
    pub mass_aspect_max: f64,
}

pub const CSV_HEADER: &str =
    "time,energy_curved,energy_flat,energy_probII,morawetz_M,morawetz_accum,\
strichartz_L2L8_accum,strichartz_weighted_accum,sup_e2Z_minus_1,sup_RoverR_minus_1,sup_Rv,\
constraint_h_max,constraint_m_max,mass_aspect_max";

impl DiagnosticRecord {
    pub fn values(&self) -> [f64; 14] {
        [
            self.time,
            self.energy_curved,
            self.energy_flat,
            self.energy_prob_ii,
            self.morawetz_m,
            self.morawetz_accum,
            self.strichartz_l2l8_accum,
            self.strichartz_weighted_accum,
            self.sup_e2z_minus_1,
            self.sup_r_over_r_minus_1,
            self.sup_rv,
            self.constraint_h_max,
            self.constraint_m_max,
            self.mass_aspect_max,
        ]
    }

    pub fn csv_row(&self) -> String {
        let mut s = String::new();
        for (k, x) in self.values().iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            let _ = write!(s, "{x:e}");
        }
        s
    }

    pub fn is_finite(&self) -> bool {
        self.values().iter().all(|x| x.is_finite())
    }
}

/// Dyadic radii 2^j·dR inside the grid.
pub fn dyadic_radii(grid: &RadialGrid) -> Vec<(f64, usize)> {
    let mut out = Vec::new();
    let mut k = 1usize;
    while k < grid.n_points {
        out.push((grid.radius(k), k));
        k *= 2;
    }
    out
}

/// Additive time integrals, each ∫ g(T) dT over the covered interval.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Accumulators {
    /// ∫∫ v²/|x|³ dx dT.
    pub morawetz: f64,
    /// ∫ ‖v‖²_{L⁸} dT.
    pub l2l8_sq: f64,
    /// ∫ ‖|x|^{1/4} v‖²_{L¹⁶} dT.
    pub wl2l16_sq: f64,
    /// ∫ sup_x |x| v² dT.
    pub wl2linf_sq: f64,
    /// ∫∫_{|x| ≤ ρ_j} (v_T² + |∇v|²) dx dT for each dyadic ρ_j.
    pub local_energy: Vec<f64>,
}

impl Add for &Accumulators {
    type Output = Accumulators;
    fn add(self, o: &Accumulators) -> Accumulators {
        let n = self.local_energy.len().max(o.local_energy.len());
        let at = |v: &Vec<f64>, j: usize| v.get(j).copied().unwrap_or(0.0);
        Accumulators {
            morawetz: self.morawetz + o.morawetz,
            l2l8_sq: self.l2l8_sq + o.l2l8_sq,
            wl2l16_sq: self.wl2l16_sq + o.wl2l16_sq,
            wl2linf_sq: self.wl2linf_sq + o.wl2linf_sq,
            local_energy: (0..n)
                .map(|j| at(&self.local_energy, j) + at(&o.local_energy, j))
                .collect(),
        }
    }
}

/// Norm-valued summary of [`Accumulators`].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct StrichartzSummary {
    pub l2l8: f64,
    pub wl2l16: f64,
    pub wl2linf: f64,
    /// sup over dyadic ρ of ρ^{−1/2} ‖(v_T, ∇v)‖_{L²_{T,x}(|x| ≤ ρ)}.
    pub local_energy_sup: f64,
}

impl Accumulators {
    pub fn summary(&self, grid: &RadialGrid) -> StrichartzSummary {
        let radii = dyadic_radii(grid);
        let local = radii
            .iter()
            .zip(&self.local_energy)
            .map(|((rho, _), e)| (e / rho).sqrt())
            .fold(0.0, f64::max);
        StrichartzSummary {
            l2l8: self.l2l8_sq.sqrt(),
            wl2l16: self.wl2l16_sq.sqrt(),
            wl2linf: self.wl2linf_sq.sqrt(),
            local_energy_sup: local,
        }
    }
}

/// Instantaneous integrands of the accumulators.
#[derive(Debug, Clone, PartialEq)]
struct Integrands {
    morawetz: f64,
    l8_sq: f64,
    l16_sq: f64,
    linf_sq: f64,
    local: Vec<f64>,
}

fn integrands(
    v: &[f64],
    v_t: &[f64],
    grid: &RadialGrid,
    order: usize,
    radii: &[(f64, usize)],
) -> Integrands {
    let h = grid.dr;
    let n = v.len();
    let v2: Vec<f64> = v.iter().map(|x| x * x).collect();
    let mut p8 = vec![0.0; n];
    let mut p16 = vec![0.0; n];
    let mut linf: f64 = 0.0;
    for i in 0..n {
        let rad = grid.radius(i);
        let r3 = rad * rad * rad;
        p8[i] = v[i].powi(8) * r3;
        p16[i] = rad.powi(4) * v[i].powi(16) * r3;
        linf = linf.max(rad * v2[i]);
    }
    let v_r = d1(v, h, order, Parity::Even);
    let dens: Vec<f64> = (0..n)
        .map(|i| (v_t[i] * v_t[i] + v_r[i] * v_r[i]) * grid.radius(i).powi(3))
        .collect();
    let local = radii
        .iter()
        .map(|&(_, k)| SPHERE_AREA * trapezoid(&dens[..=k], h))
        .collect();
    Integrands {
        morawetz: SPHERE_AREA * trapezoid(&v2, h),
        l8_sq: (SPHERE_AREA * trapezoid(&p8, h)).powf(0.25),
        l16_sq: (SPHERE_AREA * trapezoid(&p16, h)).powf(0.125),
        linf_sq: linf,
        local,
    }
}

/// Produces records along a run, accumulating time integrals by the
/// trapezoid rule between successive observations.
#[derive(Debug, Clone)]
pub struct DiagnosticsTracker {
    grid: RadialGrid,
    target: TargetGeometry,
    order: usize,
    radii: Vec<(f64, usize)>,
    acc: Accumulators,
    prev: Option<(f64, Integrands)>,
}

impl DiagnosticsTracker {
    pub fn new(grid: RadialGrid, target: TargetGeometry, order: usize) -> Self {
        let radii = dyadic_radii(&grid);
        let acc = Accumulators {
            local_energy: vec![0.0; radii.len()],
            ..Default::default()
        };
        DiagnosticsTracker {
            grid,
            target,
            order,
            radii,
            acc,
            prev: None,
        }
    }

    pub fn accumulators(&self) -> &Accumulators {
        &self.acc
    }

    pub fn summary(&self) -> StrichartzSummary {
        self.acc.summary(&self.grid)
    }

    /// Fold a slice into the accumulators without building a full record.
    pub fn accumulate(&mut self, s: &FieldState) {
        let cur = integrands(&s.v, &s.v_t, &self.grid, self.order, &self.radii);
        if let Some((t0, prev)) = &self.prev {
            let dt = s.time - t0;
            let trap = |a: f64, b: f64| 0.5 * dt * (a + b);
            self.acc.morawetz += trap(prev.morawetz, cur.morawetz);
            self.acc.l2l8_sq += trap(prev.l8_sq, cur.l8_sq);
            self.acc.wl2l16_sq += trap(prev.l16_sq, cur.l16_sq);
            self.acc.wl2linf_sq += trap(prev.linf_sq, cur.linf_sq);
            for (j, e) in self.acc.local_energy.iter_mut().enumerate() {
                *e += trap(prev.local[j], cur.local[j]);
            }
        }
        self.prev = Some((s.time, cur));
    }

    /// Accumulate and evaluate every per-slice diagnostic.
    pub fn observe(&mut self, s: &FieldState) -> DiagnosticRecord {
        self.accumulate(s);
        let order = self.order;
        let ef = energy_flat(&s.v, &s.v_t, &s.grid, order);
        let cons = constraint_residuals(s, &self.target, order);
        let mon = smallness_monitors(s, order);
        let m_max = mass_aspect(s, order)
            .iter()
            .fold(0.0, |a: f64, m| a.max(m.abs()));
        DiagnosticRecord {
            time: s.time,
            energy_curved: energy_curved(s, &self.target, order),
            energy_flat: ef,
            energy_prob_ii: energy_prob_ii(&s.v, &s.v_t, &s.grid, order),
            morawetz_m: morawetz_m(s, order),
            morawetz_accum: self.acc.morawetz,
            strichartz_l2l8_accum: self.acc.l2l8_sq.sqrt(),
            strichartz_weighted_accum: self.acc.wl2linf_sq.sqrt(),
            sup_e2z_minus_1: mon.e2z_minus_1,
            sup_r_over_r_minus_1: mon.r_over_r_minus_1,
            sup_rv: mon.rv,
            constraint_h_max: cons.max_hamiltonian(),
            constraint_m_max: cons.max_momentum(),
            mass_aspect_max: m_max,
        }
    }
}

/// Strichartz-type accumulators over a sequence of slices.
pub fn strichartz_accumulators(trace: &[FieldState], order: usize) -> StrichartzSummary {
    let Some(first) = trace.first() else {
        return StrichartzSummary::default();
    };
    let mut t = DiagnosticsTracker::new(first.grid, TargetGeometry::Flat, order);
    for s in trace {
        t.accumulate(s);
    }
    t.summary()
}
