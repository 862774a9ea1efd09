use ewm_core::grid_state::{decode_snapshot, encode_snapshot, ProfileFamily, Velocity};
use ewm_core::{
    build_initial_data, constraint_residuals, make_hyperbolic_target, null_derivatives,
    read_snapshot, write_snapshot, DataProfile, Error, Field, FieldState, ProblemMode, RadialGrid,
};
use proptest::prelude::*;
use std::path::Path;

fn gaussian(eps: f64) -> DataProfile {
    DataProfile {
        amplitude: eps,
        ..DataProfile::default()
    }
}

fn max_abs(x: &[f64]) -> f64 {
    x.iter().fold(0.0, |m, v| m.max(v.abs()))
}

#[test]
fn grid_nodes() {
    let g = RadialGrid::covering(16.0, 513);
    assert_eq!(g.radius(0), 0.0);
    assert_eq!(g.dr, 1.0 / 32.0);
    assert_eq!(g.r_max(), 16.0);
    let n = g.nodes();
    assert!(n.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn zero_amplitude_is_exact_vacuum() {
    let g = RadialGrid::covering(16.0, 257);
    for mode in ProblemMode::ALL {
        let s = build_initial_data(&gaussian(0.0), &make_hyperbolic_target(), g, mode).unwrap();
        assert_eq!(s, FieldState::flat_vacuum(g), "{mode}");
    }
}

#[test]
fn modes_pin_the_metric() {
    let g = RadialGrid::covering(16.0, 257);
    let t = make_hyperbolic_target();
    let free = build_initial_data(&gaussian(0.1), &t, g, ProblemMode::Free).unwrap();
    assert_eq!(free.r, g.nodes());
    assert!(free
        .z
        .iter()
        .chain(&free.r_t)
        .chain(&free.z_t)
        .all(|&x| x == 0.0));
    assert!(max_abs(&free.v) > 0.0);

    let special = build_initial_data(&gaussian(0.1), &t, g, ProblemMode::ProblemISpecial).unwrap();
    assert_eq!(special.r, g.nodes());
    let two = build_initial_data(&gaussian(0.1), &t, g, ProblemMode::ProblemII).unwrap();
    assert!(two.z.iter().all(|&x| x == 0.0));
    let full = build_initial_data(&gaussian(0.1), &t, g, ProblemMode::Full).unwrap();
    assert!(max_abs(&full.radius_deviation()) > 0.0);
}

#[test]
fn axis_conditions_hold() {
    let g = RadialGrid::covering(16.0, 257);
    let s = build_initial_data(
        &gaussian(0.05),
        &make_hyperbolic_target(),
        g,
        ProblemMode::Full,
    )
    .unwrap();
    assert_eq!(s.r[0], 0.0);
    assert_eq!(s.r_t[0], 0.0);
    assert_eq!(s.z[0], 0.0);
    assert!(s.r[1..].iter().all(|&r| r > 0.0));
    // ∂_R r(0) = 1 to discretization order
    let slope = (8.0 * s.r[1] - s.r[2]) / (6.0 * g.dr);
    assert!((slope - 1.0).abs() < 1e-6, "{slope}");
}

fn initial_residual(n: usize, order: usize) -> f64 {
    let g = RadialGrid::covering(16.0, n);
    let t = make_hyperbolic_target();
    let s = build_initial_data(&gaussian(1e-2), &t, g, ProblemMode::Full).unwrap();
    constraint_residuals(&s, &t, order).max_abs()
}

#[test]
fn initial_constraints_converge_at_stencil_order() {
    let res: Vec<f64> = [129, 257, 513]
        .iter()
        .map(|&n| initial_residual(n, 4))
        .collect();
    for w in res.windows(2) {
        let ratio = w[0] / w[1];
        assert!((ratio / 16.0 - 1.0).abs() <= 0.15, "{res:?}");
    }
    assert!(res[2] < 1e-8);
}

#[test]
fn residual_is_zero_on_vacuum_and_detects_corruption() {
    let g = RadialGrid::covering(16.0, 257);
    let t = make_hyperbolic_target();
    let vac = FieldState::flat_vacuum(g);
    let r = constraint_residuals(&vac, &t, 4);
    assert_eq!(r.max_abs(), 0.0);
    assert_eq!(r.hamiltonian.len(), g.n_points - 2);

    let mut s = build_initial_data(&gaussian(1e-2), &t, g, ProblemMode::Full).unwrap();
    let before = constraint_residuals(&s, &t, 4).max_abs();
    let nodes = g.nodes();
    for (z, r) in s.z.iter_mut().zip(&nodes) {
        *z += 0.1 * (-(r - 4.0) * (r - 4.0)).exp();
    }
    let after = constraint_residuals(&s, &t, 4).max_abs();
    assert!(after > 1e-3 && after > 1e4 * before, "{before} → {after}");
}

#[test]
fn null_derivative_examples() {
    let g = RadialGrid::covering(8.0, 129);
    let vac = FieldState::flat_vacuum(g);
    let nr = null_derivatives(&vac, Field::R, 4);
    assert!(nr.d_xi.iter().all(|&x| x == 0.5));
    assert!(nr.d_eta.iter().all(|&x| x == -0.5));
    let nz = null_derivatives(&vac, Field::Z, 4);
    assert!(nz.d_xi.iter().chain(&nz.d_eta).all(|&x| x == 0.0));

    let mut s = vac.clone();
    s.v = g.nodes().iter().map(|r| (-r * r).exp()).collect();
    let nv = null_derivatives(&s, Field::V, 4);
    for i in 0..g.n_points {
        assert_eq!(nv.d_xi[i], -nv.d_eta[i]);
        let exact = -g.radius(i) * (-g.radius(i).powi(2)).exp();
        assert!((nv.d_xi[i] - exact).abs() < 1e-4, "{i}");
    }
}

#[test]
fn parity_enforcement_is_idempotent() {
    let g = RadialGrid::covering(8.0, 65);
    let mut s = build_initial_data(
        &gaussian(0.1),
        &make_hyperbolic_target(),
        g,
        ProblemMode::Full,
    )
    .unwrap();
    s.r[0] = 1e-3;
    s.r_t[0] = -2e-3;
    s.enforce_parity();
    let once = s.clone();
    s.enforce_parity();
    assert_eq!(s, once);
    assert_eq!(s.r[0], 0.0);
    assert_eq!(s.r_t[0], 0.0);
}

#[test]
fn oversized_data_is_a_clean_error() {
    let g = RadialGrid::covering(16.0, 257);
    match build_initial_data(
        &gaussian(50.0),
        &make_hyperbolic_target(),
        g,
        ProblemMode::Full,
    ) {
        Err(Error::NonPositiveRadius { radius, r, .. }) => {
            assert!(radius > 0.0 && r <= 0.0);
        }
        other => panic!("expected NonPositiveRadius, got {other:?}"),
    }
}

#[test]
fn snapshot_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = RadialGrid::covering(16.0, 257);
    let mut s = build_initial_data(
        &gaussian(0.03),
        &make_hyperbolic_target(),
        g,
        ProblemMode::Full,
    )
    .unwrap();
    s.time = 1.25;
    let p = dir.path().join("000010.ewm");
    write_snapshot(&p, &s).unwrap();
    let back = read_snapshot(&p).unwrap();
    assert_eq!(encode_snapshot(&back), encode_snapshot(&s));
    assert_eq!(back, s);
    let bytes = std::fs::read(&p).unwrap();
    assert_eq!(&bytes[..4], b"EWM1");
    assert_eq!(bytes.len(), 32 + 6 * 8 * g.n_points);
}

#[test]
fn corrupt_snapshots_are_rejected() {
    let s = FieldState::flat_vacuum(RadialGrid::covering(4.0, 17));
    let good = encode_snapshot(&s);
    let path = Path::new("x.ewm");
    let mut bad = good.clone();
    bad[0] = b'X';
    assert!(decode_snapshot(&bad, path).is_err());
    assert!(decode_snapshot(&good[..good.len() - 1], path).is_err());
    assert!(decode_snapshot(&good[..10], path).is_err());
}

proptest! {
    #[test]
    fn snapshot_encoding_is_bit_exact(
        n in 16usize..40,
        seed in proptest::collection::vec(any::<f64>(), 6),
        time in any::<f64>(),
    ) {
        let g = RadialGrid::new(n, 0.125);
        let mut s = FieldState::flat_vacuum(g);
        s.time = time;
        for (k, arr) in [&mut s.v, &mut s.v_t, &mut s.r, &mut s.r_t, &mut s.z, &mut s.z_t]
            .into_iter()
            .enumerate()
        {
            for (i, x) in arr.iter_mut().enumerate() {
                *x = seed[k] * (i as f64 + 0.5);
            }
        }
        let back = decode_snapshot(&encode_snapshot(&s), Path::new("p")).unwrap();
        prop_assert_eq!(encode_snapshot(&back), encode_snapshot(&s));
    }
}

#[test]
fn ensemble_draws_are_reproducible_and_valid() {
    let a = DataProfile::ensemble(7, 20, 0.5);
    assert_eq!(a, DataProfile::ensemble(7, 20, 0.5));
    assert_ne!(a, DataProfile::ensemble(8, 20, 0.5));
    assert!(a.iter().any(|p| p.family == ProfileFamily::CompactBump));
    assert!(a.iter().any(|p| p.velocity == Velocity::Ingoing));
    for p in &a {
        assert_eq!(p.amplitude, 0.5);
        assert!(p.support_radius() < 16.0);
    }
}
