use polariton_core::maxwell::maxwell_slab;
use polariton_core::{
    converge, make_profile, scatter, solve_epsilon, ConvergenceOptions, Error, FourierGrid, ProfileKind,
    SimulationParams,
};

fn maxwell(detuning: f64, p: &SimulationParams) -> (f64, f64) {
    let eps = solve_epsilon(detuning - p.mu_c, p.density, p.mu_c).unwrap();
    let m = maxwell_slab(detuning, p, &eps).unwrap();
    (m.transmission, m.reflection)
}

#[test]
fn convergence_history_matches_archived_run() {
    let p = SimulationParams { slab_depth: 1.0, ..Default::default() };
    let prof = make_profile(ProfileKind::Uniform, &p).unwrap();
    let c = converge(&prof, 0.0, &p, &ConvergenceOptions::default()).unwrap();
    let fixture = include_str!("fixtures/uniform_depth1_resonance.csv");
    let rows: Vec<(usize, f64, f64)> = fixture
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    assert_eq!(c.history.len(), rows.len());
    for ((cutoff, s), (k, t, r)) in c.history.iter().zip(&rows) {
        assert_eq!(cutoff, k);
        assert!((s.transmission - t).abs() <= 1e-9 * t, "T at {k}");
        assert!((s.reflection - r).abs() <= 1e-9 * r, "R at {k}");
    }
    assert_eq!(c.cutoff, 512);
    let changes: Vec<f64> = c
        .history
        .windows(2)
        .map(|w| {
            (w[1].1.transmission - w[0].1.transmission)
                .abs()
                .max((w[1].1.reflection - w[0].1.reflection).abs())
        })
        .collect();
    assert!(changes.windows(2).all(|w| w[1] < w[0]), "{changes:?}");
    let (t, r) = maxwell(0.0, &p);
    assert!((c.coefficients.transmission - t).abs() < 1e-2);
    assert!((c.coefficients.reflection - r).abs() < 1e-2);
}

#[test]
fn dense_profiles_are_insensitive_to_the_margin() {
    let p = SimulationParams { slab_depth: 5.0, ..Default::default() };
    for kind in [ProfileKind::Cosine, ProfileKind::Split] {
        let prof = make_profile(kind, &p).unwrap();
        for d in [-1.0, 0.0, 0.45] {
            let a = converge(&prof, d, &p, &ConvergenceOptions { margin: 4.0, ..Default::default() }).unwrap();
            let b = converge(&prof, d, &p, &ConvergenceOptions { margin: 6.0, ..Default::default() }).unwrap();
            let (a, b) = (a.coefficients, b.coefficients);
            assert!((a.transmission - b.transmission).abs() <= 1e-6, "{kind} {d}");
            assert!((a.reflection - b.reflection).abs() <= 1e-6, "{kind} {d}");
        }
    }
}

#[test]
fn empty_slab_converges_immediately() {
    let p = SimulationParams { density: 0.0, ..Default::default() };
    for kind in ProfileKind::ALL {
        let prof = make_profile(kind, &p).unwrap();
        let c = converge(&prof, 0.3, &p, &ConvergenceOptions::default()).unwrap();
        assert_eq!(c.history.len(), 1);
        assert_eq!(c.coefficients.transmission, 1.0);
        assert_eq!(c.coefficients.reflection, 0.0);
    }
}

#[test]
fn exhausted_doublings_report_the_last_estimate() {
    let p = SimulationParams { slab_depth: 1.0, ..Default::default() };
    let prof = make_profile(ProfileKind::Uniform, &p).unwrap();
    let opts = ConvergenceOptions { max_doublings: 1, ..Default::default() };
    match converge(&prof, 0.0, &p, &opts) {
        Err(Error::NotConverged { cutoff, change, last, .. }) => {
            assert_eq!(cutoff, 8);
            assert!(change > 1e-6);
            assert!((last.reflection - 3.5322616965581435e-2).abs() < 1e-9);
        }
        other => panic!("expected non-convergence, got {other:?}"),
    }
}

#[test]
fn recoil_regularizes_without_changing_the_spectrum_materially() {
    let p = SimulationParams { slab_depth: 1.0, ..Default::default() };
    let still = SimulationParams { recoil: 0.0, ..p };
    let prof = make_profile(ProfileKind::Uniform, &p).unwrap();
    let grid = FourierGrid::new(4096, prof.length);
    for d in [-1.0, 0.0, 0.45, 1.0] {
        let moving = converge(&prof, d, &p, &ConvergenceOptions::default()).unwrap().coefficients;
        let fixed = scatter(&prof, &grid, d, &still).unwrap();
        assert!((moving.transmission - fixed.transmission).abs() < 1e-2, "T at {d}");
        assert!((moving.reflection - fixed.reflection).abs() < 1e-2, "R at {d}");
        let (t, r) = maxwell(d, &p);
        let err_moving = (moving.transmission - t).abs() + (moving.reflection - r).abs();
        let err_fixed = (fixed.transmission - t).abs() + (fixed.reflection - r).abs();
        assert!(err_fixed < err_moving, "{d}: {err_fixed:e} vs {err_moving:e}");
    }
}
