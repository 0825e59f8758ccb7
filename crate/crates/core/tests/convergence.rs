use morse_gps::solver::{convergence_study, solve, study_spread, SolveConfig, DEFAULT_L};
use morse_gps::units::hartree_to_ev;
use morse_gps::molecule_params;

#[test]
fn h2_ground_state_is_order_independent() {
    let m = molecule_params("H2").unwrap();
    let cells = convergence_study(&m, 0, 0, &[100, 200, 300], &[200.0], DEFAULT_L);
    let spread = hartree_to_ev(study_spread(&cells).unwrap());
    assert!(spread <= 1e-9, "{spread:e}");
}

#[test]
fn co_rotational_state_is_box_independent() {
    let m = molecule_params("CO").unwrap();
    let cells = convergence_study(&m, 25, 5, &[300], &[200.0, 400.0], DEFAULT_L);
    let spread = hartree_to_ev(study_spread(&cells).unwrap());
    assert!(spread <= 1e-7, "{spread:e}");
}

#[test]
fn highest_h2_level_needs_a_larger_box_when_started_small() {
    let m = molecule_params("H2").unwrap();
    let config = SolveConfig {
        r_max: 20.0,
        ..SolveConfig::default()
    };
    let s = solve(&m, 0, &config).unwrap();
    assert!(s.report.escalations >= 1, "{:?}", s.report);
    assert!(s.report.converged);
    assert_eq!(s.len(), 17);
    assert!(s.state(16).unwrap().energy < 0.0);
}

#[test]
fn failing_cells_are_reported() {
    let m = molecule_params("H2").unwrap();
    let cells = convergence_study(&m, 0, 40, &[100], &[200.0], DEFAULT_L);
    assert!(cells[0].energy.is_err());
    assert!(study_spread(&cells).is_none());
}
