use std::sync::Arc;

use jumpspec::jumps::one_sided_derivative;
use jumpspec::mol::{evolve, AdvectionProblem};
use jumpspec::{fd_weights, DerivMatrix, Grid, JumpData};

fn kink_run(n: usize, speed: f64, xi0: f64, jump: JumpData) -> (Grid, jumpspec::mol::EvolutionResult) {
    let grid = Grid::chebyshev_gauss_lobatto(-1.0, 1.0, n).unwrap();
    let d = DerivMatrix::pseudospectral(&grid, 1).unwrap();
    let p =
        AdvectionProblem::translating(grid.clone(), speed, Arc::new(move |x: f64| (x - xi0).abs()), jump, 1.0).unwrap();
    let out = evolve(&p, &d, 1e-3, 100).unwrap();
    (grid, out)
}

#[test]
fn records_are_consistent() {
    let (grid, out) = kink_run(24, 1.0, -0.5, JumpData::new(-0.5, vec![0.0, 2.0]).unwrap());
    assert_eq!(out.times.first(), Some(&0.0));
    assert_eq!(out.times.last(), Some(&1.0));
    assert!(out.times.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(out.xi_path.len(), out.times.len());
    assert_eq!(out.error_linf.len(), out.times.len());
    for (t, xi) in out.times.iter().zip(&out.xi_path) {
        assert_eq!(*xi, -0.5 + 1.0 * t);
    }
    assert!(out.states.iter().all(|s| s.len() == grid.len()));
}

#[test]
fn first_derivative_jump_is_preserved() {
    for n in [32, 40] {
        let jump = JumpData::new(-0.5, vec![0.0, 2.0]).unwrap();
        let (grid, out) = kink_run(n, 1.0, -0.5, jump.clone());
        for (state, &xi) in out.states.iter().zip(&out.xi_path) {
            if grid.node_index(xi).is_some() {
                continue;
            }
            let here = jump.moved_to(xi);
            let right = one_sided_derivative(&grid, state, &here, xi, 1, 1).unwrap();
            let left = one_sided_derivative(&grid, state, &here, xi, 1, -1).unwrap();
            assert!((right - left - 2.0).abs() <= 0.05 * 2.0, "N = {n}, xi = {xi}: {}", right - left);
        }
    }
}

/// Largest excursion of `u_x` beyond the exact range `[-1, 1]` within 0.3 of `xi`.
fn derivative_overshoot(grid: &Grid, state: &[f64], jump: Option<&JumpData>, xi: f64) -> f64 {
    (0..=600)
        .map(|k| xi - 0.3 + 0.001 * k as f64)
        .filter(|x| x.abs() < 1.0 && *x != xi)
        .map(|x| {
            let du = match jump {
                Some(j) => {
                    one_sided_derivative(grid, state, &j.moved_to(xi), x, 1, if x > xi { 1 } else { -1 }).unwrap()
                }
                None => fd_weights(grid.nodes(), x, 1).unwrap().iter().zip(state).map(|(w, u)| w * u).sum(),
            };
            du.abs() - 1.0
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

#[test]
fn disabling_corrections_shows_gibbs_oscillations() {
    let j1 = 2.0;
    let (grid, plain) = kink_run(32, 1.0, -0.5, JumpData::none(-0.5));
    let xi = *plain.xi_path.last().unwrap();
    let overshoot = derivative_overshoot(&grid, plain.final_state().unwrap(), None, xi);
    assert!(overshoot > 0.05 * j1, "{overshoot}");

    let jump = JumpData::new(-0.5, vec![0.0, j1]).unwrap();
    let (grid, corrected) = kink_run(32, 1.0, -0.5, jump.clone());
    let clean = derivative_overshoot(&grid, corrected.final_state().unwrap(), Some(&jump), xi);
    assert!(clean < 1e-10, "{clean}");
}

#[test]
fn leftward_transport_uses_the_right_boundary() {
    let (_, out) = kink_run(32, -1.0, 0.5, JumpData::new(0.5, vec![0.0, 2.0]).unwrap());
    assert!(out.final_error().unwrap() <= 1e-4);
    assert_eq!(*out.xi_path.last().unwrap(), -0.5);
}

#[test]
fn step_is_transported_exactly() {
    // a crossed node takes the value of the other piece, so a pure step is
    // carried without error
    let grid = Grid::chebyshev_gauss_lobatto(-1.0, 1.0, 32).unwrap();
    let d = DerivMatrix::pseudospectral(&grid, 1).unwrap();
    for (speed, xi0) in [(0.5, -0.3), (-0.5, 0.3)] {
        let step = move |x: f64| if x > xi0 { 1.0 } else { -0.5 };
        let jump = JumpData::new(xi0, vec![1.5]).unwrap();
        let p = AdvectionProblem::translating(grid.clone(), speed, Arc::new(step), jump, 0.8).unwrap();
        let out = evolve(&p, &d, 1e-3, 1000).unwrap();
        assert!(p.crossing_times().len() > 3);
        assert!(out.final_error().unwrap() < 1e-12, "{:?}", out.final_error());
    }
}
