//! Method-of-lines evolution of `u_t + c u_x = 0` with a discontinuity
//! moving along the characteristic `xi(t) = xi_0 + c t`.
//!
//! The spatial derivative is the jump-corrected derivative matrix product,
//! with the correction weights recomputed at every Runge-Kutta stage from the
//! current `xi`. The jumps themselves are constant in time. Times at which
//! `xi` passes a node are known in advance; the integrator lands on each of
//! them and restarts, so no step ever straddles a node. At a crossing the
//! crossed node changes piece and its value is shifted by `-sign(c) J_0`;
//! for continuous data (`J_0 = 0`) nothing changes.
//!
//! RK4 with the Chebyshev pseudospectral first-derivative matrix is stable
//! roughly for `dt <= 2.8 / (|c| * rho)`, `rho` the spectral radius of the
//! matrix (about `0.05 N^2 * 2 / (b - a)`). This is not enforced.

use std::sync::Arc;

use crate::diffmat::DerivMatrix;
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::jumps::{corrected_derivative, JumpData};

/// A function of one variable shared across threads.
pub type Profile = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
/// A function of `(x, t)`.
pub type Field = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Linear advection on a grid with a known moving discontinuity.
#[derive(Clone)]
pub struct AdvectionProblem {
    pub grid: Grid,
    pub speed: f64,
    pub initial: Profile,
    /// Jumps at `xi_0`; an empty jump vector disables the correction.
    pub jump: JumpData,
    pub end_time: f64,
    /// Value imposed at the inflow node as a function of time.
    pub inflow: Profile,
    pub exact: Option<Field>,
}

impl std::fmt::Debug for AdvectionProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AdvectionProblem")
            .field("grid", &self.grid)
            .field("speed", &self.speed)
            .field("jump", &self.jump)
            .field("end_time", &self.end_time)
            .finish_non_exhaustive()
    }
}

impl AdvectionProblem {
    /// Pure translation `u(x, t) = u_0(x - c t)`; inflow data and the exact
    /// solution are both taken from the translated profile.
    pub fn translating(grid: Grid, speed: f64, initial: Profile, jump: JumpData, end_time: f64) -> Result<Self> {
        let exact: Field = {
            let u0 = initial.clone();
            Arc::new(move |x, t| u0(x - speed * t))
        };
        let inflow: Profile = {
            let u = exact.clone();
            let x_in = if speed >= 0.0 { grid.a() } else { grid.b() };
            Arc::new(move |t| u(x_in, t))
        };
        let p = Self { grid, speed, initial, jump, end_time, inflow, exact: Some(exact) };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b) = (self.grid.a(), self.grid.b());
        if self.end_time.is_nan() || self.end_time < 0.0 || !self.speed.is_finite() {
            return Err(Error::InvalidTimeStep(self.end_time));
        }
        for t in [0.0, self.end_time] {
            let xi = self.xi_at(t);
            if !(xi > a && xi < b) {
                return Err(Error::PathLeavesInterval(t));
            }
        }
        if self.corrected() {
            if let Some(index) = self.grid.node_index(self.jump.xi()) {
                return Err(Error::XiOnNode { xi: self.jump.xi(), index });
            }
        }
        Ok(())
    }

    pub fn xi_at(&self, t: f64) -> f64 {
        self.jump.xi() + self.speed * t
    }

    fn corrected(&self) -> bool {
        !self.jump.jumps().is_empty()
    }

    fn inflow_node(&self) -> Option<usize> {
        if self.speed > 0.0 {
            Some(0)
        } else if self.speed < 0.0 {
            Some(self.grid.degree())
        } else {
            None
        }
    }

    /// Times in `(0, T)` at which `xi(t)` equals a node, ascending.
    pub fn crossing_times(&self) -> Vec<f64> {
        self.crossings().into_iter().map(|(t, _)| t).collect()
    }

    /// `(time, node)` of every crossing in `(0, T)`, ascending in time.
    fn crossings(&self) -> Vec<(f64, usize)> {
        if self.speed == 0.0 || !self.corrected() {
            return Vec::new();
        }
        let mut events: Vec<(f64, usize)> = self
            .grid
            .nodes()
            .iter()
            .enumerate()
            .map(|(k, &x)| ((x - self.jump.xi()) / self.speed, k))
            .filter(|&(t, _)| t > 0.0 && t < self.end_time)
            .collect();
        events.sort_by(|p, q| p.0.total_cmp(&q.0));
        events
    }

    fn initial_state(&self) -> Vec<f64> {
        self.grid.nodes().iter().map(|&x| (self.initial)(x)).collect()
    }
}

/// `-c * D_corrected u` with the discontinuity at `xi(t)`.
pub fn rhs(state: &[f64], t: f64, problem: &AdvectionProblem, d: &DerivMatrix) -> Result<Vec<f64>> {
    rhs_at(state, problem.xi_at(t), problem, d)
}

fn rhs_at(state: &[f64], xi: f64, problem: &AdvectionProblem, d: &DerivMatrix) -> Result<Vec<f64>> {
    let du =
        if problem.corrected() { corrected_derivative(d, state, &problem.jump.moved_to(xi))? } else { d.apply(state)? };
    Ok(du.into_iter().map(|v| -problem.speed * v).collect())
}

/// Nodes bracketing `xi` (indices into the grid); `xi` must not be a node.
fn bracket(grid: &Grid, xi: f64) -> (usize, usize) {
    let k = grid.nodes().partition_point(|&v| v < xi);
    (k.saturating_sub(1), k.min(grid.degree()))
}

/// Tolerance for treating a computed `xi` as sitting on a node.
fn landing_tolerance(grid: &Grid) -> f64 {
    1e-13 * (grid.b() - grid.a())
}

/// One classical RK4 step. The stage discontinuity positions are kept on
/// the side of every node that the step's midpoint position is on, so a
/// step that starts or ends exactly at a crossing time is well defined.
pub fn rk4_step(state: &[f64], t: f64, dt: f64, problem: &AdvectionProblem, d: &DerivMatrix) -> Result<Vec<f64>> {
    let stage = |u: &[f64], ts: f64, xi_of: &dyn Fn(f64) -> f64| rhs_at(u, xi_of(ts), problem, d);
    if !problem.corrected() || problem.speed == 0.0 {
        return rk4_combine(state, t, dt, |u: &[f64], ts| stage(u, ts, &|s| problem.xi_at(s)));
    }
    let grid = &problem.grid;
    let x = grid.nodes();
    let (lo, hi) = bracket(grid, problem.xi_at(t + 0.5 * dt));
    let tol = landing_tolerance(grid);
    for xi in [problem.xi_at(t), problem.xi_at(t + dt)] {
        if xi < x[lo] - tol || xi > x[hi] + tol {
            return Err(Error::CrossingWithinStep(t));
        }
    }
    let clamp = |ts: f64| {
        let xi = problem.xi_at(ts);
        if xi <= x[lo] {
            x[lo].next_up()
        } else if xi >= x[hi] {
            x[hi].next_down()
        } else {
            xi
        }
    };
    rk4_combine(state, t, dt, |u: &[f64], ts| stage(u, ts, &clamp))
}

fn rk4_combine(state: &[f64], t: f64, dt: f64, f: impl Fn(&[f64], f64) -> Result<Vec<f64>>) -> Result<Vec<f64>> {
    let axpy = |k: &[f64], h: f64| -> Vec<f64> { state.iter().zip(k).map(|(u, k)| u + h * k).collect() };
    let k1 = f(state, t)?;
    let k2 = f(&axpy(&k1, 0.5 * dt), t + 0.5 * dt)?;
    let k3 = f(&axpy(&k2, 0.5 * dt), t + 0.5 * dt)?;
    let k4 = f(&axpy(&k3, dt), t + dt)?;
    Ok((0..state.len()).map(|i| state[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])).collect())
}

/// One recorded output time.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub state: Vec<f64>,
    pub xi: f64,
    /// Max nodal error against the exact solution, when one is known.
    pub error_linf: Option<f64>,
}

/// Recorded outputs of an evolution.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EvolutionResult {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub xi_path: Vec<f64>,
    pub error_linf: Vec<f64>,
}

impl EvolutionResult {
    pub fn final_error(&self) -> Option<f64> {
        self.error_linf.last().copied()
    }

    pub fn final_state(&self) -> Option<&[f64]> {
        self.states.last().map(Vec::as_slice)
    }
}

fn snapshot(problem: &AdvectionProblem, t: f64, state: &[f64]) -> Snapshot {
    let error_linf = problem
        .exact
        .as_ref()
        .map(|u| problem.grid.nodes().iter().zip(state).map(|(&x, v)| (v - u(x, t)).abs()).fold(0.0, f64::max));
    Snapshot { t, state: state.to_vec(), xi: problem.xi_at(t), error_linf }
}

/// Integrate from `0` to `T` with steps no longer than `dt`, recording every
/// `output_every` steps (plus the initial and final states).
pub fn evolve(problem: &AdvectionProblem, d: &DerivMatrix, dt: f64, output_every: usize) -> Result<EvolutionResult> {
    let mut out = EvolutionResult::default();
    evolve_with(problem, d, dt, output_every, |s| {
        out.times.push(s.t);
        out.xi_path.push(s.xi);
        if let Some(e) = s.error_linf {
            out.error_linf.push(e);
        }
        out.states.push(s.state);
    })?;
    Ok(out)
}

/// Like [`evolve`], handing each snapshot to `sink` as it is produced.
pub fn evolve_with(
    problem: &AdvectionProblem,
    d: &DerivMatrix,
    dt: f64,
    output_every: usize,
    mut sink: impl FnMut(Snapshot),
) -> Result<()> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidTimeStep(dt));
    }
    problem.validate()?;
    let every = output_every.max(1);
    let mut state = problem.initial_state();
    sink(snapshot(problem, 0.0, &state));

    let crossings = problem.crossings();
    let mut bounds = vec![0.0];
    bounds.extend(crossings.iter().map(|&(t, _)| t));
    bounds.push(problem.end_time);
    // a crossed node moves to the other piece, so its value jumps by J_0
    let j0 = problem.jump.jumps().first().copied().unwrap_or(0.0);

    let inflow = problem.inflow_node();
    let mut step = 0usize;
    let mut t = 0.0;
    for (seg_index, seg) in bounds.windows(2).enumerate() {
        let (t0, t1) = (seg[0], seg[1]);
        if t1 <= t0 {
            continue;
        }
        let substeps = ((t1 - t0) / dt * (1.0 - 1e-12)).ceil().max(1.0) as usize;
        let h = (t1 - t0) / substeps as f64;
        for k in 0..substeps {
            let t_start = t0 + k as f64 * h;
            let t_end = if k + 1 == substeps { t1 } else { t0 + (k + 1) as f64 * h };
            state = rk4_step(&state, t_start, t_end - t_start, problem, d)?;
            if let Some(i) = inflow {
                state[i] = (problem.inflow)(t_end);
            }
            if let Some(node) = state.iter().position(|v| !v.is_finite()) {
                return Err(Error::BlowUp { t: t_end, node });
            }
            step += 1;
            t = t_end;
            if k + 1 == substeps && j0 != 0.0 {
                if let Some(&(_, node)) = crossings.get(seg_index) {
                    state[node] -= problem.speed.signum() * j0;
                }
            }
            if step.is_multiple_of(every) && t < problem.end_time {
                sink(snapshot(problem, t, &state));
            }
        }
    }
    sink(snapshot(problem, t, &state));
    Ok(())
}
