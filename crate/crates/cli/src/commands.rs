//! The five experiments. Each writes `result.csv` and `report.json` into the
//! output directory and returns whether every configured assertion held.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, ensure, Result};
use jumpspec::jumps::{corrected_derivative, corrected_integrate};
use jumpspec::mol::{evolve_with, AdvectionProblem};
use jumpspec::study::{make_grid, probe_points, sample_interpolant, ConvergenceStudy};
use jumpspec::{par, BarycentricWeights, DerivMatrix, DiffOptions, Grid, JumpData, QuadRule, RefProblem};
use serde::Serialize;

use crate::config::{self, default_m, ConvergeConfig, DiffConfig, EvolveConfig, InterpConfig, QuadConfig};
use crate::output::{max_abs, Cell, Csv, Report};

const CSV: &str = "result.csv";
const JSON: &str = "report.json";

fn samples(problem: &RefProblem, grid: &Grid) -> Result<Vec<f64>> {
    Ok(grid.nodes().iter().map(|&x| problem.value(x)).collect::<jumpspec::Result<_>>()?)
}

fn jumps_up_to(problem: &RefProblem, m: isize) -> Result<JumpData> {
    ensure!(m >= -1, "jump order M = {m} is below -1");
    Ok(if m < 0 { JumpData::none(problem.xi()) } else { problem.jumps(m)? })
}

#[derive(Serialize)]
struct InterpDetails {
    grid: Grid,
    xi: f64,
    m_values: Vec<isize>,
    probes: usize,
}

pub fn interp(cfg: &InterpConfig, out: &Path) -> Result<bool> {
    let grid = cfg.grid.build(&cfg.problem)?;
    let n = grid.degree();
    let mut ms: Vec<isize> = if cfg.m_values.is_empty() { vec![default_m(n)] } else { cfg.m_values.clone() };
    ms.retain(|&m| m >= 0);
    ms.sort_unstable();
    ms.dedup();
    for &m in &ms {
        ensure!(m as usize <= n, "jump order M = {m} exceeds N = {n}");
    }
    ensure!(cfg.probes >= 2, "`probes` must be at least 2");

    let xi = cfg.problem.xi();
    let mut pts = probe_points(grid.a(), grid.b(), cfg.probes);
    if let Err(k) = pts.binary_search_by(|p| p.total_cmp(&xi)) {
        if xi > grid.a() && xi < grid.b() {
            pts.insert(k, xi);
        }
    }
    let plain = sample_interpolant(&cfg.problem, &grid, -1, &pts)?;
    let corrected =
        ms.iter().map(|&m| sample_interpolant(&cfg.problem, &grid, m, &pts)).collect::<jumpspec::Result<Vec<_>>>()?;

    let mut header = vec!["x".to_string(), "f_exact".into(), "p_lagrange".into()];
    header.extend(ms.iter().map(|m| format!("p_corrected_m{m}")));
    header.push("err_lagrange".into());
    header.extend(ms.iter().map(|m| format!("err_corrected_m{m}")));
    let mut csv = Csv::create(&out.join(CSV), &header)?;
    for (row, s) in plain.iter().enumerate() {
        let mut cells: Vec<Cell> = vec![s.x.into(), s.exact.into(), s.approx.into()];
        cells.extend(corrected.iter().map(|c| c[row].approx.into()));
        cells.push((s.approx - s.exact).into());
        cells.extend(corrected.iter().map(|c| (c[row].approx - c[row].exact).into()));
        csv.row(&cells)?;
    }
    csv.finish()?;

    let mut metrics = BTreeMap::new();
    metrics.insert("linf_lagrange".to_string(), max_abs(plain.iter().map(|s| s.approx - s.exact)));
    for (m, c) in ms.iter().zip(&corrected) {
        metrics.insert(format!("linf_m{m}"), max_abs(c.iter().map(|s| s.approx - s.exact)));
    }
    let details = InterpDetails { grid, xi, m_values: ms, probes: cfg.probes };
    finish(Report::new("interp", metrics, &cfg.assertions, details), out)
}

pub fn converge(cfg: &ConvergeConfig, out: &Path) -> Result<bool> {
    config::check_sweep(cfg.family, &cfg.n_values)?;
    ensure!(!cfg.m_values.is_empty(), "`m_values` is empty");
    ensure!(cfg.m_values.iter().all(|&m| m >= -1), "jump orders must be >= -1");
    let (a, b) = config::interval(&cfg.problem, cfg.a, cfg.b);
    let study = ConvergenceStudy {
        problem: cfg.problem.clone(),
        family: cfg.family,
        a,
        b,
        n_values: cfg.n_values.clone(),
        m_values: cfg.m_values.clone(),
        probes: cfg.probes,
        fit_window: cfg.fit_window,
    };
    let report = study.run()?;

    let mut csv = Csv::create(&out.join(CSV), &["n".into(), "m".into(), "linf_error".into()])?;
    for r in &report.rows {
        csv.row(&[r.n.into(), r.m.into(), r.linf_error.into()])?;
    }
    csv.finish()?;

    let mut metrics = BTreeMap::new();
    for fit in &report.fits {
        metrics.insert(format!("order_m{}", fit.m), fit.algebraic_order);
        metrics.insert(format!("exp_rate_m{}", fit.m), fit.exponential_rate);
        metrics.insert(format!("exponential_regime_m{}", fit.m), if fit.exponential_regime { 1.0 } else { 0.0 });
    }
    for &m in &cfg.m_values {
        if let Some(last) = report.rows.iter().filter(|r| r.m == m).max_by_key(|r| r.n) {
            metrics.insert(format!("linf_m{m}"), last.linf_error);
        }
    }
    finish(Report::new("converge", metrics, &cfg.assertions, report), out)
}

#[derive(Serialize)]
struct DiffDetails {
    grid: Grid,
    deriv: usize,
    difference_order: usize,
    negative_sum: bool,
    jumps: JumpData,
}

pub fn diff(cfg: &DiffConfig, out: &Path) -> Result<bool> {
    let grid = cfg.grid.build(&cfg.problem)?;
    let n = grid.degree();
    let order = cfg.difference_order.unwrap_or(n);
    let d = DerivMatrix::with_options(&grid, cfg.deriv, order, DiffOptions { negative_sum: cfg.negative_sum })?;
    let jump = jumps_up_to(&cfg.problem, cfg.m.unwrap_or(default_m(n)))?;
    let f = samples(&cfg.problem, &grid)?;
    let plain = d.apply(&f)?;
    let corrected = corrected_derivative(&d, &f, &jump)?;
    let exact =
        grid.nodes().iter().map(|&x| cfg.problem.derivative(cfg.deriv, x)).collect::<jumpspec::Result<Vec<f64>>>()?;

    let header = ["x", "exact", "plain", "corrected", "err_plain", "err_corrected"].map(String::from);
    let mut csv = Csv::create(&out.join(CSV), &header)?;
    for (i, &x) in grid.nodes().iter().enumerate() {
        let (e, p, c) = (exact[i], plain[i], corrected[i]);
        csv.row(&[x.into(), e.into(), p.into(), c.into(), (p - e).into(), (c - e).into()])?;
    }
    csv.finish()?;

    let mut metrics = BTreeMap::new();
    metrics.insert("linf_plain".to_string(), max_abs(plain.iter().zip(&exact).map(|(p, e)| p - e)));
    metrics.insert("linf_corrected".to_string(), max_abs(corrected.iter().zip(&exact).map(|(c, e)| c - e)));
    let details =
        DiffDetails { grid, deriv: cfg.deriv, difference_order: order, negative_sum: cfg.negative_sum, jumps: jump };
    finish(Report::new("diff", metrics, &cfg.assertions, details), out)
}

#[derive(Serialize)]
struct QuadRow {
    n: usize,
    m: isize,
    exact: f64,
    plain: f64,
    corrected: f64,
}

pub fn quad(cfg: &QuadConfig, out: &Path) -> Result<bool> {
    config::check_sweep(cfg.family, &cfg.n_values)?;
    let (a, b) = config::interval(&cfg.problem, cfg.a, cfg.b);
    let exact = cfg.problem.integral(a, b)?;
    let rows = par::map_slice(&cfg.n_values, |&n| -> Result<QuadRow> {
        let grid = make_grid(cfg.family, a, b, n)?;
        let m = cfg.m.unwrap_or(default_m(n));
        let w = BarycentricWeights::new(&grid);
        let rule = QuadRule::from_barycentric(&w);
        let f = samples(&cfg.problem, &grid)?;
        let plain = rule.integrate(&f)?;
        let corrected = corrected_integrate(&rule, &w, &f, &jumps_up_to(&cfg.problem, m)?)?;
        Ok(QuadRow { n, m, exact, plain, corrected })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let header = ["n", "m", "exact", "plain", "corrected", "err_plain", "err_corrected"].map(String::from);
    let mut csv = Csv::create(&out.join(CSV), &header)?;
    for r in &rows {
        csv.row(&[
            r.n.into(),
            r.m.into(),
            r.exact.into(),
            r.plain.into(),
            r.corrected.into(),
            (r.plain - r.exact).into(),
            (r.corrected - r.exact).into(),
        ])?;
    }
    csv.finish()?;

    let mut metrics = BTreeMap::new();
    metrics.insert("max_err_plain".to_string(), max_abs(rows.iter().map(|r| r.plain - r.exact)));
    metrics.insert("max_err_corrected".to_string(), max_abs(rows.iter().map(|r| r.corrected - r.exact)));
    finish(Report::new("quad", metrics, &cfg.assertions, rows), out)
}

#[derive(Serialize)]
struct EvolveDetails {
    grid: Grid,
    speed: f64,
    end_time: f64,
    jumps: JumpData,
    crossing_times: Vec<f64>,
    snapshots: usize,
}

pub fn evolve(cfg: &EvolveConfig, out: &Path) -> Result<bool> {
    let grid = cfg.grid.build(&cfg.problem)?;
    let n = grid.degree();
    let d = DerivMatrix::new(&grid, 1, cfg.difference_order.unwrap_or(n))?;
    let jump = jumps_up_to(&cfg.problem, cfg.m.unwrap_or(default_m(n)))?;
    let initial = {
        let p = cfg.problem.clone();
        // outside the problem's domain the exact solution is undefined
        Arc::new(move |x: f64| p.value(x).unwrap_or(f64::NAN))
    };
    let problem = AdvectionProblem::translating(grid.clone(), cfg.speed, initial, jump.clone(), cfg.end_time)?;

    let mut header = vec!["t".to_string()];
    header.extend((0..=n).map(|i| format!("u{i}")));
    header.extend(["xi".to_string(), "linf_error".to_string()]);
    let mut csv = Csv::create(&out.join(CSV), &header)?;
    let mut written: Result<()> = Ok(());
    let mut errors = Vec::new();
    evolve_with(&problem, &d, cfg.dt, cfg.output_every, |s| {
        if written.is_err() {
            return;
        }
        let err = s.error_linf.unwrap_or(f64::NAN);
        errors.push(err);
        let mut cells: Vec<Cell> = vec![s.t.into()];
        cells.extend(s.state.iter().map(|&u| u.into()));
        cells.extend([s.xi.into(), err.into()]);
        written = csv.row(&cells);
    })?;
    written?;
    csv.finish()?;
    if errors.is_empty() {
        bail!("evolution produced no output");
    }

    let mut metrics = BTreeMap::new();
    metrics.insert("final_error".to_string(), *errors.last().unwrap());
    metrics.insert("max_error".to_string(), max_abs(errors.iter().copied()));
    let details = EvolveDetails {
        grid,
        speed: cfg.speed,
        end_time: cfg.end_time,
        jumps: jump,
        crossing_times: problem.crossing_times(),
        snapshots: errors.len(),
    };
    finish(Report::new("evolve", metrics, &cfg.assertions, details), out)
}

fn finish<D: Serialize>(report: Report<D>, out: &Path) -> Result<bool> {
    report.write(&out.join(JSON))?;
    for a in report.assertions.iter().filter(|a| !a.passed) {
        eprintln!(
            "assertion failed: {} = {} (min {:?}, max {:?})",
            a.metric,
            a.value.map_or("missing".to_string(), |v| format!("{v:e}")),
            a.min,
            a.max
        );
    }
    Ok(report.passed)
}
