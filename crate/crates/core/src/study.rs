//! Convergence studies: max-norm interpolation errors over `(N, M)` cells
//! and least-squares order fits.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::grid::{Grid, NodeFamily};
use crate::jumps::{CorrectedInterpolant, JumpData};
use crate::lagrange::BarycentricWeights;
use crate::par;
use crate::refproblems::RefProblem;

/// `count` equispaced points covering `[a, b]` inclusive.
pub fn probe_points(a: f64, b: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.5 * (a + b)],
        _ => {
            let h = (b - a) / (count - 1) as f64;
            let mut pts: Vec<f64> = (0..count).map(|i| a + i as f64 * h).collect();
            pts[count - 1] = b;
            pts
        }
    }
}

pub fn make_grid(family: NodeFamily, a: f64, b: f64, n: usize) -> Result<Grid> {
    match family {
        NodeFamily::Equidistant => Grid::equidistant(a, b, n),
        // custom grids are not generated from a size; CGL is the default
        NodeFamily::ChebyshevGaussLobatto | NodeFamily::Custom => Grid::chebyshev_gauss_lobatto(a, b, n),
    }
}

/// Values at one probe point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeSample {
    pub x: f64,
    pub exact: f64,
    pub approx: f64,
}

/// Evaluate the corrected interpolant (jumps up to order `m`; `-1` = plain
/// Lagrange) against the exact function at the probe points. The location
/// `xi` itself is replaced by its two one-sided limits.
pub fn sample_interpolant(problem: &RefProblem, grid: &Grid, m: isize, probes: &[f64]) -> Result<Vec<ProbeSample>> {
    let w = BarycentricWeights::new(grid);
    let f = grid.nodes().iter().map(|&x| problem.value(x)).collect::<Result<Vec<f64>>>()?;
    let jump = if m < 0 { JumpData::none(problem.xi()) } else { problem.jumps(m)? };
    let interp = CorrectedInterpolant::new(&w, &f, &[jump])?;
    let xi = problem.xi();
    let per_probe = par::map_slice(probes, |&x| -> Result<Vec<ProbeSample>> {
        if x == xi {
            Ok(vec![
                ProbeSample { x, exact: problem.branch(0, x, -1)?, approx: interp.eval_limit(x, -1) },
                ProbeSample { x, exact: problem.branch(0, x, 1)?, approx: interp.eval_limit(x, 1) },
            ])
        } else {
            Ok(vec![ProbeSample { x, exact: problem.value(x)?, approx: interp.eval(x) }])
        }
    });
    let mut out = Vec::with_capacity(probes.len() + 2);
    for v in per_probe {
        out.extend(v?);
    }
    Ok(out)
}

/// Max-norm error over `probes` equispaced points plus both limits at `xi`.
pub fn interpolation_error(problem: &RefProblem, grid: &Grid, m: isize, probes: usize) -> Result<f64> {
    let mut pts = probe_points(grid.a(), grid.b(), probes);
    let xi = problem.xi();
    if !pts.contains(&xi) {
        pts.push(xi);
    }
    Ok(sample_interpolant(problem, grid, m, &pts)?.iter().map(|s| (s.approx - s.exact).abs()).fold(0.0, f64::max))
}

/// Least-squares line `y = c0 + c1 x`; returns `(c0, c1, rms residual)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(u, v)| (u - mx) * (v - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let icpt = my - slope * mx;
    let rss: f64 = x.iter().zip(y).map(|(u, v)| (v - icpt - slope * u).powi(2)).sum();
    (icpt, slope, (rss / n).sqrt())
}

/// Fitted convergence behaviour of one `M` across a list of `N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderFit {
    pub m: isize,
    /// `-d log(err) / d log(N)`.
    pub algebraic_order: f64,
    pub algebraic_residual: f64,
    /// `-d log(err) / dN`.
    pub exponential_rate: f64,
    pub exponential_residual: f64,
    /// The exponential model fits better than the algebraic one.
    pub exponential_regime: bool,
    pub fitted_n: Vec<usize>,
}

/// Which part of the `(N, error)` list an order fit uses.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitWindow {
    /// The last half (at least two points); early points are often
    /// pre-asymptotic.
    #[default]
    LastHalf,
    All,
}

/// Least-squares fits of `log(err)` against `log(N)` and against `N`.
pub fn fit_orders(m: isize, ns: &[usize], errors: &[f64], window: FitWindow) -> Option<OrderFit> {
    let len = ns.len().min(errors.len());
    if len < 2 {
        return None;
    }
    let start = match window {
        FitWindow::LastHalf => len - len.div_ceil(2).max(2),
        FitWindow::All => 0,
    };
    let ns = &ns[start..len];
    let log_e: Vec<f64> = errors[start..len].iter().map(|e| e.max(f64::MIN_POSITIVE).ln()).collect();
    let log_n: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let lin_n: Vec<f64> = ns.iter().map(|&n| n as f64).collect();
    let (_, alg_slope, alg_res) = linear_fit(&log_n, &log_e);
    let (_, exp_slope, exp_res) = linear_fit(&lin_n, &log_e);
    Some(OrderFit {
        m,
        algebraic_order: -alg_slope,
        algebraic_residual: alg_res,
        exponential_rate: -exp_slope,
        exponential_residual: exp_res,
        exponential_regime: exp_res < alg_res,
        fitted_n: ns.to_vec(),
    })
}

/// Parameters of a convergence sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceStudy {
    pub problem: RefProblem,
    pub family: NodeFamily,
    pub a: f64,
    pub b: f64,
    pub n_values: Vec<usize>,
    pub m_values: Vec<isize>,
    #[serde(default = "default_probes")]
    pub probes: usize,
    #[serde(default)]
    pub fit_window: FitWindow,
}

fn default_probes() -> usize {
    1000
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: usize,
    pub m: isize,
    pub linf_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub problem: RefProblem,
    pub family: NodeFamily,
    pub a: f64,
    pub b: f64,
    pub probes: usize,
    pub rows: Vec<ConvergenceRow>,
    pub fits: Vec<OrderFit>,
}

impl ConvergenceReport {
    pub fn fit(&self, m: isize) -> Option<&OrderFit> {
        self.fits.iter().find(|f| f.m == m)
    }

    pub fn error(&self, n: usize, m: isize) -> Option<f64> {
        self.rows.iter().find(|r| r.n == n && r.m == m).map(|r| r.linf_error)
    }
}

impl ConvergenceStudy {
    /// Every `(N, M)` cell with `M <= N`, evaluated in parallel.
    pub fn run(&self) -> Result<ConvergenceReport> {
        let cells: Vec<(usize, isize)> = self
            .m_values
            .iter()
            .flat_map(|&m| self.n_values.iter().filter(move |&&n| m <= n as isize).map(move |&n| (n, m)))
            .collect();
        let errors = par::map_slice(&cells, |&(n, m)| {
            let grid = make_grid(self.family, self.a, self.b, n)?;
            interpolation_error(&self.problem, &grid, m, self.probes)
        });
        let mut rows = Vec::with_capacity(cells.len());
        for (&(n, m), e) in cells.iter().zip(errors) {
            rows.push(ConvergenceRow { n, m, linf_error: e? });
        }
        let fits = self
            .m_values
            .iter()
            .filter_map(|&m| {
                let (ns, es): (Vec<usize>, Vec<f64>) =
                    rows.iter().filter(|r| r.m == m).map(|r| (r.n, r.linf_error)).unzip();
                fit_orders(m, &ns, &es, self.fit_window)
            })
            .collect();
        Ok(ConvergenceReport {
            problem: self.problem.clone(),
            family: self.family,
            a: self.a,
            b: self.b,
            probes: self.probes,
            rows,
            fits,
        })
    }
}
