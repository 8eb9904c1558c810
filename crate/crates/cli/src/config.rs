//! Experiment configurations. One JSON document per run; unknown fields are
//! rejected so a misspelt key fails loudly instead of silently using a default.

use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use jumpspec::study::FitWindow;
use jumpspec::{Grid, LegendreProblem, NodeFamily, RefProblem};
use serde::{Deserialize, Serialize};

/// Node set for a single-grid command.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub family: NodeFamily,
    /// Interval ends; default to the problem's natural domain.
    pub a: Option<f64>,
    pub b: Option<f64>,
    /// Polynomial degree; ignored for `custom`.
    pub n: Option<usize>,
    /// Explicit nodes, only for `custom`.
    pub nodes: Option<Vec<f64>>,
}

impl GridSpec {
    pub fn build(&self, problem: &RefProblem) -> Result<Grid> {
        let (a, b) = interval(problem, self.a, self.b);
        let grid = match (self.family, &self.nodes, self.n) {
            (NodeFamily::Custom, Some(nodes), _) => Grid::custom(a, b, nodes.clone())?,
            (NodeFamily::Custom, None, _) => bail!("grid family `custom` needs `nodes`"),
            (_, Some(_), _) => bail!("`nodes` is only accepted with family `custom`"),
            (_, None, None) => bail!("grid needs `n`"),
            (family, None, Some(n)) => jumpspec::study::make_grid(family, a, b, n)?,
        };
        Ok(grid)
    }
}

/// `[a, b]` with missing ends taken from the problem: the Legendre default
/// domain, or `[-1, 1]` for synthetic problems.
pub fn interval(problem: &RefProblem, a: Option<f64>, b: Option<f64>) -> (f64, f64) {
    let (da, db) = match problem {
        RefProblem::Legendre(_) => LegendreProblem::DEFAULT_DOMAIN,
        RefProblem::Synthetic(_) => (-1.0, 1.0),
    };
    (a.unwrap_or(da), b.unwrap_or(db))
}

/// A bound on one of the scalars a command reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assertion {
    pub metric: String,
    pub min: Option<f64>,
    pub max: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpConfig {
    pub problem: RefProblem,
    pub grid: GridSpec,
    /// Jump orders to tabulate; `-1` is plain Lagrange and is always included.
    /// Defaults to `[floor(N/2)]`.
    #[serde(default)]
    pub m_values: Vec<isize>,
    #[serde(default = "default_probes")]
    pub probes: usize,
    #[serde(default)]
    pub assertions: Vec<Assertion>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergeConfig {
    pub problem: RefProblem,
    pub family: NodeFamily,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub n_values: Vec<usize>,
    pub m_values: Vec<isize>,
    #[serde(default = "default_probes")]
    pub probes: usize,
    #[serde(default)]
    pub fit_window: FitWindow,
    #[serde(default)]
    pub assertions: Vec<Assertion>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiffConfig {
    pub problem: RefProblem,
    pub grid: GridSpec,
    /// Derivative order.
    #[serde(default = "one")]
    pub deriv: usize,
    /// Difference order (stencil width minus one); defaults to `N`.
    pub difference_order: Option<usize>,
    /// Highest jump order used; defaults to `floor(N/2)`.
    pub m: Option<isize>,
    #[serde(default = "yes")]
    pub negative_sum: bool,
    #[serde(default)]
    pub assertions: Vec<Assertion>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadConfig {
    pub problem: RefProblem,
    pub family: NodeFamily,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub n_values: Vec<usize>,
    /// Highest jump order used; defaults to `floor(N/2)` for each N.
    pub m: Option<isize>,
    #[serde(default)]
    pub assertions: Vec<Assertion>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveConfig {
    /// Initial profile; its discontinuity is advected with the flow.
    pub problem: RefProblem,
    pub grid: GridSpec,
    pub speed: f64,
    pub end_time: f64,
    pub dt: f64,
    #[serde(default = "one")]
    pub output_every: usize,
    /// Highest jump order carried; `-1` switches the correction off.
    /// Defaults to `floor(N/2)`.
    pub m: Option<isize>,
    /// Difference order of the derivative matrix; defaults to `N`.
    pub difference_order: Option<usize>,
    #[serde(default)]
    pub assertions: Vec<Assertion>,
}

fn default_probes() -> usize {
    1000
}

fn one() -> usize {
    1
}

fn yes() -> bool {
    true
}

pub fn default_m(n: usize) -> isize {
    (n / 2) as isize
}

pub fn load<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
}

/// Checks a family generated from `n_values`; custom nodes have no size to vary.
pub fn check_sweep(family: NodeFamily, ns: &[usize]) -> Result<()> {
    ensure!(family != NodeFamily::Custom, "a sweep over `n_values` needs a generated family, not `custom`");
    ensure!(!ns.is_empty(), "`n_values` is empty");
    ensure!(ns.iter().all(|&n| n >= 1), "every N in `n_values` must be >= 1");
    Ok(())
}
