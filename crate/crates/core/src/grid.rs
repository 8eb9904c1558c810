//! Collocation grids on a closed interval.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the nodes of a [`Grid`] were generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeFamily {
    Equidistant,
    ChebyshevGaussLobatto,
    Custom,
}

/// Ordered, distinct nodes `x_0 < ... < x_N` inside `[a, b]`, with `N >= 1`.
///
/// Grids are immutable once built. Every constructor validates the node
/// ordering, so downstream code can compare against stored node values with
/// exact floating-point equality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GridRepr")]
pub struct Grid {
    a: f64,
    b: f64,
    family: NodeFamily,
    nodes: Vec<f64>,
}

#[derive(Deserialize)]
struct GridRepr {
    a: f64,
    b: f64,
    family: NodeFamily,
    nodes: Vec<f64>,
}

impl TryFrom<GridRepr> for Grid {
    type Error = Error;

    fn try_from(r: GridRepr) -> Result<Self> {
        Grid::with_family(r.a, r.b, r.nodes, r.family)
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if a.is_finite() && b.is_finite() && a < b {
        Ok(())
    } else {
        Err(Error::InvalidInterval { a, b })
    }
}

impl Grid {
    /// `x_i = a + i (b - a) / N`.
    pub fn equidistant(a: f64, b: f64, n: usize) -> Result<Self> {
        check_interval(a, b)?;
        if n < 1 {
            return Err(Error::InvalidSize(n));
        }
        let h = (b - a) / n as f64;
        let mut nodes: Vec<f64> = (0..=n).map(|i| a + i as f64 * h).collect();
        nodes[n] = b;
        Ok(Self { a, b, family: NodeFamily::Equidistant, nodes })
    }

    /// Chebyshev-Gauss-Lobatto nodes (extrema of `T_N`) mapped to `[a, b]`,
    /// sorted ascending.
    ///
    /// Uses the sine form `mid + half * sin(pi (2i - N) / 2N)`, which equals
    /// `mid - half * cos(i pi / N)` but is exactly antisymmetric about the
    /// midpoint. The endpoints are assigned `a` and `b` verbatim.
    pub fn chebyshev_gauss_lobatto(a: f64, b: f64, n: usize) -> Result<Self> {
        check_interval(a, b)?;
        if n < 1 {
            return Err(Error::InvalidSize(n));
        }
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let denom = 2.0 * n as f64;
        let mut nodes: Vec<f64> = (0..=n)
            .map(|i| {
                let k = 2.0 * i as f64 - n as f64;
                mid + half * (PI * k / denom).sin()
            })
            .collect();
        nodes[0] = a;
        nodes[n] = b;
        Ok(Self { a, b, family: NodeFamily::ChebyshevGaussLobatto, nodes })
    }

    /// A user-supplied node set, validated against the grid invariants.
    pub fn custom(a: f64, b: f64, nodes: Vec<f64>) -> Result<Self> {
        Self::with_family(a, b, nodes, NodeFamily::Custom)
    }

    fn with_family(a: f64, b: f64, nodes: Vec<f64>, family: NodeFamily) -> Result<Self> {
        check_interval(a, b)?;
        if nodes.len() < 2 {
            return Err(Error::InvalidSize(nodes.len().saturating_sub(1)));
        }
        for (i, &x) in nodes.iter().enumerate() {
            let ordered = i == 0 || nodes[i - 1] < x;
            if !x.is_finite() || x < a || x > b || !ordered {
                return Err(Error::InvalidNodes(i));
            }
        }
        Ok(Self { a, b, family, nodes })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn family(&self) -> NodeFamily {
        self.family
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Number of nodes, `N + 1`.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Always false; a grid has at least two nodes.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Polynomial degree `N` of the global interpolant.
    pub fn degree(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Index of the node exactly equal to `x`, if any.
    pub fn node_index(&self, x: f64) -> Option<usize> {
        self.nodes.binary_search_by(|v| v.total_cmp(&x)).ok()
    }

    /// Largest node spacing.
    pub fn max_spacing(&self) -> f64 {
        self.nodes.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    /// Width of the grid cell containing `x` (clamped to the end cells).
    pub fn local_spacing(&self, x: f64) -> f64 {
        let k = self.nodes.partition_point(|&v| v <= x).clamp(1, self.degree());
        self.nodes[k] - self.nodes[k - 1]
    }
}
