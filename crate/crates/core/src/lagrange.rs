//! Lagrange basis polynomials and the classical interpolant, evaluated in
//! barycentric form.

use crate::error::{Error, Result};
use crate::grid::Grid;

/// Barycentric weights `lambda_j = 1 / prod_{k != j} (x_j - x_k)` of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BarycentricWeights {
    grid: Grid,
    lambda: Vec<f64>,
}

impl BarycentricWeights {
    pub fn new(grid: &Grid) -> Self {
        let x = grid.nodes();
        let lambda = x
            .iter()
            .enumerate()
            .map(|(j, &xj)| {
                let prod: f64 = x.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &xk)| xj - xk).product();
                1.0 / prod
            })
            .collect();
        Self { grid: grid.clone(), lambda }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn lambda(&self) -> &[f64] {
        &self.lambda
    }

    /// `pi_j(x)`. Returns exactly `1` or `0` when `x` is a node.
    pub fn basis(&self, j: usize, x: f64) -> Result<f64> {
        let len = self.lambda.len();
        if j >= len {
            return Err(Error::IndexOutOfRange { index: j, len });
        }
        if let Some(i) = self.grid.node_index(x) {
            return Ok(if i == j { 1.0 } else { 0.0 });
        }
        let x_nodes = self.grid.nodes();
        let denom: f64 = self.lambda.iter().zip(x_nodes).map(|(l, xk)| l / (x - xk)).sum();
        Ok(self.lambda[j] / (x - x_nodes[j]) / denom)
    }

    /// All basis values `pi_0(x) .. pi_N(x)` at once.
    pub fn basis_all(&self, x: f64) -> Vec<f64> {
        let len = self.lambda.len();
        if let Some(i) = self.grid.node_index(x) {
            let mut out = vec![0.0; len];
            out[i] = 1.0;
            return out;
        }
        let mut out: Vec<f64> = self.lambda.iter().zip(self.grid.nodes()).map(|(l, xk)| l / (x - xk)).collect();
        let denom: f64 = out.iter().sum();
        for v in &mut out {
            *v /= denom;
        }
        out
    }

    /// `p(x) = sum_j f_j pi_j(x)`.
    pub fn interpolate(&self, f: &[f64], x: f64) -> Result<f64> {
        check_len(self.lambda.len(), f.len())?;
        Ok(self.eval_unchecked(f, x))
    }

    /// Second barycentric formula; `f.len()` must already match.
    pub(crate) fn eval_unchecked(&self, f: &[f64], x: f64) -> f64 {
        if let Some(i) = self.grid.node_index(x) {
            return f[i];
        }
        let mut num = 0.0;
        let mut den = 0.0;
        for ((l, xk), fk) in self.lambda.iter().zip(self.grid.nodes()).zip(f) {
            let t = l / (x - xk);
            num += t * fk;
            den += t;
        }
        num / den
    }
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}
