//! Finite-difference and pseudospectral derivative matrices.
//!
//! Every weight comes from Fornberg's recursion: a composite matrix
//! (difference order `m < N`) builds each row from an `(m+1)`-point stencil,
//! the pseudospectral matrix (`m = N`) uses the whole grid for every row.

use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::lagrange::check_len;
use crate::par;

/// Weights `c_j` with `sum_j c_j f(nodes[j]) = p^(n)(x0)` for the interpolant
/// `p` of the given nodes, i.e. `c_j = pi_j^(n)(x0)`.
pub fn fd_weights(nodes: &[f64], x0: f64, n: usize) -> Result<Vec<f64>> {
    let mut table = fd_weight_table(nodes, x0, n)?;
    Ok(table.swap_remove(n))
}

/// Fornberg weights for every derivative order `0..=max_order`;
/// `table[k][j]` is the weight of `nodes[j]` for the `k`-th derivative.
pub fn fd_weight_table(nodes: &[f64], x0: f64, max_order: usize) -> Result<Vec<Vec<f64>>> {
    let len = nodes.len();
    if max_order >= len {
        return Err(Error::OrderTooHigh { order: max_order, points: len });
    }
    let mut c = vec![vec![0.0; len]; max_order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..len {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    Ok(c)
}

/// First index of the `(m+1)`-point stencil for row `i` on a grid of `len`
/// nodes. Centred where possible, shifted inward at the boundary; even-sized
/// windows (odd `m`) lean left.
pub fn stencil_start(i: usize, m: usize, len: usize) -> usize {
    i.saturating_sub(m.div_ceil(2)).min(len - 1 - m)
}

/// Construction options for [`DerivMatrix`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiffOptions {
    /// Replace each diagonal by minus its off-diagonal row sum.
    pub negative_sum: bool,
}

impl Default for DiffOptions {
    fn default() -> Self {
        Self { negative_sum: true }
    }
}

/// Dense `(N+1) x (N+1)` derivative matrix `D^(n)` at difference order `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivMatrix {
    grid: Grid,
    deriv: usize,
    order: usize,
    entries: Vec<f64>,
    /// Half-open column range holding row `i`'s stencil.
    bands: Vec<(usize, usize)>,
    negative_sum: bool,
}

impl DerivMatrix {
    /// `n`-th derivative matrix with difference order `m` and the
    /// negative-sum trick applied.
    pub fn new(grid: &Grid, n: usize, m: usize) -> Result<Self> {
        Self::with_options(grid, n, m, DiffOptions::default())
    }

    /// Global (single-domain) matrix, `m = N`.
    pub fn pseudospectral(grid: &Grid, n: usize) -> Result<Self> {
        Self::new(grid, n, grid.degree())
    }

    pub fn with_options(grid: &Grid, n: usize, m: usize, opts: DiffOptions) -> Result<Self> {
        let len = grid.len();
        let size = grid.degree();
        if m < 1 || n > m || m > size {
            return Err(Error::InvalidOrder { n, m, size });
        }
        let x = grid.nodes();
        let rows: Vec<(usize, Vec<f64>)> = par::map_range(len, |i| {
            let lo = stencil_start(i, m, len);
            let w = fd_weights(&x[lo..=lo + m], x[i], n).expect("stencil has m + 1 >= n + 1 points");
            (lo, w)
        });
        let mut entries = vec![0.0; len * len];
        let mut bands = Vec::with_capacity(len);
        for (i, (lo, w)) in rows.into_iter().enumerate() {
            entries[i * len + lo..i * len + lo + w.len()].copy_from_slice(&w);
            bands.push((lo, lo + w.len()));
        }
        let mut d = Self { grid: grid.clone(), deriv: n, order: m, entries, bands, negative_sum: false };
        if n == 0 {
            // exact identity, independent of rounding in the recursion
            d.bands = (0..len).map(|i| (i, i + 1)).collect();
            d.entries.iter_mut().for_each(|v| *v = 0.0);
            (0..len).for_each(|i| d.entries[i * len + i] = 1.0);
        } else if opts.negative_sum {
            d = d.negative_sum_trick();
        }
        Ok(d)
    }

    /// Set each diagonal entry to minus the sum of the off-diagonal entries
    /// of its row (summed in order of increasing magnitude). Matrices with
    /// `n = 0` are returned unchanged.
    pub fn negative_sum_trick(mut self) -> Self {
        if self.deriv == 0 {
            return self;
        }
        let len = self.len();
        for i in 0..len {
            let (lo, hi) = self.bands[i];
            let mut off: Vec<f64> = (lo..hi).filter(|&j| j != i).map(|j| self.entries[i * len + j]).collect();
            off.sort_by(|p, q| p.abs().total_cmp(&q.abs()));
            self.entries[i * len + i] = -off.iter().sum::<f64>();
        }
        self.negative_sum = true;
        self
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Derivative order `n`.
    pub fn deriv_order(&self) -> usize {
        self.deriv
    }

    /// Difference order `m`.
    pub fn difference_order(&self) -> usize {
        self.order
    }

    pub fn has_negative_sum(&self) -> bool {
        self.negative_sum
    }

    /// Matrix dimension, `N + 1`.
    pub fn len(&self) -> usize {
        self.bands.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.len() + j]
    }

    /// Row `i` as a full-width slice.
    pub fn row(&self, i: usize) -> &[f64] {
        let len = self.len();
        &self.entries[i * len..(i + 1) * len]
    }

    /// Columns `lo..hi` that may be non-zero in row `i`.
    pub fn band(&self, i: usize) -> (usize, usize) {
        self.bands[i]
    }

    /// `D f`, approximating `f^(n)` at every node.
    pub fn apply(&self, f: &[f64]) -> Result<Vec<f64>> {
        check_len(self.len(), f.len())?;
        Ok((0..self.len()).map(|i| self.apply_row(i, f)).collect())
    }

    /// `(D f)_i`. After the negative-sum trick this is evaluated as
    /// `sum_{j != i} D_ij (f_j - f_i)`, which is exactly zero for constant data.
    pub(crate) fn apply_row(&self, i: usize, f: &[f64]) -> f64 {
        let (lo, hi) = self.bands[i];
        let row = &self.row(i)[lo..hi];
        if self.negative_sum {
            let fi = f[i];
            row.iter().zip(&f[lo..hi]).enumerate().filter(|&(k, _)| lo + k != i).map(|(_, (d, fj))| d * (fj - fi)).sum()
        } else {
            row.iter().zip(&f[lo..hi]).map(|(d, fj)| d * fj).sum()
        }
    }
}
