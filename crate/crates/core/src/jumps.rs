//! Jump-corrected interpolation, differentiation and quadrature.
//!
//! A function with known jumps `J_m = f^(m)(xi+) - f^(m)(xi-)` is
//! approximated by a single degree-`N` "polynomial" whose coefficients are
//! piecewise constant with a step at `xi`:
//!
//! ```text
//! p(x) = sum_j [f_j + s_j(x; xi)] pi_j(x)
//! s_j(x; xi) = [theta(x - xi) theta(xi - x_j) - theta(xi - x) theta(x_j - xi)] g_j(xi)
//! g_j(xi)    = sum_{m=0}^{M} J_m / m! (x_j - xi)^m
//! ```
//!
//! with `theta(0) = 1/2`. Only jumps up to order `M` are enforced; higher
//! derivative jumps of `p` vanish. `M = -1` (no jumps) is plain Lagrange.
//!
//! Several discontinuities may be passed at once as a slice of [`JumpData`];
//! their corrections add.

use serde::{Deserialize, Serialize};

use crate::diffmat::{fd_weights, DerivMatrix};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::lagrange::{check_len, BarycentricWeights};
use crate::quadrature::{basis_integrals, QuadRule};

/// Heaviside step with `theta(0) = 1/2`.
pub fn heaviside(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// Location of a discontinuity and the jumps `J_0 ..= J_M` enforced there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "JumpRepr")]
pub struct JumpData {
    xi: f64,
    #[serde(rename = "J")]
    jumps: Vec<f64>,
}

#[derive(Deserialize)]
struct JumpRepr {
    xi: f64,
    #[serde(rename = "J", default)]
    jumps: Vec<f64>,
}

impl TryFrom<JumpRepr> for JumpData {
    type Error = Error;

    fn try_from(r: JumpRepr) -> Result<Self> {
        JumpData::new(r.xi, r.jumps)
    }
}

impl JumpData {
    pub fn new(xi: f64, jumps: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = jumps.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteJump { index, value });
        }
        Ok(Self { xi, jumps })
    }

    /// No enforced jumps (`M = -1`).
    pub fn none(xi: f64) -> Self {
        Self { xi, jumps: Vec::new() }
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn jumps(&self) -> &[f64] {
        &self.jumps
    }

    /// Highest enforced jump order `M`; `-1` when no jumps are enforced.
    pub fn order(&self) -> isize {
        self.jumps.len() as isize - 1
    }

    /// Keep only `J_0 ..= J_m` (`m = -1` drops all).
    pub fn truncated(&self, m: isize) -> Self {
        let keep = (m + 1).clamp(0, self.jumps.len() as isize) as usize;
        Self { xi: self.xi, jumps: self.jumps[..keep].to_vec() }
    }

    /// Same jumps at a different location.
    pub fn moved_to(&self, xi: f64) -> Self {
        Self { xi, jumps: self.jumps.clone() }
    }

    /// `G(x) = sum_m J_m / m! (x - xi)^m`, by Horner's rule.
    pub fn taylor_jump(&self, x: f64) -> f64 {
        let mut coeffs = taylor_coefficients(&self.jumps);
        let dx = x - self.xi;
        coeffs.reverse();
        coeffs.into_iter().fold(0.0, |acc, c| acc * dx + c)
    }

    fn validate(&self, grid: &Grid) -> Result<()> {
        let (a, b) = (grid.a(), grid.b());
        if !(self.xi > a && self.xi < b) {
            return Err(Error::XiOutsideInterval { xi: self.xi, a, b });
        }
        if let Some(index) = grid.node_index(self.xi) {
            return Err(Error::XiOnNode { xi: self.xi, index });
        }
        Ok(())
    }
}

fn taylor_coefficients(jumps: &[f64]) -> Vec<f64> {
    let mut fact = 1.0;
    jumps
        .iter()
        .enumerate()
        .map(|(m, j)| {
            if m > 0 {
                fact *= m as f64;
            }
            j / fact
        })
        .collect()
}

fn validate_all(jumps: &[JumpData], grid: &Grid) -> Result<()> {
    for (k, jd) in jumps.iter().enumerate() {
        jd.validate(grid)?;
        if jumps[..k].iter().any(|other| other.xi == jd.xi) {
            return Err(Error::DuplicateDiscontinuity(jd.xi));
        }
    }
    Ok(())
}

/// `g_j(xi)` at every node. All zero when `M = -1`.
pub fn g_weights(jump: &JumpData, grid: &Grid) -> Result<Vec<f64>> {
    jump.validate(grid)?;
    Ok(g_unchecked(jump, grid))
}

fn g_unchecked(jump: &JumpData, grid: &Grid) -> Vec<f64> {
    grid.nodes().iter().map(|&x| jump.taylor_jump(x)).collect()
}

/// `s_j(x; xi)` for every `j` at an arbitrary point `x`.
pub fn s_eval(jump: &JumpData, grid: &Grid, x: f64) -> Result<Vec<f64>> {
    let g = g_weights(jump, grid)?;
    Ok(s_row(jump.xi, grid, &g, x))
}

fn s_row(xi: f64, grid: &Grid, g: &[f64], x: f64) -> Vec<f64> {
    let right = heaviside(x - xi);
    let left = heaviside(xi - x);
    grid.nodes().iter().zip(g).map(|(&xj, gj)| (right * heaviside(xi - xj) - left * heaviside(xj - xi)) * gj).collect()
}

/// `s_j(x_i; xi) = [theta(x_i - xi) - theta(x_j - xi)] g_j`, as `[i][j]`.
pub fn s_weights_at_nodes(jump: &JumpData, grid: &Grid) -> Result<Vec<Vec<f64>>> {
    Ok(CorrectionWeights::new(jump, grid)?.s_nodes)
}

/// Correction weights of one discontinuity on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionWeights {
    pub g: Vec<f64>,
    pub s_nodes: Vec<Vec<f64>>,
}

impl CorrectionWeights {
    pub fn new(jump: &JumpData, grid: &Grid) -> Result<Self> {
        let g = g_weights(jump, grid)?;
        let x = grid.nodes();
        let s_nodes = x
            .iter()
            .map(|&xi_node| {
                let ti = heaviside(xi_node - jump.xi);
                x.iter().zip(&g).map(|(&xj, gj)| (ti - heaviside(xj - jump.xi)) * gj).collect()
            })
            .collect();
        Ok(Self { g, s_nodes })
    }
}

/// Corrected nodal data `f_j + sum_d s^d_j(x; xi_d)` seen from a point `x`.
fn corrected_data(grid: &Grid, f: &[f64], jumps: &[JumpData], gs: &[Vec<f64>], x: f64) -> Vec<f64> {
    let mut data = f.to_vec();
    for (jd, g) in jumps.iter().zip(gs) {
        for (d, s) in data.iter_mut().zip(s_row(jd.xi, grid, g, x)) {
            *d += s;
        }
    }
    data
}

/// Jump-corrected interpolant at `x`.
pub fn corrected_interpolate(w: &BarycentricWeights, f: &[f64], jump: &JumpData, x: f64) -> Result<f64> {
    corrected_interpolate_multi(w, f, std::slice::from_ref(jump), x)
}

pub fn corrected_interpolate_multi(w: &BarycentricWeights, f: &[f64], jumps: &[JumpData], x: f64) -> Result<f64> {
    let grid = w.grid();
    check_len(grid.len(), f.len())?;
    validate_all(jumps, grid)?;
    let gs: Vec<Vec<f64>> = jumps.iter().map(|jd| g_unchecked(jd, grid)).collect();
    Ok(w.eval_unchecked(&corrected_data(grid, f, jumps, &gs, x), x))
}

/// A corrected interpolant with the correction weights precomputed, for
/// evaluation at many points.
#[derive(Debug, Clone)]
pub struct CorrectedInterpolant<'a> {
    w: &'a BarycentricWeights,
    jumps: Vec<JumpData>,
    /// One corrected data vector per region between consecutive
    /// discontinuities.
    region_data: Vec<Vec<f64>>,
    xis: Vec<f64>,
    f: Vec<f64>,
    gs: Vec<Vec<f64>>,
}

impl<'a> CorrectedInterpolant<'a> {
    pub fn new(w: &'a BarycentricWeights, f: &[f64], jumps: &[JumpData]) -> Result<Self> {
        let grid = w.grid();
        check_len(grid.len(), f.len())?;
        validate_all(jumps, grid)?;
        let gs: Vec<Vec<f64>> = jumps.iter().map(|jd| g_unchecked(jd, grid)).collect();
        let mut sorted = jumps.to_vec();
        sorted.sort_by(|p, q| p.xi.total_cmp(&q.xi));
        let xis: Vec<f64> = sorted.iter().map(|j| j.xi).collect();
        // representative point of each region: left of all, between, right of all
        let region_data = (0..=xis.len())
            .map(|r| {
                let probe = region_probe(grid, &xis, r);
                corrected_data(grid, f, jumps, &gs, probe)
            })
            .collect();
        Ok(Self { w, jumps: jumps.to_vec(), region_data, xis, f: f.to_vec(), gs })
    }

    pub fn eval(&self, x: f64) -> f64 {
        if self.xis.contains(&x) {
            let data = corrected_data(self.w.grid(), &self.f, &self.jumps, &self.gs, x);
            return self.w.eval_unchecked(&data, x);
        }
        let r = self.xis.partition_point(|&xi| xi < x);
        self.w.eval_unchecked(&self.region_data[r], x)
    }

    /// Limit of the interpolant from the left (`side < 0`) or right (`side > 0`).
    pub fn eval_limit(&self, x: f64, side: i8) -> f64 {
        let r = if side > 0 { self.xis.partition_point(|&xi| xi <= x) } else { self.xis.partition_point(|&xi| xi < x) };
        self.w.eval_unchecked(&self.region_data[r], x)
    }
}

fn region_probe(grid: &Grid, xis: &[f64], r: usize) -> f64 {
    let lo = if r == 0 { grid.a() - 1.0 } else { xis[r - 1] };
    let hi = if r == xis.len() { grid.b() + 1.0 } else { xis[r] };
    0.5 * (lo + hi)
}

/// `p^(n)(x_i) = sum_j D_ij [f_j + s_j(x_i; xi)]` at every node.
pub fn corrected_derivative(d: &DerivMatrix, f: &[f64], jump: &JumpData) -> Result<Vec<f64>> {
    corrected_derivative_multi(d, f, std::slice::from_ref(jump))
}

pub fn corrected_derivative_multi(d: &DerivMatrix, f: &[f64], jumps: &[JumpData]) -> Result<Vec<f64>> {
    let grid = d.grid();
    check_len(grid.len(), f.len())?;
    validate_all(jumps, grid)?;
    let gs: Vec<Vec<f64>> = jumps.iter().map(|jd| g_unchecked(jd, grid)).collect();
    let mut xis: Vec<f64> = jumps.iter().map(|j| j.xi).collect();
    xis.sort_by(f64::total_cmp);
    // rows in the same region between discontinuities see the same data
    let region_data: Vec<Vec<f64>> =
        (0..=xis.len()).map(|r| corrected_data(grid, f, jumps, &gs, region_probe(grid, &xis, r))).collect();
    Ok(grid
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, &x)| d.apply_row(i, &region_data[xis.partition_point(|&xi| xi < x)]))
        .collect())
}

/// Left and right first derivatives at a node `x_J = xi` from the centred
/// three-point stencil, given jumps `J_0, J_1, J_2` at that node.
///
/// The nodal value `f_J` is used as supplied. The difference of the two
/// results is `J_1`.
pub fn one_sided_derivatives_at_node(grid: &Grid, f: &[f64], node: usize, jumps: [f64; 3]) -> Result<(f64, f64)> {
    check_len(grid.len(), f.len())?;
    if node == 0 || node >= grid.degree() {
        return Err(Error::BoundaryNode(node));
    }
    if let Some((index, &value)) = jumps.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::NonFiniteJump { index, value });
    }
    let x = grid.nodes();
    let (xm, x0, xp) = (x[node - 1], x[node], x[node + 1]);
    let (hl, hr, h) = (x0 - xm, xp - x0, xp - xm);
    let smooth = f[node + 1] * hl / (hr * h) + f[node] * (xp + xm - 2.0 * x0) / (hr * hl) - f[node - 1] * hr / (h * hl);
    let [j0, j1, j2] = jumps;
    let common = smooth - 0.5 * j0 * (1.0 / hl + 1.0 / hr - 2.0 / h) - 0.5 * j2 * hr * hl / h;
    let left = common + j1 * (xm - x0) / h;
    let right = common + j1 * (xp - x0) / h;
    Ok((left, right))
}

/// `sum_j [w_j f_j + q_j(xi)]`, with
/// `q_j = g_j theta(xi - x_j) int_xi^b pi_j - g_j theta(x_j - xi) int_a^xi pi_j`.
///
/// Evaluated in the equivalent form `sum_j [C^-_j int_a^xi pi_j + C^+_j int_xi^b pi_j]`,
/// which avoids cancelling the large weights of high-degree equidistant
/// rules. Without nonzero corrections this is exactly `rule.integrate(f)`.
pub fn corrected_integrate(rule: &QuadRule, w: &BarycentricWeights, f: &[f64], jump: &JumpData) -> Result<f64> {
    corrected_integrate_multi(rule, w, f, std::slice::from_ref(jump))
}

pub fn corrected_integrate_multi(
    rule: &QuadRule,
    w: &BarycentricWeights,
    f: &[f64],
    jumps: &[JumpData],
) -> Result<f64> {
    let grid = w.grid();
    check_len(grid.len(), f.len())?;
    check_len(grid.len(), rule.weights().len())?;
    validate_all(jumps, grid)?;
    let gs: Vec<Vec<f64>> = jumps.iter().map(|jd| g_unchecked(jd, grid)).collect();
    if gs.iter().flatten().all(|&g| g == 0.0) {
        return rule.integrate(f);
    }
    let mut cuts: Vec<f64> = jumps.iter().map(|j| j.xi).collect();
    cuts.sort_by(f64::total_cmp);
    let xis = cuts.clone();
    cuts.insert(0, grid.a());
    cuts.push(grid.b());
    Ok(cuts
        .windows(2)
        .enumerate()
        .map(|(r, span)| {
            let data = corrected_data(grid, f, jumps, &gs, region_probe(grid, &xis, r));
            basis_integrals(w, span[0], span[1]).iter().zip(&data).map(|(i, c)| i * c).sum::<f64>()
        })
        .sum())
}

/// The `q_j(xi)` of a single discontinuity.
pub fn quadrature_corrections(w: &BarycentricWeights, jump: &JumpData) -> Vec<f64> {
    let grid = w.grid();
    let g = g_unchecked(jump, grid);
    let left = basis_integrals(w, grid.a(), jump.xi);
    let right = basis_integrals(w, jump.xi, grid.b());
    grid.nodes()
        .iter()
        .enumerate()
        .map(|(j, &xj)| g[j] * (heaviside(jump.xi - xj) * right[j] - heaviside(xj - jump.xi) * left[j]))
        .collect()
}

/// Nodal data of the left and right polynomial pieces `p_-`, `p_+`:
/// `C^+_j = f_j + theta(xi - x_j) g_j`, `C^-_j = f_j - theta(x_j - xi) g_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseData {
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

pub fn piecewise_data(grid: &Grid, f: &[f64], jump: &JumpData) -> Result<PiecewiseData> {
    check_len(grid.len(), f.len())?;
    let g = g_weights(jump, grid)?;
    let x = grid.nodes();
    let right = (0..x.len()).map(|j| f[j] + heaviside(jump.xi - x[j]) * g[j]).collect();
    let left = (0..x.len()).map(|j| f[j] - heaviside(x[j] - jump.xi) * g[j]).collect();
    Ok(PiecewiseData { left, right })
}

/// `p_+^(m)(xi) - p_-^(m)(xi)` for `m = 0 ..= N`.
pub fn reconstructed_jumps(grid: &Grid, f: &[f64], jump: &JumpData) -> Result<Vec<f64>> {
    let pieces = piecewise_data(grid, f, jump)?;
    let table = crate::diffmat::fd_weight_table(grid.nodes(), jump.xi, grid.degree())?;
    Ok(table
        .iter()
        .map(|w| w.iter().zip(pieces.right.iter().zip(&pieces.left)).map(|(c, (r, l))| c * (r - l)).sum())
        .collect())
}

/// One-sided `n`-th derivative of the corrected interpolant at `x`
/// (`side > 0` uses `p_+`, otherwise `p_-`).
pub fn one_sided_derivative(grid: &Grid, f: &[f64], jump: &JumpData, x: f64, n: usize, side: i8) -> Result<f64> {
    let pieces = piecewise_data(grid, f, jump)?;
    let data = if side > 0 { &pieces.right } else { &pieces.left };
    let w = fd_weights(grid.nodes(), x, n)?;
    Ok(w.iter().zip(data).map(|(c, v)| c * v).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid4() -> Grid {
        Grid::custom(-1.0, 1.0, vec![-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0]).unwrap()
    }

    #[test]
    fn g_examples() {
        let g = Grid::custom(-1.0, 1.0, vec![-1.0, 0.5, 0.8]).unwrap();
        let ones = g_weights(&JumpData::new(0.1, vec![1.0]).unwrap(), &g).unwrap();
        assert_eq!(ones, vec![1.0; 3]);
        let v = g_weights(&JumpData::new(0.0, vec![1.0, 2.0]).unwrap(), &g).unwrap();
        assert!((v[1] - 2.0).abs() < 1e-15);
        let v = g_weights(&JumpData::new(0.3, vec![0.0, 0.0, 6.0]).unwrap(), &g).unwrap();
        assert!((v[2] - 0.75).abs() < 1e-15);
        let none = g_weights(&JumpData::none(0.1), &g).unwrap();
        assert_eq!(none, vec![0.0; 3]);
    }

    #[test]
    fn validation() {
        let g = grid4();
        assert!(matches!(
            g_weights(&JumpData::new(1.0 / 3.0, vec![1.0]).unwrap(), &g),
            Err(Error::XiOnNode { index: 2, .. })
        ));
        assert!(matches!(g_weights(&JumpData::new(1.0, vec![1.0]).unwrap(), &g), Err(Error::XiOutsideInterval { .. })));
        assert!(matches!(JumpData::new(0.0, vec![f64::NAN]), Err(Error::NonFiniteJump { index: 0, .. })));
        let w = BarycentricWeights::new(&g);
        let dup = [JumpData::none(0.1), JumpData::new(0.1, vec![1.0]).unwrap()];
        assert!(matches!(corrected_interpolate_multi(&w, &[0.0; 4], &dup, 0.0), Err(Error::DuplicateDiscontinuity(_))));
    }

    #[test]
    fn s_examples() {
        let g = grid4();
        let zero = s_eval(&JumpData::new(0.1, vec![0.0, 0.0]).unwrap(), &g, 0.5).unwrap();
        assert!(zero.iter().all(|&v| v == 0.0));
        let jd = JumpData::new(0.1, vec![1.0, 0.5]).unwrap();
        let gw = g_weights(&jd, &g).unwrap();
        let s = s_eval(&jd, &g, 0.5).unwrap();
        assert_eq!(s[2], 0.0);
        assert_eq!(s[3], 0.0);
        assert_eq!(s[0], gw[0]);
        assert_eq!(s[1], gw[1]);
        let s = s_eval(&jd, &g, -0.5).unwrap();
        assert_eq!(s[0], 0.0);
        assert_eq!(s[2], -gw[2]);
    }

    #[test]
    fn nodal_s_matches_pointwise_s() {
        let g = Grid::chebyshev_gauss_lobatto(-1.0, 1.0, 9).unwrap();
        let jd = JumpData::new(0.23, vec![0.4, -1.2, 3.0]).unwrap();
        let cw = CorrectionWeights::new(&jd, &g).unwrap();
        for (i, &x) in g.nodes().iter().enumerate() {
            assert_eq!(cw.s_nodes[i], s_eval(&jd, &g, x).unwrap());
            assert_eq!(cw.s_nodes[i][i], 0.0);
            for (j, &y) in g.nodes().iter().enumerate() {
                if (x - 0.23).signum() == (y - 0.23).signum() {
                    assert_eq!(cw.s_nodes[i][j], 0.0);
                } else if x > 0.23 {
                    assert_eq!(cw.s_nodes[i][j], cw.g[j]);
                } else {
                    assert_eq!(cw.s_nodes[i][j], -cw.g[j]);
                }
                if cw.g[i] != 0.0 && cw.g[j] != 0.0 {
                    assert_eq!(cw.s_nodes[i][j] / cw.g[j], -cw.s_nodes[j][i] / cw.g[i]);
                }
            }
        }
    }

    #[test]
    fn step_is_reproduced() {
        let g = grid4();
        let w = BarycentricWeights::new(&g);
        let f: Vec<f64> = g.nodes().iter().map(|&x| heaviside(x - 0.1)).collect();
        let jd = JumpData::new(0.1, vec![1.0]).unwrap();
        assert!(corrected_interpolate(&w, &f, &jd, -0.5).unwrap().abs() < 1e-15);
        assert!((corrected_interpolate(&w, &f, &jd, 0.5).unwrap() - 1.0).abs() < 1e-15);
        let q = QuadRule::new(&g);
        assert!((corrected_integrate(&q, &w, &f, &jd).unwrap() - 0.9).abs() < 1e-13);
    }

    #[test]
    fn no_jumps_is_plain_lagrange_bitwise() {
        let g = Grid::chebyshev_gauss_lobatto(-1.0, 1.0, 11).unwrap();
        let w = BarycentricWeights::new(&g);
        let f: Vec<f64> = g.nodes().iter().map(|x| (3.0 * x).sin()).collect();
        let jd = JumpData::none(0.05);
        for k in 0..100 {
            let x = -1.0 + 2.0 * (k as f64 + 0.37) / 100.0;
            assert_eq!(
                corrected_interpolate(&w, &f, &jd, x).unwrap().to_bits(),
                w.interpolate(&f, x).unwrap().to_bits()
            );
        }
        let d = DerivMatrix::pseudospectral(&g, 1).unwrap();
        assert_eq!(corrected_derivative(&d, &f, &jd).unwrap(), d.apply(&f).unwrap());
        let q = QuadRule::new(&g);
        assert_eq!(corrected_integrate(&q, &w, &f, &jd).unwrap().to_bits(), q.integrate(&f).unwrap().to_bits());
    }

    #[test]
    fn abs_derivative_is_exact() {
        let g = Grid::chebyshev_gauss_lobatto(-1.0, 1.0, 8).unwrap();
        let xi = 0.2;
        let f: Vec<f64> = g.nodes().iter().map(|x| (x - xi).abs()).collect();
        let jd = JumpData::new(xi, vec![0.0, 2.0]).unwrap();
        let d = DerivMatrix::pseudospectral(&g, 1).unwrap();
        let df = corrected_derivative(&d, &f, &jd).unwrap();
        for (x, v) in g.nodes().iter().zip(df) {
            let want = if *x > xi { 1.0 } else { -1.0 };
            assert!((v - want).abs() < 1e-11, "x = {x}: {v}");
        }
    }

    #[test]
    fn on_node_formula_examples() {
        let g = Grid::equidistant(0.0, 4.0, 4).unwrap();
        let f: Vec<f64> = g.nodes().iter().map(|x| (x - 2.0).abs()).collect();
        let (l, r) = one_sided_derivatives_at_node(&g, &f, 2, [0.0, 2.0, 0.0]).unwrap();
        assert!((l + 1.0).abs() < 1e-15 && (r - 1.0).abs() < 1e-15);

        let f: Vec<f64> = g.nodes().iter().map(|x| x * x).collect();
        let (l, r) = one_sided_derivatives_at_node(&g, &f, 1, [0.0; 3]).unwrap();
        assert_eq!(l, r);
        assert!((l - 2.0).abs() < 1e-14);
        assert!(matches!(one_sided_derivatives_at_node(&g, &f, 0, [0.0; 3]), Err(Error::BoundaryNode(0))));
        assert!(matches!(one_sided_derivatives_at_node(&g, &f, 4, [0.0; 3]), Err(Error::BoundaryNode(4))));
    }

    /// The closed form equals the three-point stencil applied to the right
    /// (left) piece data `C^+` (`C^-`) with `theta(0) = 1/2` at the node.
    #[test]
    fn on_node_formula_matches_piece_data() {
        let x = [0.0, 0.2, 0.45, 0.9, 1.0];
        let g = Grid::custom(0.0, 1.0, x.to_vec()).unwrap();
        let f = [0.3, -0.1, 0.7, 0.2, 0.5];
        let jumps = [0.4, -1.3, 2.2];
        let (l, r) = one_sided_derivatives_at_node(&g, &f, 2, jumps).unwrap();
        let xi = x[2];
        let gj = |xj: f64| jumps[0] + jumps[1] * (xj - xi) + 0.5 * jumps[2] * (xj - xi).powi(2);
        let c = fd_weights(&x[1..4], xi, 1).unwrap();
        let (mut right, mut left) = (0.0, 0.0);
        for k in 0..3 {
            let xj = x[k + 1];
            right += c[k] * (f[k + 1] + heaviside(xi - xj) * gj(xj));
            left += c[k] * (f[k + 1] - heaviside(xj - xi) * gj(xj));
        }
        assert!((r - right).abs() < 1e-13, "{r} vs {right}");
        assert!((l - left).abs() < 1e-13, "{l} vs {left}");
        assert!(((r - l) - jumps[1]).abs() < 1e-13);
    }

    #[test]
    fn reconstructed_jumps_follow_jump_conditions() {
        let g = Grid::chebyshev_gauss_lobatto(-1.0, 1.0, 10).unwrap();
        let f: Vec<f64> = g.nodes().iter().map(|x| x.cos()).collect();
        let jd = JumpData::new(0.3, vec![0.5, -1.0, 2.0, 0.25]).unwrap();
        let got = reconstructed_jumps(&g, &f, &jd).unwrap();
        for (m, v) in got.iter().enumerate() {
            let want = jd.jumps().get(m).copied().unwrap_or(0.0);
            assert!((v - want).abs() < 1e-8 * (1.0 + (1..=m).product::<usize>() as f64), "m = {m}: {v}");
        }
    }

    #[test]
    fn two_discontinuities_add() {
        let g = Grid::chebyshev_gauss_lobatto(-1.0, 1.0, 14).unwrap();
        let w = BarycentricWeights::new(&g);
        let f_exact = |x: f64| x + heaviside(x + 0.35) * 2.0 - heaviside(x - 0.4) * (x - 0.4);
        let f: Vec<f64> = g.nodes().iter().map(|&x| f_exact(x)).collect();
        let jumps = [JumpData::new(-0.35, vec![2.0]).unwrap(), JumpData::new(0.4, vec![0.0, -1.0]).unwrap()];
        let interp = CorrectedInterpolant::new(&w, &f, &jumps).unwrap();
        for k in 0..200 {
            let x = -1.0 + 2.0 * (k as f64 + 0.5) / 200.0;
            assert!((interp.eval(x) - f_exact(x)).abs() < 1e-11, "x = {x}");
            assert!((corrected_interpolate_multi(&w, &f, &jumps, x).unwrap() - f_exact(x)).abs() < 1e-11);
        }
        let d = DerivMatrix::pseudospectral(&g, 1).unwrap();
        let df = corrected_derivative_multi(&d, &f, &jumps).unwrap();
        for (x, v) in g.nodes().iter().zip(df) {
            let want = if *x > 0.4 { 0.0 } else { 1.0 };
            assert!((v - want).abs() < 1e-10);
        }
        let q = QuadRule::new(&g);
        let exact = 0.0 + 2.0 * 1.35 - 0.5 * 0.6 * 0.6;
        assert!((corrected_integrate_multi(&q, &w, &f, &jumps).unwrap() - exact).abs() < 1e-12);
    }

    #[test]
    fn limits_at_xi() {
        let g = grid4();
        let w = BarycentricWeights::new(&g);
        let f: Vec<f64> = g.nodes().iter().map(|&x| heaviside(x - 0.1)).collect();
        let jd = [JumpData::new(0.1, vec![1.0]).unwrap()];
        let p = CorrectedInterpolant::new(&w, &f, &jd).unwrap();
        assert!(p.eval_limit(0.1, -1).abs() < 1e-15);
        assert!((p.eval_limit(0.1, 1) - 1.0).abs() < 1e-15);
        assert!((p.eval(0.1) - 0.5).abs() < 1e-15);
    }
}
