//! Interpolatory quadrature: weights are integrals of the Lagrange basis.

use crate::error::Result;
use crate::grid::Grid;
use crate::lagrange::{check_len, BarycentricWeights};

/// Gauss-Legendre nodes and weights on `[-1, 1]`, exact for degree `2n - 1`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let theta = std::f64::consts::PI * (4.0 * i as f64 + 3.0) / (4.0 * n as f64 + 2.0);
        let mut z = theta.cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, z);
            let dz = p / d;
            z -= dz;
            if dz.abs() <= 1e-16 * z.abs().max(1.0) {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, z);
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (z * p1 - p0) / (z * z - 1.0))
}

/// Number of Gauss points used to integrate a degree-`degree` polynomial exactly.
fn gauss_points_for(degree: usize) -> usize {
    (degree + 1).div_ceil(2) + 1
}

/// `int_lo^hi pi_j(x) dx` for every basis polynomial, exact up to rounding.
pub fn basis_integrals(w: &BarycentricWeights, lo: f64, hi: f64) -> Vec<f64> {
    let len = w.lambda().len();
    let (gx, gw) = gauss_legendre(gauss_points_for(len - 1));
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let mut out = vec![0.0; len];
    for (t, wt) in gx.iter().zip(&gw) {
        let basis = w.basis_all(mid + half * t);
        for (o, p) in out.iter_mut().zip(&basis) {
            *o += half * wt * p;
        }
    }
    out
}

/// Interpolatory quadrature weights `w_j = int_a^b pi_j(x) dx` on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    grid: Grid,
    weights: Vec<f64>,
}

impl QuadRule {
    pub fn new(grid: &Grid) -> Self {
        Self::from_barycentric(&BarycentricWeights::new(grid))
    }

    pub fn from_barycentric(w: &BarycentricWeights) -> Self {
        let grid = w.grid();
        Self { grid: grid.clone(), weights: basis_integrals(w, grid.a(), grid.b()) }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `sum_j w_j f_j`.
    pub fn integrate(&self, f: &[f64]) -> Result<f64> {
        check_len(self.weights.len(), f.len())?;
        Ok(self.weights.iter().zip(f).map(|(w, v)| w * v).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_rule_is_exact() {
        for n in 1..30 {
            let (x, w) = gauss_legendre(n);
            for k in 0..2 * n {
                let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k as i32)).sum();
                let want = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
                assert!((got - want).abs() < 1e-13, "n = {n}, k = {k}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn simpson_and_trapezoid() {
        let q = QuadRule::new(&Grid::equidistant(-1.0, 1.0, 2).unwrap());
        for (g, w) in q.weights().iter().zip([1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0]) {
            assert!((g - w).abs() < 1e-15);
        }
        let q = QuadRule::new(&Grid::custom(0.0, 1.0, vec![0.0, 1.0]).unwrap());
        for g in q.weights() {
            assert!((g - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn integrate_examples() {
        let q = QuadRule::new(&Grid::equidistant(-1.0, 1.0, 2).unwrap());
        assert!((q.integrate(&[3.0; 3]).unwrap() - 6.0).abs() < 1e-14);
        assert!(q.integrate(&[-1.0, 0.0, 1.0]).unwrap().abs() < 1e-15);
        assert!(q.integrate(&[1.0]).is_err());

        let g = Grid::chebyshev_gauss_lobatto(-1.0, 1.0, 16).unwrap();
        let q = QuadRule::new(&g);
        let f: Vec<f64> = g.nodes().iter().map(|x| x.exp()).collect();
        let exact = std::f64::consts::E - 1.0 / std::f64::consts::E;
        assert!((q.integrate(&f).unwrap() - exact).abs() < 1e-12);
    }

    /// Clenshaw-Curtis weights for even N, via the cosine-series formula.
    fn clenshaw_curtis(n: usize) -> Vec<f64> {
        use std::f64::consts::PI;
        (0..=n)
            .map(|i| {
                let theta = i as f64 * PI / n as f64;
                let c = if i == 0 || i == n { 1.0 } else { 2.0 };
                let mut s = 0.0;
                for k in 1..=n / 2 {
                    let b = if k == n / 2 { 1.0 } else { 2.0 };
                    s += b / (4.0 * (k * k) as f64 - 1.0) * (2.0 * k as f64 * theta).cos();
                }
                c / n as f64 * (1.0 - s)
            })
            .collect()
    }

    #[test]
    fn cgl_weights_are_clenshaw_curtis() {
        for n in [2usize, 4, 8, 16, 24] {
            let q = QuadRule::new(&Grid::chebyshev_gauss_lobatto(-1.0, 1.0, n).unwrap());
            let cc = clenshaw_curtis(n);
            // the grid is ascending, the cosine formula descending; CC is symmetric
            for (g, w) in q.weights().iter().zip(&cc) {
                assert!((g - w).abs() < 1e-14, "N = {n}");
            }
            assert!((q.weights().iter().sum::<f64>() - 2.0).abs() < 1e-13);
        }
    }

    #[test]
    fn monomials_exact_and_affine_covariance() {
        for n in 1..=24 {
            let (a, b) = (-0.3, 1.9);
            let g = Grid::chebyshev_gauss_lobatto(a, b, n).unwrap();
            let q = QuadRule::new(&g);
            assert!((q.weights().iter().sum::<f64>() - (b - a)).abs() <= 1e-13 * (b - a));
            for k in 0..=n as i32 {
                let f: Vec<f64> = g.nodes().iter().map(|x| x.powi(k)).collect();
                let exact = (b.powi(k + 1) - a.powi(k + 1)) / (k + 1) as f64;
                let got = q.integrate(&f).unwrap();
                assert!((got - exact).abs() <= 1e-12 * exact.abs().max(1.0), "N = {n}, k = {k}");
            }
            let reference = QuadRule::new(&Grid::chebyshev_gauss_lobatto(-1.0, 1.0, n).unwrap());
            for (w, r) in q.weights().iter().zip(reference.weights()) {
                assert!((w - 0.5 * (b - a) * r).abs() < 1e-14);
            }
        }
    }
}
