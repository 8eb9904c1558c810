//! Reference functions with known jumps.
//!
//! [`LegendreProblem`] is the piecewise solution
//! `Phi_l(x) = P_l(xi) Q_l(x) theta(x - xi) + P_l(x) Q_l(xi) theta(xi - x)`
//! of the Legendre equation with a point source at `xi`. Its jumps come from
//! exact derivatives of the closed forms of `P_l` and `Q_l`.
//!
//! [`SyntheticPiecewise`] is a pair of polynomials (optionally on top of a
//! common smooth `sin(omega x)` background) used as an exactness oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jumps::JumpData;
use crate::quadrature::gauss_legendre;

const MAX_DEGREE: usize = 5;

fn poly_eval(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &v| acc * x + v)
}

fn poly_derivative(c: &[f64], k: usize) -> Vec<f64> {
    if k >= c.len() {
        return Vec::new();
    }
    (k..c.len()).map(|i| c[i] * ((i - k + 1)..=i).map(|f| f as f64).product::<f64>()).collect()
}

fn poly_mul(p: &[f64], q: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn poly_add_scaled(acc: &mut Vec<f64>, p: &[f64], s: f64) {
    if acc.len() < p.len() {
        acc.resize(p.len(), 0.0);
    }
    for (a, v) in acc.iter_mut().zip(p) {
        *a += s * v;
    }
}

/// Monomial coefficients of `P_0 ..= P_l` (Bonnet recurrence).
fn legendre_p_coeffs(l: usize) -> Vec<Vec<f64>> {
    let mut ps = vec![vec![1.0], vec![0.0, 1.0]];
    for n in 1..l {
        let mut next = vec![0.0; n + 2];
        for (i, c) in ps[n].iter().enumerate() {
            next[i + 1] += (2 * n + 1) as f64 * c / (n + 1) as f64;
        }
        for (i, c) in ps[n - 1].iter().enumerate() {
            next[i] -= n as f64 * c / (n + 1) as f64;
        }
        ps.push(next);
    }
    ps.truncate(l + 1);
    ps
}

/// Coefficients of `W_{l-1}` in `Q_l = P_l Q_0 - W_{l-1}`:
/// `W_{l-1} = sum_{m=1}^{l} P_{m-1} P_{l-m} / m`.
fn legendre_w_coeffs(l: usize) -> Vec<f64> {
    let ps = legendre_p_coeffs(l.max(1));
    let mut w = vec![0.0];
    for m in 1..=l {
        poly_add_scaled(&mut w, &poly_mul(&ps[m - 1], &ps[l - m]), 1.0 / m as f64);
    }
    w
}

fn check_degree(l: usize) -> Result<()> {
    if l > MAX_DEGREE {
        Err(Error::UnsupportedDegree(l))
    } else {
        Ok(())
    }
}

fn check_open_domain(x: f64) -> Result<()> {
    if x.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(x))
    }
}

/// `P_l(x)`, `0 <= l <= 5`.
pub fn legendre_p(l: usize, x: f64) -> Result<f64> {
    legendre_p_derivative(l, 0, x)
}

/// `d^k/dx^k P_l(x)`.
pub fn legendre_p_derivative(l: usize, k: usize, x: f64) -> Result<f64> {
    check_degree(l)?;
    let ps = legendre_p_coeffs(l);
    Ok(poly_eval(&poly_derivative(&ps[l], k), x))
}

/// `d^k/dx^k Q_0(x)` with `Q_0 = atanh x`.
fn q0_derivative(k: usize, x: f64) -> f64 {
    if k == 0 {
        return x.atanh();
    }
    let fact: f64 = (1..k).map(|v| v as f64).product();
    let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
    0.5 * fact * ((1.0 - x).powi(-(k as i32)) + sign * (1.0 + x).powi(-(k as i32)))
}

/// `Q_l(x)` for `|x| < 1`.
pub fn legendre_q(l: usize, x: f64) -> Result<f64> {
    legendre_q_derivative(l, 0, x)
}

/// `d^k/dx^k Q_l(x)` by Leibniz's rule on `P_l Q_0 - W_{l-1}`.
pub fn legendre_q_derivative(l: usize, k: usize, x: f64) -> Result<f64> {
    check_degree(l)?;
    check_open_domain(x)?;
    let p = &legendre_p_coeffs(l)[l];
    let mut binom = 1.0;
    let mut acc = 0.0;
    for i in 0..=k.min(l) {
        if i > 0 {
            binom *= (k - i + 1) as f64 / i as f64;
        }
        acc += binom * poly_eval(&poly_derivative(p, i), x) * q0_derivative(k - i, x);
    }
    Ok(acc - poly_eval(&poly_derivative(&legendre_w_coeffs(l), k), x))
}

/// Composite Gauss-Legendre integral of a smooth function.
fn smooth_integral(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
    const PANELS: usize = 16;
    let (gx, gw) = gauss_legendre(24);
    let h = (hi - lo) / PANELS as f64;
    (0..PANELS)
        .map(|p| {
            let mid = lo + (p as f64 + 0.5) * h;
            gx.iter().zip(&gw).map(|(t, w)| 0.5 * h * w * f(mid + 0.5 * h * t)).sum::<f64>()
        })
        .sum()
}

/// Source-at-`xi` solution of the Legendre equation of degree `l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LegendreProblem {
    pub l: usize,
    pub xi: f64,
}

impl LegendreProblem {
    /// Default evaluation interval. `Q_l` blows up at `+-1`; the left end
    /// lies beyond the radius of convergence of the jump series about
    /// `xi = 0.3`, so very high jump orders stop paying off there.
    pub const DEFAULT_DOMAIN: (f64, f64) = (-0.6, 0.7);

    pub fn new(l: usize, xi: f64) -> Result<Self> {
        check_degree(l)?;
        check_open_domain(xi)?;
        Ok(Self { l, xi })
    }

    /// `Phi_l(x)`, averaging the two branches at `x = xi`.
    pub fn phi(&self, x: f64) -> Result<f64> {
        self.phi_derivative(0, x)
    }

    /// `Phi_l^(k)(x)`; the branch average at `x = xi`.
    pub fn phi_derivative(&self, k: usize, x: f64) -> Result<f64> {
        if x > self.xi {
            self.branch(k, x, 1)
        } else if x < self.xi {
            self.branch(k, x, -1)
        } else {
            Ok(0.5 * (self.branch(k, x, 1)? + self.branch(k, x, -1)?))
        }
    }

    /// Right (`side > 0`) or left branch of `Phi_l^(k)`, evaluated at any `x`.
    pub fn branch(&self, k: usize, x: f64, side: i8) -> Result<f64> {
        check_open_domain(x)?;
        if side > 0 {
            Ok(legendre_p(self.l, self.xi)? * legendre_q_derivative(self.l, k, x)?)
        } else {
            Ok(legendre_p_derivative(self.l, k, x)? * legendre_q(self.l, self.xi)?)
        }
    }

    /// `J_k = P_l(xi) Q_l^(k)(xi) - P_l^(k)(xi) Q_l(xi)` for `k = 0 ..= m`.
    pub fn jumps(&self, m: isize) -> Result<JumpData> {
        let count = (m + 1).max(0) as usize;
        let jumps = (0..count)
            .map(|k| Ok(self.branch(k, self.xi, 1)? - self.branch(k, self.xi, -1)?))
            .collect::<Result<Vec<f64>>>()?;
        JumpData::new(self.xi, jumps)
    }

    pub fn integral(&self, a: f64, b: f64) -> Result<f64> {
        check_open_domain(a)?;
        check_open_domain(b)?;
        let right = |x: f64| self.branch(0, x, 1).unwrap_or(f64::NAN);
        let left = |x: f64| self.branch(0, x, -1).unwrap_or(f64::NAN);
        let xi = self.xi.clamp(a, b);
        Ok(smooth_integral(left, a, xi) + smooth_integral(right, xi, b))
    }
}

/// Two polynomials (monomial coefficients in `x`, lowest first) joined at
/// `xi`, optionally on top of a shared `sin(omega x)` background.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticPiecewise {
    pub xi: f64,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
    #[serde(default)]
    pub sine_frequency: f64,
}

impl SyntheticPiecewise {
    pub fn new(xi: f64, left: Vec<f64>, right: Vec<f64>) -> Self {
        Self { xi, left, right, sine_frequency: 0.0 }
    }

    pub fn with_sine(mut self, omega: f64) -> Self {
        self.sine_frequency = omega;
        self
    }

    fn background(&self, k: usize, x: f64) -> f64 {
        let w = self.sine_frequency;
        if w == 0.0 {
            return 0.0;
        }
        w.powi(k as i32) * (w * x + k as f64 * std::f64::consts::FRAC_PI_2).sin()
    }

    pub fn branch(&self, k: usize, x: f64, side: i8) -> f64 {
        let c = if side > 0 { &self.right } else { &self.left };
        poly_eval(&poly_derivative(c, k), x) + self.background(k, x)
    }

    pub fn value(&self, x: f64) -> f64 {
        self.derivative(0, x)
    }

    pub fn derivative(&self, k: usize, x: f64) -> f64 {
        if x > self.xi {
            self.branch(k, x, 1)
        } else if x < self.xi {
            self.branch(k, x, -1)
        } else {
            0.5 * (self.branch(k, x, 1) + self.branch(k, x, -1))
        }
    }

    /// All jumps `J_0 ..= J_d`, `d` the larger of the two degrees.
    pub fn jump_data(&self) -> JumpData {
        let d = self.left.len().max(self.right.len()) as isize - 1;
        self.jumps(d)
    }

    /// Jumps `J_0 ..= J_m`; orders past both degrees are zero.
    pub fn jumps(&self, m: isize) -> JumpData {
        let count = (m + 1).max(0) as usize;
        let jumps = (0..count)
            .map(|k| {
                poly_eval(&poly_derivative(&self.right, k), self.xi)
                    - poly_eval(&poly_derivative(&self.left, k), self.xi)
            })
            .collect();
        JumpData::new(self.xi, jumps).expect("polynomial jumps are finite")
    }

    pub fn integral(&self, a: f64, b: f64) -> f64 {
        let anti = |c: &[f64], x: f64| -> f64 {
            c.iter().enumerate().map(|(i, v)| v * x.powi(i as i32 + 1) / (i + 1) as f64).sum()
        };
        let xi = self.xi.clamp(a, b);
        let w = self.sine_frequency;
        let bg = if w == 0.0 { 0.0 } else { ((w * a).cos() - (w * b).cos()) / w };
        anti(&self.left, xi) - anti(&self.left, a) + anti(&self.right, b) - anti(&self.right, xi) + bg
    }
}

/// `SyntheticPiecewise` jump vector (all orders).
pub fn synthetic_jump_data(s: &SyntheticPiecewise) -> JumpData {
    s.jump_data()
}

/// A reference problem as accepted in experiment configurations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RefProblem {
    Legendre(LegendreProblem),
    Synthetic(SyntheticPiecewise),
}

impl RefProblem {
    pub fn xi(&self) -> f64 {
        match self {
            RefProblem::Legendre(p) => p.xi,
            RefProblem::Synthetic(s) => s.xi,
        }
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        self.derivative(0, x)
    }

    pub fn derivative(&self, k: usize, x: f64) -> Result<f64> {
        match self {
            RefProblem::Legendre(p) => p.phi_derivative(k, x),
            RefProblem::Synthetic(s) => Ok(s.derivative(k, x)),
        }
    }

    /// One-sided branch value used for limits at `xi`.
    pub fn branch(&self, k: usize, x: f64, side: i8) -> Result<f64> {
        match self {
            RefProblem::Legendre(p) => p.branch(k, x, side),
            RefProblem::Synthetic(s) => Ok(s.branch(k, x, side)),
        }
    }

    pub fn jumps(&self, m: isize) -> Result<JumpData> {
        match self {
            RefProblem::Legendre(p) => p.jumps(m),
            RefProblem::Synthetic(s) => Ok(s.jumps(m)),
        }
    }

    pub fn integral(&self, a: f64, b: f64) -> Result<f64> {
        match self {
            RefProblem::Legendre(p) => p.integral(a, b),
            RefProblem::Synthetic(s) => Ok(s.integral(a, b)),
        }
    }
}
