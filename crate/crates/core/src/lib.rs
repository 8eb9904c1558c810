//! High-order interpolation, differentiation and quadrature for piecewise
//! analytic functions whose jumps (in value and derivatives) at a known
//! location are known.
//!
//! The smooth machinery ([`grid`], [`lagrange`], [`diffmat`], [`quadrature`])
//! is standard nodal collocation. [`jumps`] adds a linear combination of the
//! jumps to the Lagrange formula so that the same matrices keep their order
//! of accuracy across the discontinuity. [`mol`] uses this to advect a moving
//! kink, [`refproblems`] and [`study`] provide reference functions and
//! convergence sweeps.
//!
//! ```
//! use jumpspec::{BarycentricWeights, Grid, JumpData, jumps::corrected_interpolate};
//!
//! let grid = Grid::chebyshev_gauss_lobatto(-1.0, 1.0, 8).unwrap();
//! let w = BarycentricWeights::new(&grid);
//! let xi = 0.2;
//! let f: Vec<f64> = grid.nodes().iter().map(|x| (x - xi).abs()).collect();
//! let kink = JumpData::new(xi, vec![0.0, 2.0]).unwrap();
//! let p = corrected_interpolate(&w, &f, &kink, 0.7).unwrap();
//! assert!((p - 0.5).abs() < 1e-12);
//! ```

pub mod diffmat;
pub mod error;
pub mod grid;
pub mod jumps;
pub mod lagrange;
pub mod mol;
pub mod par;
pub mod quadrature;
pub mod refproblems;
pub mod study;

pub use diffmat::{fd_weights, DerivMatrix, DiffOptions};
pub use error::{Error, Result};
pub use grid::{Grid, NodeFamily};
pub use jumps::JumpData;
pub use lagrange::BarycentricWeights;
pub use quadrature::QuadRule;
pub use refproblems::{LegendreProblem, RefProblem, SyntheticPiecewise};
