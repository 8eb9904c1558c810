use thiserror::Error;

/// Errors raised by grid construction and the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval [{a}, {b}]: need a < b and both finite")]
    InvalidInterval { a: f64, b: f64 },
    #[error("invalid grid size N = {0}: need N >= 1")]
    InvalidSize(usize),
    #[error("grid nodes must be finite, strictly increasing and inside [a, b] (violated at index {0})")]
    InvalidNodes(usize),
    #[error("index {index} out of range for {len} entries")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("derivative order {order} needs at least {} stencil points, got {points}", order + 1)]
    OrderTooHigh { order: usize, points: usize },
    #[error("invalid orders: derivative n = {n}, difference m = {m}, grid N = {size} (need n <= m <= N, m >= 1)")]
    InvalidOrder { n: usize, m: usize, size: usize },
    #[error("discontinuity xi = {xi} coincides with node {index}; use the on-node formula")]
    XiOnNode { xi: f64, index: usize },
    #[error("discontinuity xi = {xi} is not strictly inside ({a}, {b})")]
    XiOutsideInterval { xi: f64, a: f64, b: f64 },
    #[error("jump J_{index} = {value} is not finite")]
    NonFiniteJump { index: usize, value: f64 },
    #[error("two discontinuities share the location xi = {0}")]
    DuplicateDiscontinuity(f64),
    #[error("node {0} has no centred three-point stencil")]
    BoundaryNode(usize),
    #[error("unsupported Legendre degree l = {0} (supported: 0..=5)")]
    UnsupportedDegree(usize),
    #[error("x = {0} is outside the domain |x| < 1 of Q_l")]
    Domain(f64),
    #[error("time step crosses a node at t = {0}")]
    CrossingWithinStep(f64),
    #[error("invalid time step dt = {0}")]
    InvalidTimeStep(f64),
    #[error("discontinuity path leaves the interval at t = {0}")]
    PathLeavesInterval(f64),
    #[error("non-finite state at t = {t} (node {node})")]
    BlowUp { t: f64, node: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
