//! Exact, series, and Monte Carlo verification of binomial-sum and
//! orthogonal-polynomial identities that come from gamma-variable moments.

pub mod bigfloat;
pub mod error;
pub mod exact;
pub mod identities;
pub mod orthopoly;
pub mod quadext;
pub mod series;
pub mod stochastic;
pub mod verdict;

pub use error::{Error, Result};
pub use exact::BigRational;
pub use verdict::{Engine, Params, Status, Verdict};
