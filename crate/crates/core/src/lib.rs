//! Exact fractional cut-covering numbers `x(G)` and cubical chromatic
//! numbers `χ_q(G) = 2/(2 − x(G))` for small graphs.
//!
//! Every value is an exact rational. `x(G)` is computed from both sides of
//! the cut-covering LP and returned with certificates that can be checked
//! independently of the solver.

pub mod cutspace;
pub mod error;
pub mod graph;
pub mod invariant;
pub mod lp;
pub mod random;
pub mod rational;
pub mod spectral;
pub mod suites;

pub use error::{Error, Result};
pub use graph::Graph;
pub use rational::Rational;
