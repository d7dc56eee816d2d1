//! List colouring of `r`-partite hypergraphs through preference orders.
//!
//! The crate is organised bottom-up:
//!
//! * [`preference`] – preference orders and `f_P(theta)`, plus an exhaustive `f(r, theta, m)`;
//! * [`cover`] – perfect matchings on rational grids, `h(Q)`, conversions to and from
//!   preference orders, an exhaustive `h(r, theta, n)` and an edge-switching optimizer;
//! * [`analytic`] – `w`, `phi`, `H`, models of `f(r, theta)`, `beta(alpha)` and `g(r, alpha)`;
//! * [`hypergraph`] – generators, butterfly repair, degeneracy and the I/D property checkers;
//! * [`colouring`] – the block algorithm, the free/forbidden colouring, greedy degenerate
//!   colouring, a choosability oracle and the popularity-order certificate.

pub mod analytic;
pub mod colouring;
pub mod cover;
pub mod error;
pub mod hypergraph;
pub mod preference;
pub mod rational;
pub(crate) mod rng;

pub use error::{Error, Result};
pub use rational::Rational;
