//! Exact and analytic machinery for the floor-totient partial sum
//! `S(x) = sum_{n <= x} phi(floor(x/n))` and its companions.
//!
//! The crate is split along the exact/analytic boundary:
//!
//! - [`arith`]: integer-exact sums driven by a sieved totient table
//!   (direct and block summation, divisor-weighted coefficients,
//!   Cesaro-weighted sums, step-function integrals).
//! - [`zeta`]: Euler-Maclaurin evaluation of the Riemann zeta function,
//!   its derivative, and the regularized value near the pole.
//! - [`dirichlet`]: the Dirichlet series of the divisor-weighted
//!   coefficients in three independent representations, its residue at
//!   the double pole, and a contour probe for pole order.
//! - [`perron`]: weighted Perron inversion recovering the Cesaro-weighted
//!   sum from the Dirichlet series.
//! - [`experiments`]: desk-scale verification reports tying the exact and
//!   analytic sides together.
//!
//! All floating-point work funnels through `libm`, keeping the crate
//! `no_std` (alloc only). IO, timing, and presentation live in the
//! companion CLI crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod dirichlet;
pub mod error;
pub mod experiments;
pub mod perron;
pub mod phase;
pub mod rational;
pub mod report;
pub mod value;
pub mod zeta;

pub use error::{Error, Result};
pub use rational::Rational;
pub use report::{ExactValue, ReportRow};
pub use value::{ComplexValue, EvalResult};
