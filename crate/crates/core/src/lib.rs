//! Exact computations with representation functions of integer linear forms.
//!
//! For `phi(x_1, ..., x_h, y) = u_1 x_1 + ... + u_h x_h + v y`, finite sets
//! `A = (A_1, ..., A_h)` and a set `B`, the representation function counts
//! the tuples `(a, b)` with `phi(a, b) = n`. The crate verifies and searches
//! for pairs where that count is a constant `t`:
//!
//! - [`forms`]: images, diameters and representation functions by enumeration.
//! - [`periodic`]: periodic sets and t-complementing checks.
//! - [`recursion`]: the window recursion that rebuilds a complement from
//!   `d` consecutive values and finds its period (at most `2^d`).
//! - [`cyclotomy`]: generating polynomials reduced mod `z^m - 1`.
//! - [`solver`]: finite-window inverse problems and the stabilization driver.

pub mod cli;
pub mod cyclotomy;
pub mod error;
pub mod forms;
pub mod periodic;
pub mod problem;
pub mod recursion;
pub mod solver;

pub use error::{Error, Result};
pub use forms::{AugmentedForm, LinearForm, RepFunction, SetTuple};
pub use periodic::PeriodicSet;
