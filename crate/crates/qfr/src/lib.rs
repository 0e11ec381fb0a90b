//! Exact-arithmetic toolkit for binary quadratic forms and quadratic fields.
//!
//! Everything is computed over arbitrary-precision integers: form reduction
//! and composition with transformation tracking, class group enumeration,
//! the ideal/form dictionary, genus characters, continued fractions of
//! quadratic surds, class polynomials from the modular j-function, elliptic
//! curve point counts and the trace route to modular square roots, and the
//! representation solvers that tie them together.
//!
//! The `qfr` binary exposes each solver as a subcommand; see the README.

pub mod arith;
pub mod cli;
pub mod contfrac;
pub mod elliptic;
pub mod error;
pub mod forms;
pub mod genus;
pub mod hilbert;
pub mod ideals;
pub mod represent;

pub use error::{Error, Result};
