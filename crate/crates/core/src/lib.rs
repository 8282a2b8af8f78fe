//! Exact-arithmetic verification of classical r-matrices, real forms and a
//! Jordanian quantum deformation of sl(2).
//!
//! All coefficients live in Q(i, √2) ([`scalars::Scalar`]); the deformed
//! sl(2) uses truncated power series in `u = 1/M` over Q.

pub mod catalog;
pub mod hopfseries;
pub mod liealg;
pub mod linalg;
pub mod parse;
pub mod physmaps;
pub mod report;
pub mod scalars;
pub mod star;
pub mod suites;
pub mod tensoralg;

pub use liealg::{Element, LieAlgebra, LieError};
pub use scalars::{Rational, Scalar};
pub use tensoralg::{ThreeTensor, TwoTensor};
