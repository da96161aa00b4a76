//! Exact truncated power-series arithmetic over the integers, in one
//! formal variable `t` with Laurent-polynomial coefficients in `q`.

pub mod qpoly;
pub mod tseries;

pub use qpoly::QPoly;
pub use tseries::{Mono, TSeries};
