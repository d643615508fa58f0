//! Stability analysis for fractional-order difference equations with a delay term.
//!
//! The systems under study combine two kinds of memory: a power-law convolution
//! kernel (the fractional-order sum) and a discrete delay feedback `b·x(t−τ)`.
//! This crate provides
//!
//! - the convolution kernel coefficients and their Z-domain checks ([`kernel`]),
//! - brute-force forward iteration of the linear and nonlinear systems with
//!   boundedness/convergence detection ([`trajectory`]),
//! - the exact stability boundary curve in the complex coefficient plane,
//!   winding-number classification, self-intersection and cusp detection
//!   ([`boundary`]),
//! - the bifurcation branch atlas `b = g_k(α)` for delays τ=1 and τ=2 with the
//!   region taxonomy ([`atlas`]),
//! - a catalog of nonlinear maps (logistic, cubic, Hénon, Lozi) with fixed-point
//!   linearization and stable-interval prediction ([`maps`]),
//! - a deterministic CLI and dataset emitters ([`cli`]).

pub mod atlas;
pub mod boundary;
pub mod cli;
pub mod error;
pub mod kernel;
pub mod maps;
mod solve;
pub mod trajectory;

pub use error::{Error, Result};
