//! Sympathetic laser cooling of a graphene flexural mode through
//! Casimir-Polder coupling to a cold atomic gas.
//!
//! The crate follows the physics bottom-up:
//!
//! - [`casimir_polder`]: atom-surface potential, retarded coefficient and
//!   its Fourier component;
//! - [`membrane`]: fundamental flexural mode of the suspended sheet;
//! - [`effective`]: reduction of the drive and coupling to the linearised
//!   model parameters;
//! - [`moments`]: the 14-variable moment system, its steady state, cooling
//!   rate and time evolution;
//! - [`config`], [`sweep`] and [`output`]: run configuration, parameter
//!   sweeps and CSV emission.

// NaN must fail range checks, so `!(x > 0.0)` is not `x <= 0.0`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]

pub mod bessel;
pub mod casimir_polder;
pub mod config;
pub mod constants;
pub mod effective;
pub mod error;
pub mod membrane;
pub mod moments;
pub mod output;
pub mod quadrature;
pub mod sweep;

pub use error::{Error, Result};
