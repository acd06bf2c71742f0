//! Hybrid channel allocation with joint minimal-power control for
//! cellular networks.
//!
//! An arriving call is served from its cell's fixed channels when possible
//! and otherwise from a shared dynamic pool. For each candidate channel the
//! smallest transmit powers meeting a carrier-to-interference target for
//! every co-channel link are computed; the channel needing the least total
//! power wins. Ongoing calls keep their channel and never fall below the
//! target, so admissions never cause drops.
//!
//! The crate is organized bottom-up:
//!
//! - [`hexgrid`]: parallelogram hex layout, distances, link gains
//! - [`netstate`]: fixed/dynamic channel plan, allocation and power matrices
//! - [`power`]: CIR evaluation and the minimal-power solve
//! - [`admission`]: the optimizer and the fixed-power / reuse-distance baselines
//! - [`sim`]: discrete-event blocking simulator and parameter sweeps
//! - [`cli`]: config files, experiment presets and report output

pub mod admission;
pub mod cli;
pub mod error;
pub mod hexgrid;
mod linalg;
pub mod netstate;
pub mod power;
pub mod sim;

pub use error::{Error, Result};
