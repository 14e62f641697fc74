//! Channels-matching classification of unseen instances.
//!
//! The library discretizes Gaussian class-conditional densities onto a grid,
//! then alternates two matching steps: deriving a semantic channel (likelihood
//! ratios) from the current partition's Shannon channel, and reassigning each
//! cell to the label whose ratio profile gives it the most conditional
//! information. The iteration climbs Shannon mutual information to a fixed
//! point. A maximum-posterior baseline and comparison report sit alongside,
//! and the `cm` binary drives the bundled 1D/2D experiment presets.

pub mod baselines;
pub mod cm;
pub mod config;
pub mod error;
pub mod generators;
pub mod grid;
pub mod info;
pub mod output;
pub mod prob;

pub use error::{Error, Result};
