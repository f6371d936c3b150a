//! Pruning-as-approximation toolkit for dense bias-free ReLU networks.
//!
//! The central construction: given a target network whose layers have
//! spectral norm at most one, draw a random network twice as deep and a
//! logarithmic factor wider, and select binary masks so that the masked
//! random network matches the target uniformly over the unit ball. Each
//! scalar weight of the target is realised as a *subset* of random
//! products, found by an exact meet-in-the-middle subset-sum solver; the
//! per-weight errors compose telescopically into an end-to-end bound.
//!
//! Alongside the constructions, the crate carries the measurement side:
//! achievable-sum coverage checks, Monte-Carlo coverage probability
//! estimation with Wilson intervals, scaling sweeps for the coefficient
//! count as the tolerance shrinks, and closed-form lower bounds on the
//! width required by any mask-only scheme.
//!
//! The crate is `no_std`-compatible (with `alloc`); IO, file formats, and
//! the command-line front end live in the companion `prunesum-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod dist;
pub mod error;
pub mod evalbench;
pub mod exec;
pub mod gadgets;
pub mod pipeline;
pub mod rng;
pub mod subsetsum;
pub mod tensor;

pub use dist::Distribution;
pub use error::{Error, Result};

/// Default width constant for the `n = ceil(C * ln(2/eps))` coefficient-count
/// formulas (natural log). Chosen well above the empirically calibrated
/// minimum so that default-configured constructions succeed with margin;
/// `evalbench::calibrate_c` recovers the measured constant for a given
/// distribution and tolerance.
pub const DEFAULT_C: f64 = 10.0;
