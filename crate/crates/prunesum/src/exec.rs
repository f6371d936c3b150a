//! Pluggable execution of independent Monte-Carlo trials.
//!
//! Trials are indexed and derive their RNG from `(seed, trial-index)`, so an
//! implementation may run them in any order or in parallel; the collected
//! outcome vector is identical regardless.

use alloc::vec::Vec;

pub trait TrialExecutor: Sync {
    /// Run `trials` boolean trials; slot `i` of the result is `trial(i)`.
    fn run(&self, trials: usize, trial: &(dyn Fn(usize) -> bool + Sync)) -> Vec<bool>;
}

/// Runs every trial on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl TrialExecutor for Sequential {
    fn run(&self, trials: usize, trial: &(dyn Fn(usize) -> bool + Sync)) -> Vec<bool> {
        (0..trials).map(trial).collect()
    }
}
