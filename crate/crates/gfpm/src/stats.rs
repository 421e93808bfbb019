//! Instrumentation counters for mining runs.

use std::time::Duration;

/// Counts the structural work a mining run performs.
///
/// The counters are monotone within a run and describe machine-independent
/// quantities; `wall_time` is a measurement and is reported, never asserted.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MiningStats {
    /// Conditional FP-trees constructed.
    pub conditional_trees_built: u64,
    /// FP-tree item nodes allocated (initial trees plus conditional trees).
    pub nodes_allocated: u64,
    /// Header-table lookups performed while mining.
    pub header_probes: u64,
    /// Elapsed wall-clock time for the run.
    pub wall_time: Duration,
}

impl MiningStats {
    pub fn new() -> Self {
        Self::default()
    }
}
