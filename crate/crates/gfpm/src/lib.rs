//! Frequent-pattern mining for imbalanced transaction databases.
//!
//! The crate mines association rules whose consequent is a rare class by
//! running classical FP-growth only on the rare side of the database and then
//! *counting* the surviving candidate itemsets on the majority side with a
//! guided, partial FP-growth walk. The guided walk never enumerates patterns
//! of its own: a target-itemset tree (`TisTree`) steers which conditional
//! trees get built, so the expensive majority side is traversed once, shallowly.
//!
//! The main entry points are:
//!
//! * [`minority_report`](minority_report::minority_report) — end-to-end rule
//!   mining for a rare class,
//! * [`fp_growth`](fpgrowth::fp_growth) — classical frequent-itemset mining
//!   into a [`TisTree`](tistree::TisTree),
//! * [`gfp_growth`](gfpgrowth::gfp_growth) — guided counting of target
//!   itemsets against an [`FpTree`](fptree::FpTree),
//! * [`run_benchmark`](benchgen::run_benchmark) — instrumented comparison
//!   against the single full FP-growth baseline.
//!
//! Each major capability has a runnable example:
//!
//! * `examples/mine_frequent.rs` — build an FP-tree and list frequent itemsets
//! * `examples/count_targets.rs` — count a fixed set of target itemsets
//! * `examples/minority_rules.rs` — mine rare-class rules end to end
//! * `examples/tree_inspection.rs` — render FP-tree structure as text
//! * `examples/synthetic_data.rs` — generate reproducible synthetic baskets
//! * `examples/benchmark_comparison.rs` — compare guided mining to the baseline
//!
//! A thin `gfpm` binary exposes the same capabilities as subcommands
//! (`mine`, `count-targets`, `mra`, `gen`, `bench`).

pub mod benchgen;
pub mod cli;
pub mod fpgrowth;
pub mod fptree;
pub mod fraction;
pub mod gfpgrowth;
pub mod minority_report;
pub mod oracle;
pub mod stats;
pub mod tistree;
pub mod transactions;

pub use benchgen::{generate, run_benchmark, BenchComparison, EngineRun, SynthConfig};
pub use fpgrowth::fp_growth;
pub use fptree::{build_fp_tree, FpTree};
pub use fraction::Fraction;
pub use gfpgrowth::gfp_growth;
pub use minority_report::{minority_report, MraConfig, Rule};
pub use stats::MiningStats;
pub use tistree::{build_tis_from_target_list, TisNodeId, TisTree};
pub use transactions::{
    filter_items, item_counts, load_token_lines, load_transactions, split_by_class,
    support_descending_order, Item, ItemOrder, OrderDirection, SymbolTable, Transaction,
    TransactionDb,
};

/// Errors shared across the crate.
#[derive(Debug)]
pub enum Error {
    /// An underlying I/O failure.
    Io(std::io::Error),
    /// A malformed input line (bad encoding, etc.), with its 1-based line number.
    Parse { line: usize, message: String },
    /// A token that is not interned in the database at hand.
    UnknownItem(String),
    /// An item with no rank in the relevant `ItemOrder`.
    UnrankedItem(Item),
    /// An item queried against a tree whose header does not contain it.
    ItemNotInTree(Item),
    /// The target-itemset tree's order is not the reverse of the FP-tree's order.
    OrderMismatch,
    /// A minimum count of zero (every itemset trivially qualifies).
    InvalidMinCount,
    /// A malformed fraction literal.
    InvalidFraction(String),
    /// A configuration value outside its documented domain.
    InvalidConfig(String),
    /// The brute-force oracle refused an item universe it cannot enumerate.
    UniverseTooLarge { items: usize, limit: usize },
    /// The two benchmark engines disagreed on the rule set.
    RuleSetMismatch(String),
}

impl std::fmt::Display for Error {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Error::Io(e) => write!(f, "i/o error: {e}"),
            Error::Parse { line, message } => write!(f, "parse error on line {line}: {message}"),
            Error::UnknownItem(token) => write!(f, "unknown item {token:?}"),
            Error::UnrankedItem(item) => {
                write!(f, "item #{} is not covered by the item order", item.index())
            }
            Error::ItemNotInTree(item) => {
                write!(f, "item #{} is not in the tree header", item.index())
            }
            Error::OrderMismatch => write!(
                f,
                "target-tree order is not the reverse of the FP-tree order"
            ),
            Error::InvalidMinCount => write!(f, "minimum count must be at least 1"),
            Error::InvalidFraction(s) => write!(f, "invalid fraction {s:?}"),
            Error::InvalidConfig(msg) => write!(f, "invalid configuration: {msg}"),
            Error::UniverseTooLarge { items, limit } => write!(
                f,
                "brute-force oracle refuses {items} distinct items (limit {limit})"
            ),
            Error::RuleSetMismatch(msg) => write!(f, "engines disagree on rules: {msg}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
